"""Published list of quadratic (m, pbar, f, h) with m <= 1000 and h > 2, and a differ."""

from __future__ import annotations

import csv
from importlib import resources

REFERENCES = {"paper1000": "quadratic_h_gt2_m1000.csv"}


def load_reference(name: str = "paper1000") -> list[tuple[int, int, int, int]]:
    if name not in REFERENCES:
        raise KeyError(f"unknown reference {name!r}; choose from {sorted(REFERENCES)}")
    text = resources.files("quadgauss.data").joinpath(REFERENCES[name]).read_text()
    reader = csv.DictReader(text.splitlines())
    return [(int(r["m"]), int(r["pbar"]), int(r["f"]), int(r["h"])) for r in reader]


def diff_rows(computed, reference) -> tuple[list, list]:
    """(missing from computed, extra in computed), both sorted."""
    got, want = set(computed), set(reference)
    return sorted(want - got), sorted(got - want)
