"""Classification of pairs (m, pbar) and the structural checks on quadratic cases.

Every classification runs two independent routes, the Stickelberger two-value
test and the character criterion, and refuses to return if they disagree.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .arithmetic import (
    any_unit_group,
    crt,
    divisors,
    elements_of_order_dividing,
    euler_phi,
    factorize,
    factorize_large,
    lcm,
    mult_order,
    unit_group,
    units,
)
from .characters import character_table, count_nonvanishing, count_x_minus, field_discriminant
from .stickelberger import split_arrays

SEMI_PRIMITIVE = "SemiPrimitive"
PURE_OTHER = "PureNonSemiPrimitive"
QUADRATIC_INDEX2 = "QuadraticIndex2"
QUADRATIC = "QuadraticGeneral"
OTHER = "Other"
QUADRATIC_CLASSES = (QUADRATIC_INDEX2, QUADRATIC)
PURE_CLASSES = (SEMI_PRIMITIVE, PURE_OTHER)

# moduli up to this size are also checked by the Stickelberger route in classify_odd_f
STICKELBERGER_BUDGET = 5_000_000
# full character tables are built only below this group order
TABLE_BUDGET = 20_000


class OracleMismatch(RuntimeError):
    """The Stickelberger and character routes disagree; always a bug."""


@dataclass(frozen=True)
class ClassificationRecord:
    m: int
    pbar: int
    f: int
    h: int
    kind: str
    E0: frozenset[int] | None = field(default=None, repr=False)
    A0: int | None = None
    A1: int | None = None
    conductor: int | None = None
    discriminant: int | None = None
    x_minus_status: str | None = None

    @property
    def is_quadratic(self) -> bool:
        return self.kind in QUADRATIC_CLASSES

    @property
    def is_pure(self) -> bool:
        return self.kind in PURE_CLASSES

    def as_row(self) -> dict:
        return {
            "m": self.m,
            "pbar": self.pbar,
            "f": self.f,
            "h": self.h,
            "class": self.kind,
            "A0": self.A0,
            "A1": self.A1,
            "conductor": self.conductor,
            "discriminant": self.discriminant,
            "x_minus_status": self.x_minus_status,
        }


ROW_KEYS = ("m", "pbar", "f", "h", "class", "A0", "A1", "conductor", "discriminant", "x_minus_status")


def _orbit_generators(m: int, p: int, f: int) -> list[int]:
    """[p^i]_m for 1 <= i <= f-1 with gcd(i, f) = 1."""
    out, x = [], 1
    for i in range(1, f):
        x = x * p % m
        if math.gcd(i, f) == 1:
            out.append(x)
    return out


def canonical_pbar(m: int, p: int) -> int:
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    f = mult_order(p, m)
    if f == 1:
        return p % m
    return min(_orbit_generators(m, p % m, f))


def is_semiprimitive(m: int, p: int) -> bool:
    if m <= 2:
        raise ValueError("m must exceed 2")
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    x = 1
    for _ in range(mult_order(p, m)):
        x = x * p % m
        if x == m - 1:
            return True
    return False


def _classify_with(table, m: int, p: int, f: int, pbar: int) -> ClassificationRecord:
    h = euler_phi(m) // f
    kind, data = split_arrays(m, p, f)
    at_p = table.trivial_at(p)
    bad = table.bad0 & at_p
    row = table.criterion_row(p)

    if (kind == "pure") != (not bad.any()):
        raise OracleMismatch(f"purity disagrees at ({m}, {p})")
    if (kind == "quadratic") != (row is not None):
        raise OracleMismatch(f"quadratic test disagrees at ({m}, {p})")

    if kind == "pure":
        label = SEMI_PRIMITIVE if is_semiprimitive(m, p) else PURE_OTHER
        return ClassificationRecord(m, pbar, f, h, label)
    if kind == "other":
        if is_semiprimitive(m, p):
            raise OracleMismatch(f"semi-primitive pair ({m}, {p}) is not pure")
        return ClassificationRecord(m, pbar, f, h, OTHER)

    a0, a1, member = data
    if not np.array_equal(table.kernel_mask(row), member):
        raise OracleMismatch(f"subgroups differ at ({m}, {p})")
    chi = table.character(row)
    xm = np.flatnonzero(table.odd & at_p & table.full_support)
    if len(xm) == 0:
        status = "Empty"
    elif len(xm) == 1 and xm[0] == row:
        status = "SingletonAnn"
    else:
        raise OracleMismatch(f"X^- is not contained in the annihilator at ({m}, {p})")
    u = units(m)
    return ClassificationRecord(
        m, pbar, f, h,
        QUADRATIC_INDEX2 if h == 2 else QUADRATIC,
        E0=frozenset(u[member[u]].tolist()),
        A0=a0,
        A1=a1,
        conductor=chi.conductor,
        discriminant=field_discriminant(chi),
        x_minus_status=status,
    )


def classify(m: int, p: int) -> ClassificationRecord:
    if m < 3:
        raise ValueError("m must be at least 3")
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    p %= m
    f = mult_order(p, m)
    return _classify_with(character_table(m), m, p, f, canonical_pbar(m, p))


def classify_modulus(m: int) -> list[ClassificationRecord]:
    """One record per orbit {p^i : gcd(i, f) = 1}, ascending in pbar."""
    table = character_table(m)
    seen = np.zeros(m, dtype=bool)
    out = []
    for p in units(m).tolist():
        if seen[p]:
            continue
        f = mult_order(p, m)
        # scanning upward, the first unseen member of an orbit is its minimum
        seen[p] = True
        for q in _orbit_generators(m, p, f):
            seen[q] = True
        out.append(_classify_with(table, m, p, f, p))
    return out


def _shard(ms: list[int]) -> list[ClassificationRecord]:
    out = []
    for m in ms:
        out.extend(classify_modulus(m))
    return out


def enumerate_records(m_min: int, m_max: int, jobs: int = 1):
    """Records for every m in [m_min, m_max], sorted by (m, pbar)."""
    m_min = max(m_min, 3)
    ms = list(range(m_min, m_max + 1))
    if not ms:
        return
    if jobs <= 1:
        for m in ms:
            yield from classify_modulus(m)
        return
    shards = [ms[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = [r for part in pool.map(_shard, shards) for r in part]
    results.sort(key=lambda r: (r.m, r.pbar))
    yield from results


enumerate = enumerate_records  # noqa: A001


def quadratic_table(m_max: int = 1000, jobs: int = 1) -> list[tuple[int, int, int, int]]:
    """Rows (m, pbar, f, h) of quadratic records with h > 2."""
    return [
        (r.m, r.pbar, r.f, r.h)
        for r in enumerate_records(3, m_max, jobs)
        if r.is_quadratic and r.h > 2
    ]


# --- odd f via divisor candidates ----------------------------------------------------


def _is_quadratic_mod(x: int, n: int) -> bool:
    return pow(x, euler_phi(n) // 2, n) == 1


def _component_orders(m: int, p: int) -> list[int]:
    return [mult_order(p, q) for q in factorize(m).prime_powers]


def _fodd_branch_empty(m: int, orders: list[int]) -> bool:
    """Necessary conditions when f is odd and X^- is empty."""
    fac = factorize(m)
    v = fac.v2
    r = len(fac)
    if v > 2:
        return False
    phis = [euler_phi(q) for q in fac.prime_powers]
    if v in (0, 2):
        return r % 2 == 0 and all(2 * fi == ph for fi, ph in zip(orders, phis))
    ok = []
    for q, fi, ph in zip(fac.prime_powers[1:], orders[1:], phis[1:]):
        c = 2 * fi == ph or (pow(2, 2 * fi, q) == 1)
        if r % 2 == 0:
            c = c or (pow(2, 4 * fi, q) == 1 and 6 * fi == ph)
        else:
            c = c or 4 * fi == ph or (pow(2, 4 * fi, q) == 1 and 8 * fi == ph)
        ok.append(c)
    return all(ok)


def _fodd_branch_ann(m: int, f: int) -> bool:
    return all(4 * f % euler_phi(q) == 0 for q in factorize(m).prime_powers)


def _possible_orders(q: int, f: int) -> list[int]:
    lam = any_unit_group(q).exponent
    return [d for d in divisors(f) if lam % d == 0]


def odd_f_candidates(f: int) -> list[int]:
    """Moduli allowed by the 2-adic and divisor bounds, then pruned per component."""
    n = 2 ** (4 * f) - 1
    fac = factorize_large(n)
    ds = [1]
    for q, u in fac.factors:
        ds = [d * q**k for d in ds for k in range(u + 1)]
    out = []
    for d in ds:
        for a in range(4):
            m = d << a
            if m < 3 or any_unit_group(m).exponent % f:
                continue
            if _fodd_branch_ann(m, f):
                out.append(m)
                continue
            pps = factorize(m).prime_powers
            choices = [_possible_orders(q, f) for q in pps]
            if any(lcm(*c) == f and _fodd_branch_empty(m, list(c)) for c in product(*choices)):
                out.append(m)
    return sorted(out)


def classify_odd_f(f: int, audit_rate: float = 0.01, seed: int = 0) -> set[tuple[int, int]]:
    if f < 1 or f % 2 == 0:
        raise ValueError("f must be a positive odd integer")
    if f > 13:
        raise ValueError("f is capped at 13")
    rng = random.Random(seed)
    found = set()
    for m in odd_f_candidates(f):
        g = unit_group(m)
        branch_ann = _fodd_branch_ann(m, f)
        phi = g.order
        seen = set()
        for p in elements_of_order_dividing(f, g):
            if p in seen or mult_order(p, m) != f:
                continue
            orbit = _orbit_generators(m, p, f) if f > 1 else [p]
            seen.update(orbit)
            pbar = min(orbit)
            if not branch_ann and not _fodd_branch_empty(m, _component_orders(m, p)):
                continue
            if phi <= TABLE_BUDGET:
                if classify(m, pbar).is_quadratic:
                    found.add((m, pbar))
                continue
            bad = count_nonvanishing(m, pbar)
            hit = bad == 1
            if m <= STICKELBERGER_BUDGET and (hit or rng.random() < audit_rate):
                kind, _ = split_arrays(m, pbar, f)
                if (kind == "quadratic") != hit or (kind == "pure") != (bad == 0):
                    raise OracleMismatch(f"counting route disagrees at ({m}, {pbar})")
            if hit:
                found.add((m, pbar))
    return found


# --- A^+ and A^- ---------------------------------------------------------------------


@dataclass(frozen=True)
class APlusMinusSet:
    d1: int
    d2: int
    sign: int  # -1 for odd a1 + a2, +1 for even
    members: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def _a_set(d1: int, d2: int, parity: int) -> frozenset[tuple[int, int]]:
    if d1 < 1 or d2 < 1:
        raise ValueError("d1, d2 must be positive")
    return frozenset(
        (a1, a2)
        for a1 in range(1, d1)
        for a2 in range(1, d2)
        if (a1 * d2 + a2 * d1) % (d1 * d2) == 0 and (a1 + a2) % 2 == parity
    )


def a_minus_set(d1: int, d2: int) -> APlusMinusSet:
    return APlusMinusSet(d1, d2, -1, _a_set(d1, d2, 1))


def a_plus_set(d1: int, d2: int) -> APlusMinusSet:
    return APlusMinusSet(d1, d2, 1, _a_set(d1, d2, 0))


def a_minus_empty_predicted(d1: int, d2: int) -> bool:
    """Emptiness of A^-(d1, d2) as predicted from gcd and 2-adic valuations."""
    g = math.gcd(d1, d2)
    if g % 2 == 0:
        return (d1 & -d1) == (d2 & -d2)
    return g == 1


# --- structural audits -------------------------------------------------------------


def _component_lift(m: int, i: int, x: int) -> int:
    """The unit = x mod the i-th prime power and 1 mod the others."""
    pps = factorize(m).prime_powers
    res = [1] * len(pps)
    res[i] = x % pps[i]
    return crt(res, list(pps))


def _x_minus_trivial_on_p_by_component(m: int, p: int) -> bool:
    """Every member of X^- restricts to a character killing p on each component."""
    t = character_table(m)
    rows = np.flatnonzero(t.odd & t.trivial_at(p) & t.full_support)
    for i in range(len(factorize(m))):
        ph = t.phase_at(_component_lift(m, i, p))
        if np.any(ph[rows] != 0):
            return False
    return True


def _pm_one_order(p: int, m: int) -> int:
    """Order of p in (Z/mZ)^x / <-1>."""
    x = p % m
    k = 1
    while x not in (1, m - 1):
        x = x * p % m
        k += 1
    return k


def _r2_with_ann(f1, f2, ph1, ph2, m1, m2) -> bool:
    """The three configurations for two components with X^- = {annihilator}."""
    p1, p2 = factorize(m1).primes[0], factorize(m2).primes[0]
    if 2 * f1 == ph1 and 4 * f2 == ph2 and f1 % 2 and f2 % 2 and math.gcd(f1, f2) == 1:
        if _is_quadratic_mod(p2, m1) and pow(p1, ph2 // 4, m2) == 1:
            return True
    if 2 * f1 == ph1 and f1 % 2 and 2 * f2 == ph2 and f2 % 2 == 0 and math.gcd(f1, f2) == 1:
        if _is_quadratic_mod(p2, m1):
            return True
    if f1 == ph1 and f2 == ph2 and (f1 // 2) % 2 == 1 and (f2 // 2) % 2 == 0:
        if math.gcd(f1 // 2, f2 // 2) == 1:
            return True
    return False


def _r2_empty(f1, f2, ph1, ph2, m1, m2) -> bool:
    p1, p2 = factorize(m1).primes[0], factorize(m2).primes[0]
    if 2 * f1 == ph1 and 2 * f2 == ph2 and f1 % 2 and f2 % 2 and math.gcd(f1, f2) == 1:
        if not _is_quadratic_mod(p2, m1) and _is_quadratic_mod(p1, m2):
            return True
    if 2 * f1 == ph1 and f1 % 2 and f2 == ph2 and math.gcd(f1, f2) == 1:
        if not _is_quadratic_mod(p2, m1):
            return True
    return False


def predicted_by_component_theorems(m: int, p: int) -> dict[str, bool]:
    """For moduli with at most two prime factors: which closed-form characterizations hold.

    Keys present only where the characterization applies to m; each value is the
    predicted truth of the corresponding classification statement.
    """
    fac = factorize(m)
    out: dict[str, bool] = {}
    pps = fac.prime_powers
    if len(fac) == 1:
        q = pps[0]
        ph = euler_phi(q)
        f = mult_order(p, m)
        if fac.primes[0] != 2 or q == 4:
            out["prop_fac1"] = (m, p % m, f) == (4, 1, 1) or (
                fac.primes[0] % 4 == 3 and 2 * f == ph
            )
        else:
            out["prop_fac2"] = _pm_one_order(p, m) == q // 4
        return out
    if len(fac) != 2:
        return out
    orders = [mult_order(p, q) for q in pps]
    phis = [euler_phi(q) for q in pps]
    if fac.v2 == 1:
        f = mult_order(p, m)
        out["thm_2m2"] = f == orders[1] and 2 * f == phis[1] and f % 2 == 1 and fac.primes[1] % 8 == 3
    if fac.v2 <= 2:
        out["prop_m1m2"] = any(
            _r2_with_ann(orders[i], orders[j], phis[i], phis[j], pps[i], pps[j])
            for i, j in ((0, 1), (1, 0))
        )
    if fac.v2 in (0, 2):
        out["thm_m1m2_empty"] = any(
            _r2_empty(orders[i], orders[j], phis[i], phis[j], pps[i], pps[j])
            for i, j in ((0, 1), (1, 0))
        )
    return out


def _observed(record: ClassificationRecord) -> dict[str, bool]:
    """The classification statements matched against predicted_by_component_theorems."""
    q = record.is_quadratic
    return {
        "prop_fac1": q,
        "prop_fac2": q,
        "thm_2m2": q,
        "prop_m1m2": q and record.x_minus_status == "SingletonAnn",
        "thm_m1m2_empty": q and record.x_minus_status == "Empty",
    }


def audit_structural(record: ClassificationRecord) -> list[tuple[str, bool]]:
    """Necessary conditions every quadratic record must satisfy; [] when not quadratic."""
    if not record.is_quadratic:
        return []
    m, p, f = record.m, record.pbar, record.f
    fac = factorize(m)
    checks: list[tuple[str, bool]] = []
    if f % 2:
        checks.append(("cor_fodd2", fac.v2 <= 3 and (2 ** (4 * f) - 1) % (m >> fac.v2) == 0))
        if record.x_minus_status == "Empty":
            checks.append(("fodd", _fodd_branch_empty(m, _component_orders(m, p))))
    if record.x_minus_status == "SingletonAnn":
        checks.append(("finite1", _fodd_branch_ann(m, f)))
    observed = _observed(record)
    for name, predicted in predicted_by_component_theorems(m, p).items():
        if observed[name]:
            checks.append((name, predicted))
    r2_shape = len(fac) == 2 and (fac.v2 == 0 or fac.prime_powers[0] in (2, 4))
    if r2_shape:
        orders = _component_orders(m, p)
        predicted = len(a_minus_set(*orders)) == 0
        checks.append(("lem_aokidd2", _x_minus_trivial_on_p_by_component(m, p) == predicted))
    return checks


def converse_mismatches(m: int) -> list[tuple[int, str]]:
    """Units p of m where a two-sided characterization disagrees with classify."""
    bad = []
    for rec in classify_modulus(m):
        observed = _observed(rec)
        for name, predicted in predicted_by_component_theorems(m, rec.pbar).items():
            if predicted != observed[name]:
                bad.append((rec.pbar, name))
    return bad


# --- pure families -------------------------------------------------------------------


def pure_family_condition1(m: int, p: int) -> bool:
    """Whether some coprime split m = c*d meets the first sufficient condition for purity."""
    fac = factorize(m)
    pps = fac.prime_powers
    for mask in product((0, 1), repeat=len(pps)):
        c = math.prod(q for q, b in zip(pps, mask) if b)
        d = m // c
        if c == 1:
            continue
        oc = mult_order(p, c)
        od = mult_order(p, d) if d > 1 else 1
        if math.gcd(oc, od) != 1 or oc != euler_phi(c):
            continue
        if d == 1:
            return True
        powers = set()
        x = 1
        for _ in range(od):
            powers.add(x)
            x = x * p % d
        if any(ell % d in powers for ell in factorize(c).primes):
            return True
    return False
