"""Stickelberger exponent sums S(t) and the purity / two-value tests.

S(t) = sum_{j<f} [t p^j]_m is the exponent of the prime ideal attached to t in
the factorization of G^m.  It is constant on cosets of <p>; a Gauss sum has a
rational power iff S is the constant f*m/2, and a power in a quadratic field
(but none in Q) iff S takes two values on the cosets of an index-2 subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import MAX_MODULUS, euler_phi, is_index2_subgroup, mult_order, units


@dataclass(frozen=True)
class StickelbergerProfile:
    m: int
    p: int
    f: int
    h: int
    entries: dict[int, int]          # coset representative -> S(t)
    values: tuple[int, ...]
    partition: dict[int, frozenset[int]]

    def s(self, t: int) -> int:
        """S(t) for any unit t."""
        for value, members in self.partition.items():
            if t % self.m in members:
                return value
        raise ValueError(f"{t} is not a unit modulo {self.m}")


@dataclass(frozen=True)
class QuadraticPartition:
    E0: frozenset[int]
    E1: frozenset[int]
    s1: int
    A0: int
    A1: int


def coset_sum(t: int, p: int, f: int, m: int) -> int:
    if math.gcd(t, m) != 1 or math.gcd(p, m) != 1:
        raise ValueError("t and p must be units modulo m")
    total, x = 0, t % m
    for _ in range(f):
        total += x
        x = x * p % m
    return total


def _sums_and_reps(m: int, p: int, f: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S(t) and the smallest member of t<p> for every unit t, vectorized over units."""
    if m >= MAX_MODULUS:
        raise OverflowError(f"modulus {m} too large for int64 coset sums")
    u = units(m)
    s = np.zeros_like(u)
    reps = u.copy()
    x = u.copy()
    for _ in range(f):
        s += x
        np.minimum(reps, x, out=reps)
        x = x * p % m
    return u, s, reps


def profile(m: int, p: int) -> StickelbergerProfile:
    if m < 3:
        raise ValueError("m must be at least 3")
    f = mult_order(p, m)
    u, s, reps = _sums_and_reps(m, p % m, f)
    is_rep = reps == u
    entries = dict(zip(u[is_rep].tolist(), s[is_rep].tolist()))
    values = np.unique(s)
    partition = {int(v): frozenset(u[s == v].tolist()) for v in values}
    return StickelbergerProfile(
        m, p % m, f, len(u) // f, entries, tuple(int(v) for v in values), partition
    )


def is_pure(m: int, p: int) -> bool:
    if m < 3:
        raise ValueError("m must be at least 3")
    return split_arrays(m, p)[0] == "pure"


def split_arrays(m: int, p: int, f: int | None = None):
    """Array form of the purity / two-value test.

    Returns ("pure", None), ("other", None) or ("quadratic", (a0, a1, member))
    where member is a boolean mask over residues mod m marking E0.
    """
    f = f or mult_order(p, m)
    u, s, _ = _sums_and_reps(m, p % m, f)
    values = np.unique(s)
    if len(values) == 1:
        return ("pure", None) if 2 * int(values[0]) == f * m else ("other", None)
    if len(values) != 2:
        return "other", None
    a0 = int(s[0])  # u[0] == 1
    in_e0 = s == a0
    if 2 * int(in_e0.sum()) != len(u):
        return "other", None
    member = np.zeros(m, dtype=bool)
    member[u[in_e0]] = True
    if not is_index2_subgroup(m, member):
        return "other", None
    a1 = int(values[0] if values[1] == a0 else values[1])
    return "quadratic", (a0, a1, member)


def quadratic_partition(m: int, p: int) -> QuadraticPartition | None:
    """The index-2 split of the units when S takes exactly two coset-constant values."""
    if m < 3:
        raise ValueError("m must be at least 3")
    kind, data = split_arrays(m, p)
    if kind != "quadratic":
        return None
    a0, a1, member = data
    u = units(m)
    e0 = frozenset(u[member[u]].tolist())
    e1 = frozenset(u[~member[u]].tolist())
    return QuadraticPartition(e0, e1, min(e1), a0, a1)


def a_formula(f: int, m: int, coset: frozenset[int], index: int = 2) -> Fraction:
    """Coset-average identity: A_i = (e f / phi(m)) * sum of the coset."""
    return Fraction(index * f * sum(coset), euler_phi(m))
