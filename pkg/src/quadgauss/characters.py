"""Dirichlet characters modulo m, conductors, and the quadratic-field criterion.

A character is stored as an exponent vector over the canonical cyclic factors of
(Z/mZ)^x: chi(g_k) = exp(2 pi i a_k / n_k).  Values at a unit x are kept as a
phase in Z/L with L the group exponent, so that chi(x) = exp(2 pi i phase / L).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

import numpy as np

from .arithmetic import (
    TwoPart,
    any_unit_group,
    crt,
    divisors,
    dlog_array,
    dlog_components,
    factorize,
    is_index2_subgroup,
    lcm,
    unit_group,
    units,
)
from .cyclotomic import CyclotomicElement


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i a / n) with 0 <= a < n and gcd(a, n) = 1 (1 is stored as 0/1)."""

    a: int
    n: int

    @classmethod
    def of(cls, a: int, n: int) -> RootOfUnity:
        if n < 1:
            raise ValueError("n must be positive")
        a %= n
        g = math.gcd(a, n)
        return cls(a // g, n // g)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        n = lcm(self.n, other.n)
        return RootOfUnity.of(self.a * (n // self.n) + other.a * (n // other.n), n)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity.of(self.a * k, self.n)

    def conjugate(self) -> RootOfUnity:
        return RootOfUnity.of(-self.a, self.n)

    def is_one(self) -> bool:
        return self.a == 0

    def sign(self) -> int | None:
        """+1 or -1 when the value is real, else None."""
        if self.n == 1:
            return 1
        return -1 if self.n == 2 else None

    def to_complex(self) -> complex:
        t = 2 * math.pi * self.a / self.n
        return complex(math.cos(t), math.sin(t))

    def as_cyclotomic(self, n: int | None = None) -> CyclotomicElement:
        n = n or self.n
        if n % self.n:
            raise ValueError(f"{self.n} does not divide {n}")
        return CyclotomicElement.root(n, self.a * (n // self.n))


class _ZeroMarker:
    """Value of a character at a non-unit; deliberately not a RootOfUnity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    def __bool__(self) -> bool:
        return False


ZERO = _ZeroMarker()


def _component_conductor(comp, exps: tuple[int, ...]) -> int:
    """Conductor of the part of a character living on one prime-power component."""
    if not any(exps):
        return 1
    if isinstance(comp, TwoPart):
        a2, a1 = exps  # on -1 and on 5
        if a1 == 0:
            return 4
        order = comp.orders[1] // math.gcd(a1, comp.orders[1])
        return 2 ** (order.bit_length() - 1 + 2)
    (a,) = exps
    order = comp.order // math.gcd(a, comp.order)
    k = 0
    while order % comp.prime == 0:
        order //= comp.prime
        k += 1
    return comp.prime ** (1 + k)


@dataclass(frozen=True)
class DirichletCharacter:
    m: int
    exps: tuple[int, ...]

    def __post_init__(self):
        g = any_unit_group(self.m)
        if len(self.exps) != len(g.orders):
            raise ValueError(f"need {len(g.orders)} exponents for modulus {self.m}")
        object.__setattr__(self, "exps", tuple(int(a) % n for a, n in zip(self.exps, g.orders)))

    @property
    def group(self):
        return any_unit_group(self.m)

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        L = self.group.exponent
        return tuple(a * (L // n) for a, n in zip(self.exps, self.group.orders))

    @property
    def exponent_modulus(self) -> int:
        return self.group.exponent

    def phase(self, x: int) -> int | None:
        """chi(x) = exp(2 pi i phase / L); None at non-units."""
        if math.gcd(x, self.m) != 1:
            return None
        if self.m <= 2:
            return 0
        e = dlog_components(x % self.m, self.group)
        return sum(w * k for w, k in zip(self._weights, e)) % self.group.exponent

    def __call__(self, x: int):
        ph = self.phase(x)
        return ZERO if ph is None else RootOfUnity.of(ph, self.group.exponent)

    @cached_property
    def order(self) -> int:
        return lcm(*(n // math.gcd(a, n) for a, n in zip(self.exps, self.group.orders)))

    @property
    def is_principal(self) -> bool:
        return not any(self.exps)

    @cached_property
    def parity(self) -> int:
        return 1 if self.m <= 2 else self(-1).sign()

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @cached_property
    def phases(self) -> np.ndarray:
        """Phase at every unit, aligned with units(m)."""
        if self.m <= 2:
            return np.zeros(1, dtype=np.int64)
        d = dlog_array(units(self.m), self.group)
        return (d @ np.array(self._weights, dtype=np.int64)) % self.group.exponent

    @cached_property
    def conductor(self) -> int:
        # smallest divisor c with chi trivial on units = 1 mod c
        u = units(self.m)
        nontrivial = u[self.phases != 0]
        for c in divisors(self.m):
            if not np.any(nontrivial % c == 1 % c):
                return c
        raise AssertionError("unreachable: c = m always works")

    def conductor_by_components(self) -> int:
        c, i = 1, 0
        for comp in self.group.components:
            k = len(comp.factors)
            c *= _component_conductor(comp, self.exps[i:i + k])
            i += k
        return c

    def primitive(self) -> DirichletCharacter:
        """The primitive character mod the conductor inducing this one."""
        c = self.conductor
        gc = any_unit_group(c)
        L = self.group.exponent
        exps = []
        for g, n in zip(gc.generators() if c > 2 else [], gc.orders):
            y = g
            while math.gcd(y, self.m) != 1:
                y += c
            ph = self.phase(y)
            exps.append(ph * n // L)
        return DirichletCharacter(c, tuple(exps))

    def kernel(self) -> frozenset[int]:
        u = units(self.m)
        return frozenset(u[self.phases == 0].tolist())

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.m != self.m:
            raise ValueError("moduli differ")
        return DirichletCharacter(self.m, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.m, tuple(-a for a in self.exps))


def evaluate(chi: DirichletCharacter, x: int):
    return chi(x)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def character_group(m: int) -> list[DirichletCharacter]:
    g = unit_group(m)
    return [DirichletCharacter(m, e) for e in product(*(range(n) for n in g.orders))]


def annihilator_of(E0, m: int) -> DirichletCharacter:
    """The order-2 character whose kernel is the index-2 subgroup E0."""
    g = unit_group(m)
    member = np.zeros(m, dtype=bool)
    for x in E0:
        if math.gcd(x, m) != 1:
            raise ValueError(f"{x} is not a unit modulo {m}")
        member[x % m] = True
    if not member[1] or not is_index2_subgroup(m, member):
        raise ValueError("E0 is not an index-2 subgroup")
    exps = [0 if member[gen] else n // 2 for gen, n in zip(g.generators(), g.orders)]
    return DirichletCharacter(m, tuple(exps))


# --- per-modulus tables ---------------------------------------------------------


class CharacterTable:
    """All characters mod m as an exponent matrix plus the p-independent masks.

    Rows follow character_group order.  Immutable once built.
    """

    def __init__(self, m: int):
        self.m = m
        g = unit_group(m)
        self.group = g
        self.L = g.exponent
        self.orders = np.array(g.orders, dtype=np.int64)
        self.weights = self.L // self.orders
        grids = np.indices(tuple(g.orders)).reshape(len(g.orders), -1).T
        self.exps = np.ascontiguousarray(grids, dtype=np.int64)
        self.exps.flags.writeable = False

        comp_of = np.array(g.factor_component, dtype=np.int64)
        ncomp = len(g.components)
        self.comp_nontrivial = np.zeros((len(self.exps), ncomp), dtype=bool)
        for i in range(ncomp):
            cols = comp_of == i
            if cols.any():
                self.comp_nontrivial[:, i] = np.any(self.exps[:, cols] != 0, axis=1)

        self.odd = self.phase_at(m - 1) == self.L // 2
        self.order2 = self.element_orders() == 2

        # value of the primitive character at the j-th prime of m, read off a CRT lift
        mods = [c.modulus for c in g.components]
        fac = factorize(m)
        self.lift_phases = []
        for j, (ell, _) in enumerate(fac.factors):
            res = [ell % n for n in mods]
            res[j] = 1
            self.lift_phases.append(self.phase_at(crt(res, mods)))
        free = self.comp_nontrivial
        nonvanish = np.ones(len(self.exps), dtype=bool)
        minus_one = np.ones(len(self.exps), dtype=bool)
        for j, ph in enumerate(self.lift_phases):
            nonvanish &= free[:, j] | (ph != 0)
            minus_one &= free[:, j] | (ph == self.L // 2)
        self.nonvanishing = nonvanish
        self.bad0 = self.odd & nonvanish
        # condition (1) for an order-2 candidate
        self.ann_ok = self.odd & self.order2 & minus_one
        self.full_support = free.all(axis=1)

    def phase_at(self, x: int) -> np.ndarray:
        e = np.array(dlog_components(x % self.m, self.group), dtype=np.int64)
        return (self.exps @ (e * self.weights)) % self.L

    def element_orders(self) -> np.ndarray:
        return np.lcm.reduce(self.orders // np.gcd(self.exps, self.orders), axis=1) \
            if len(self.orders) else np.ones(len(self.exps), dtype=np.int64)

    def character(self, row: int) -> DirichletCharacter:
        return DirichletCharacter(self.m, tuple(int(a) for a in self.exps[row]))

    def kernel_mask(self, row: int) -> np.ndarray:
        """Boolean mask over residues mod m marking the kernel of a row."""
        u = units(self.m)
        d = dlog_array(u, self.group)
        ph = (d @ (self.exps[row] * self.weights)) % self.L
        mask = np.zeros(self.m, dtype=bool)
        mask[u[ph == 0]] = True
        return mask

    def trivial_at(self, p: int) -> np.ndarray:
        return self.phase_at(p) == 0

    def criterion_row(self, p: int) -> int | None:
        """Row of the qualifying annihilator, or None."""
        at_p = self.trivial_at(p)
        bad = self.bad0 & at_p
        for row in np.flatnonzero(self.ann_ok & at_p):
            # condition (2): every other odd chi with chi(p) = 1 has a vanishing product
            others = bad.copy()
            others[row] = False
            if not others.any():
                return int(row)
        return None


@lru_cache(maxsize=64)
def character_table(m: int) -> CharacterTable:
    return CharacterTable(m)


def odd_trivial_on_p(m: int, p: int) -> list[DirichletCharacter]:
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    t = character_table(m)
    return [t.character(r) for r in np.flatnonzero(t.odd & t.trivial_at(p))]


def x_minus(m: int, p: int) -> list[DirichletCharacter]:
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    t = character_table(m)
    return [t.character(r) for r in np.flatnonzero(t.odd & t.trivial_at(p) & t.full_support)]


def product_vanishes(chi: DirichletCharacter, m: int | None = None) -> bool:
    """Whether prod (1 - chi(l)) over primes l | m, l not dividing the conductor, is zero.

    chi(l) is read through the primitive character, since l | m makes the value
    of chi itself Zero.
    """
    m = chi.m if m is None else m
    psi = chi.primitive()
    return any(psi.phase(ell) == 0 for ell in factorize(m).primes if psi.m % ell)


def criterion_quadratic(m: int, p: int) -> tuple[bool, frozenset[int] | None]:
    if m < 3:
        raise ValueError("m must be at least 3")
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    t = character_table(m)
    row = t.criterion_row(p)
    if row is None:
        return False, None
    return True, t.character(row).kernel()


def criterion_quadratic_direct(m: int, p: int) -> tuple[bool, frozenset[int] | None]:
    """Object-by-object version of criterion_quadratic, kept as a slow cross-check."""
    if m < 3 or math.gcd(p, m) != 1:
        raise ValueError("need m >= 3 and p a unit")
    odd_p = [chi for chi in character_group(m) if chi.is_odd and chi.phase(p) == 0]
    for chi in character_group(m):
        if chi.order != 2 or chi.phase(p) != 0 or not chi.is_odd:
            continue
        psi = chi.primitive()
        if any(psi(ell).sign() != -1 for ell in factorize(m).primes if psi.m % ell):
            continue
        if all(product_vanishes(other, m) for other in odd_p if other != chi):
            return True, chi.kernel()
    return False, None


def field_discriminant(chi_ann: DirichletCharacter) -> int:
    if chi_ann.order != 2 or not chi_ann.is_odd:
        raise ValueError("need an odd character of order 2")
    d = -chi_ann.conductor
    if d % 4 not in (0, 1):
        raise ArithmeticError(f"{d} is not a discriminant")
    return d


# --- exact Bernoulli numbers -------------------------------------------------------


def _weighted_sum(chi: DirichletCharacter, n: int, modulus: int) -> list[int]:
    """Coefficients c_k with sum_x x chi(x) = sum_k c_k zeta_n^k, x over units mod modulus."""
    coeffs = [0] * n
    L = chi.group.exponent
    if modulus == 1:
        coeffs[0] = 0
        return coeffs
    u = units(modulus)
    for x, ph in zip(u.tolist(), chi.phases.tolist()):
        coeffs[ph * n // L] += x
    return coeffs


def bernoulli_b1(chi: DirichletCharacter) -> CyclotomicElement:
    if chi.is_principal:
        raise ValueError("B_1 of the principal character is not handled")
    psi = chi.primitive()
    n = psi.order
    return CyclotomicElement.from_powers(n, _weighted_sum(psi, n, psi.m), psi.m)


def verify_ber_identity(m: int, chi: DirichletCharacter) -> bool:
    if chi.m != m:
        raise ValueError("character modulus must equal m")
    if chi.is_principal:
        raise ValueError("need a nontrivial character")
    n = chi.order
    lhs = CyclotomicElement.from_powers(n, _weighted_sum(chi, n, m), m)
    psi = chi.primitive()
    rhs = bernoulli_b1(chi)
    for ell in factorize(m).primes:
        if psi.m % ell:
            rhs = rhs * (1 - psi(ell).as_cyclotomic(n))
    return lhs == rhs


def orthogonality_sum(m: int, x: int) -> CyclotomicElement:
    """sum over all characters mod m of chi(x), exactly."""
    t = character_table(m)
    if math.gcd(x, m) != 1:
        return CyclotomicElement.rational(0)
    coeffs = np.bincount(t.phase_at(x), minlength=t.L)
    return CyclotomicElement.from_powers(t.L, coeffs.tolist())


# --- counting without enumeration --------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _echelon_mod(gens: list[list[int]], D: int, ncols: int) -> list[list[int]]:
    """Triangular basis of the lattice spanned by gens and D*Z^ncols.

    Entries right of the pivot are kept reduced mod D, which is harmless because
    D*e_j lies in the lattice for every j.
    """
    rows = [[x % D for x in r] for r in gens]
    basis = []
    for col in range(ncols):
        piv = [0] * ncols
        piv[col] = D
        rest = []
        for r in rows:
            if r[col] == 0:
                rest.append(r)
                continue
            g, x, y = _egcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            new_piv = [(x * u + y * v) % D for u, v in zip(piv, r)]
            new_piv[col] = g
            other = [(b * u - a * v) % D for u, v in zip(piv, r)]
            other[col] = 0
            piv = new_piv
            if any(other):
                rest.append(other)
        basis.append(piv)
        rows = rest
    return basis


def _in_lattice(basis: list[list[int]], target: list[int], D: int) -> bool:
    t = [x % D for x in target]
    for col, row in enumerate(basis):
        if t[col] % row[col]:
            return False
        q = t[col] // row[col]
        t = [(a - q * b) % D for a, b in zip(t, row)]
    return True


def _count_solutions(group, factor_mask, logs, targets) -> int:
    """#{chi supported on the masked factors : chi(y_r) = exp(2 pi i targets[r] / 2)}.

    logs[r] is the exponent vector of the point y_r; targets are 0 or 1.
    """
    orders = [n for n, keep in zip(group.orders, factor_mask) if keep]
    D = lcm(2, *orders)
    R = len(logs)
    gens = []
    for k, (n, keep) in enumerate(zip(group.orders, factor_mask)):
        if keep:
            gens.append([logs[r][k] * (D // n) % D for r in range(R)])
    basis = _echelon_mod(gens, D, R)
    if not _in_lattice(basis, [t * (D // 2) for t in targets], D):
        return 0
    det = math.prod(row[i] for i, row in enumerate(basis))
    image = D**R // det
    return math.prod(orders) // image


@lru_cache(maxsize=256)
def _lift_logs(m: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the CRT lifts standing in for the primes of m."""
    g = any_unit_group(m)
    mods = [c.modulus for c in g.components]
    out = []
    for j, (ell, _) in enumerate(factorize(m).factors):
        res = [ell % n for n in mods]
        res[j] = 1
        out.append(dlog_components(crt(res, mods), g))
    return tuple(out)


def count_nonvanishing(m: int, p: int) -> int:
    """Size of {odd chi : chi(p) = 1, prod (1 - chi(l)) != 0} by inclusion-exclusion.

    Zero means every Gauss sum power is pure; one means a quadratic field.  Works
    for moduli far too large to enumerate.
    """
    g = unit_group(m)
    comp_of = g.factor_component
    lifts = _lift_logs(m)
    base = [dlog_components(p % m, g), dlog_components(m - 1, g)]
    r = len(g.components)
    total = 0
    for size in range(r + 1):
        for J in combinations(range(r), size):
            mask = [c not in J for c in comp_of]
            logs = base + [lifts[j] for j in J]
            tg = [0, 1] + [0] * len(J)
            total += (-1) ** size * _count_solutions(g, mask, logs, tg)
    return total


def count_x_minus(m: int, p: int) -> int:
    """|X^-(m, p)| by inclusion-exclusion over the components forced trivial."""
    g = unit_group(m)
    comp_of = g.factor_component
    base = [dlog_components(p % m, g), dlog_components(m - 1, g)]
    r = len(g.components)
    total = 0
    for size in range(r + 1):
        for J in combinations(range(r), size):
            mask = [c not in J for c in comp_of]
            total += (-1) ** size * _count_solutions(g, mask, base, [0, 1])
    return total
