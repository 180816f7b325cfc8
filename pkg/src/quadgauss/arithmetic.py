"""Exact modular arithmetic on (Z/mZ)^x.

Factorization by trial division, Euler phi, multiplicative orders, the unit
group with canonical generators, and per-component discrete logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import product

import numpy as np

# int64 products x*y with x, y < m must not overflow
MAX_MODULUS = 3_000_000_000


@dataclass(frozen=True)
class Factorization:
    m: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**u for p, u in self.factors)

    @property
    def v2(self) -> int:
        return self.factors[0][1] if self.factors and self.factors[0][0] == 2 else 0

    def __len__(self) -> int:
        return len(self.factors)


@lru_cache(maxsize=65536)
def factorize(m: int) -> Factorization:
    if m < 1:
        raise ValueError(f"factorize needs m >= 1, got {m}")
    out = []
    n = m
    d = 2
    while d * d <= n:
        if n % d == 0:
            u = 0
            while n % d == 0:
                n //= d
                u += 1
            out.append((d, u))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return Factorization(m, tuple(out))


def euler_phi(m: int) -> int:
    phi = 1
    for p, u in factorize(m).factors:
        phi *= (p - 1) * p ** (u - 1)
    return phi


def divisors(m: int) -> list[int]:
    """All positive divisors of m, ascending."""
    divs = [1]
    for p, u in factorize(m).factors:
        divs = [d * p**k for d in divs for k in range(u + 1)]
    return sorted(divs)


def v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def mult_order(p: int, m: int) -> int:
    """Smallest f >= 1 with p^f = 1 (mod m)."""
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not a unit modulo {m}")
    if m == 1:
        return 1
    f = euler_phi(m)
    # strip prime factors of phi(m) while the power stays 1
    for ell, _ in factorize(f).factors:
        while f % ell == 0 and pow(p, f // ell, m) == 1:
            f //= ell
    return f


def crt(residues: list[int], moduli: list[int]) -> int:
    x, M = 0, 1
    for r, n in zip(residues, moduli):
        # solve x + M*k = r (mod n)
        k = ((r - x) * pow(M, -1, n)) % n if n > 1 else 0
        x += M * k
        M *= n
    return x % M


@lru_cache(maxsize=4096)
def primitive_root(n: int) -> int:
    """Smallest generator of (Z/nZ)^x for n = odd prime power, 2 or 4."""
    if n == 2:
        return 1
    if n == 4:
        return 3
    phi = euler_phi(n)
    ells = factorize(phi).primes
    for g in range(2, n):
        if math.gcd(g, n) == 1 and all(pow(g, phi // ell, n) != 1 for ell in ells):
            return g
    raise ValueError(f"(Z/{n}Z)^x is not cyclic")


@dataclass(frozen=True)
class Cyclic:
    """Cyclic component mod an odd prime power, 2 or 4."""

    prime: int
    exponent: int
    gen: int
    order: int

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    @property
    def factors(self) -> tuple[tuple[int, int], ...]:
        return ((self.gen, self.order),) if self.order > 1 else ()


@dataclass(frozen=True)
class TwoPart:
    """Component mod 2^u, u >= 3, generated by -1 and 5."""

    exponent: int

    prime = 2

    @property
    def modulus(self) -> int:
        return 2**self.exponent

    @property
    def gens(self) -> tuple[int, int]:
        return (self.modulus - 1, 5)

    @property
    def orders(self) -> tuple[int, int]:
        return (2, 2 ** (self.exponent - 2))

    @property
    def factors(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.gens, self.orders))


Component = Cyclic | TwoPart


@lru_cache(maxsize=4096)
def _component_dlog_table(comp: Component) -> np.ndarray:
    """Table of shape (modulus, nfactors): exponents of each residue, -1 on non-units."""
    n = comp.modulus
    k = len(comp.factors)
    table = np.full((n, k), -1, dtype=np.int64)
    if isinstance(comp, TwoPart):
        x = 1
        for e in range(comp.orders[1]):
            table[x] = (0, e)
            table[n - x] = (1, e)
            x = x * 5 % n
    elif k:
        x = 1
        for e in range(comp.order):
            table[x, 0] = e
            x = x * comp.gen % n
    table.flags.writeable = False
    return table


@dataclass(frozen=True)
class UnitGroupStructure:
    m: int
    components: tuple[Component, ...]

    @property
    def factor_moduli(self) -> tuple[int, ...]:
        """Modulus of the prime power owning each cyclic factor."""
        return tuple(c.modulus for c in self.components for _ in c.factors)

    @property
    def factor_component(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.components) for _ in c.factors)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for c in self.components for _, o in c.factors)

    @property
    def exponent(self) -> int:
        """Exponent of the group (Carmichael lambda)."""
        return lcm(*self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def _lifted_generators(self) -> tuple[int, ...]:
        mods = [c.modulus for c in self.components]
        out = []
        for i, c in enumerate(self.components):
            for g, _ in c.factors:
                res = [1] * len(mods)
                res[i] = g
                out.append(crt(res, mods))
        return tuple(out)

    def generators(self) -> list[int]:
        """Canonical generators lifted to residues mod m (1 on the other components)."""
        return list(self._lifted_generators)

    def element(self, exps) -> int:
        """Inverse of dlog_components: the unit with the given exponent vector."""
        x = 1
        for g, e in zip(self._lifted_generators, exps):
            x = x * pow(g, int(e), self.m) % self.m
        return x


def unit_group(m: int) -> UnitGroupStructure:
    if m < 3:
        raise ValueError(f"unit_group needs m >= 3, got {m}")
    return any_unit_group(m)


@lru_cache(maxsize=4096)
def any_unit_group(m: int) -> UnitGroupStructure:
    """unit_group without the m >= 3 guard; m = 1, 2 give the trivial group."""
    comps: list[Component] = []
    for p, u in factorize(m).factors:
        if p == 2 and u >= 3:
            comps.append(TwoPart(u))
        else:
            n = p**u
            comps.append(Cyclic(p, u, primitive_root(n), euler_phi(n)))
    return UnitGroupStructure(m, tuple(comps))


def dlog_components(x: int, g: UnitGroupStructure) -> tuple[int, ...]:
    if math.gcd(x, g.m) != 1:
        raise ValueError(f"{x} is not a unit modulo {g.m}")
    out: list[int] = []
    for c in g.components:
        out.extend(int(e) for e in _component_dlog_table(c)[x % c.modulus])
    return tuple(out)


def dlog_array(xs: np.ndarray, g: UnitGroupStructure) -> np.ndarray:
    """Vectorized dlog_components for an array of units; shape (len(xs), nfactors)."""
    xs = np.asarray(xs, dtype=np.int64)
    cols = [_component_dlog_table(c)[xs % c.modulus] for c in g.components]
    if not cols:
        return np.zeros((len(xs), 0), dtype=np.int64)
    return np.concatenate(cols, axis=1)


@lru_cache(maxsize=8)
def units(m: int) -> np.ndarray:
    """Sorted units mod m as a read-only array."""
    if m == 1:
        out = np.zeros(1, dtype=np.int64)
    else:
        r = np.arange(m, dtype=np.int64)
        out = r[np.gcd(r, m) == 1]
    out.flags.writeable = False
    return out


def is_index2_subgroup(m: int, member: np.ndarray) -> bool:
    """True iff the boolean residue mask marks an index-2 subgroup of (Z/mZ)^x.

    The +/-1 indicator must be a nontrivial homomorphism; checking
    sign(x*g) = sign(x)*sign(g) for every unit x and each canonical generator g
    extends by induction to the whole group.
    """
    u = units(m)
    if 2 * int(member[u].sum()) != len(u):
        return False
    sign = np.zeros(m, dtype=np.int8)
    sign[u] = np.where(member[u], 1, -1)
    for g in unit_group(m).generators():
        if not np.array_equal(sign[u * g % m], sign[u] * sign[g]):
            return False
    return True


def elements_of_order_dividing(f: int, g: UnitGroupStructure) -> list[int]:
    """All x in (Z/mZ)^x with x^f = 1, built factor by factor."""
    if f < 1:
        raise ValueError("f must be positive")
    choices = []
    for n in g.orders:
        step = n // math.gcd(f, n)
        choices.append(range(0, n, step))
    return sorted(g.element(e) for e in product(*choices))


def primes_dividing(m: int) -> tuple[int, ...]:
    return factorize(m).primes


# --- primality and factoring beyond trial division -------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def factorize_large(n: int, trial_bound: int = 10_000) -> Factorization:
    """Trial division up to trial_bound, then Brent's rho on the cofactor."""
    if n < 1:
        raise ValueError("n must be positive")
    counts: dict[int, int] = {}
    rest = n
    d = 2
    while d <= trial_bound and d * d <= rest:
        while rest % d == 0:
            counts[d] = counts.get(d, 0) + 1
            rest //= d
        d += 1 if d == 2 else 2
    stack = [rest] if rest > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
            continue
        d = _pollard_brent(x)
        stack.extend([d, x // d])
    return Factorization(n, tuple(sorted(counts.items())))
