"""Exact arithmetic in Q(zeta_n) with integer coefficient vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arithmetic import divisors


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """num / den for integer polynomials (low degree first), den monic, exact."""
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dq]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("division is not exact")
    return out


@lru_cache(maxsize=2048)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _reduce(coeffs: list[int], n: int) -> list[int]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j in range(deg + 1):
                c[i - deg + j] -= t * phi[j]
    return c[:deg]


@dataclass(frozen=True)
class CyclotomicElement:
    """(sum_j coeffs[j] * zeta_n^j) / den with 0 <= j < phi(n), in lowest terms."""

    n: int
    coeffs: tuple[int, ...]
    den: int = 1

    @classmethod
    def from_powers(cls, n: int, powers, den: int = 1) -> CyclotomicElement:
        """Build from coefficients on zeta_n^0 .. zeta_n^(k-1) (any length)."""
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        folded = [0] * n
        for j, c in enumerate(powers):
            folded[j % n] += c
        red = _reduce(folded, n)
        if den < 0:
            red, den = [-c for c in red], -den
        g = math.gcd(den, *red)
        return cls(n, tuple(c // g for c in red), den // g)

    @classmethod
    def root(cls, n: int, k: int) -> CyclotomicElement:
        powers = [0] * n
        powers[k % n] = 1
        return cls.from_powers(n, powers)

    @classmethod
    def rational(cls, q, n: int = 1) -> CyclotomicElement:
        q = Fraction(q)
        return cls.from_powers(n, [q.numerator], q.denominator)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self, big: int) -> CyclotomicElement:
        """The same number written in Q(zeta_big); n must divide big."""
        if big % self.n:
            raise ValueError(f"{self.n} does not divide {big}")
        step = big // self.n
        powers = [0] * big
        for j, c in enumerate(self.coeffs):
            powers[j * step] += c
        return CyclotomicElement.from_powers(big, powers, self.den)

    def _common(self, other) -> tuple[CyclotomicElement, CyclotomicElement]:
        if not isinstance(other, CyclotomicElement):
            other = CyclotomicElement.rational(other, self.n)
        if other.n == self.n:
            return self, other
        big = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(big), other.lift(big)

    def __add__(self, other) -> CyclotomicElement:
        a, b = self._common(other)
        k = max(len(a.coeffs), len(b.coeffs))
        ca = list(a.coeffs) + [0] * (k - len(a.coeffs))
        cb = list(b.coeffs) + [0] * (k - len(b.coeffs))
        return CyclotomicElement.from_powers(
            a.n, [x * b.den + y * a.den for x, y in zip(ca, cb)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self.n, tuple(-c for c in self.coeffs), self.den)

    def __sub__(self, other) -> CyclotomicElement:
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other) -> CyclotomicElement:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicElement:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicElement.from_powers(
                self.n, [c * q.numerator for c in self.coeffs], self.den * q.denominator
            )
        a, b = self._common(other)
        prod = [0] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return CyclotomicElement.from_powers(a.n, prod, a.den * b.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CyclotomicElement, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs and a.den == b.den

    # equal values may live in different Q(zeta_n); no consistent cheap hash
    __hash__ = None  # type: ignore[assignment]

    def to_complex(self) -> complex:
        z = sum(c * complex(math.cos(2 * math.pi * j / self.n), math.sin(2 * math.pi * j / self.n))
                for j, c in enumerate(self.coeffs))
        return z / self.den

    def __repr__(self) -> str:
        terms = [f"{c}*z{self.n}^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) or "0"
        return f"({body})/{self.den}" if self.den != 1 else body
