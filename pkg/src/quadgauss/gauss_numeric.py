"""Numeric Gauss sums over small finite fields.

Elements of F_q, q = p^f, are encoded as integers sum_k c_k p^k where
(c_0, ..., c_{f-1}) are coordinates in the basis 1, x, ..., x^(f-1) of
F_p[x]/(P).  Characters are read off a discrete-log table for a fixed generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .arithmetic import factorize, is_index2_subgroup, is_prime, lcm, mult_order

FIELD_CAP = 2**20


# --- polynomials over F_p, lowest degree first --------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, mod, p)


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _x_power(e: int, mod: list[int], p: int) -> list[int]:
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(poly: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree f over F_p."""
    f = len(poly) - 1
    if f == 1:
        return True
    diff = _x_power(p**f, poly, p) + [0, 0]
    diff[1] -= 1
    if _trim([c % p for c in diff]):
        return False
    for ell in factorize(f).primes:
        y = _x_power(p ** (f // ell), poly, p)
        diff = [0] * max(len(y), 2)
        for i, c in enumerate(y):
            diff[i] = c
        diff[1] -= 1
        if len(_polygcd(poly, diff, p)) != 1:
            return False
    return True


def least_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Least monic irreducible of degree f, comparing coefficients from x^(f-1) down."""
    if f == 1:
        return (0, 1)
    for high_first in product(range(p), repeat=f):
        poly = list(reversed(high_first)) + [1]
        if poly[0] and is_irreducible(poly, p):
            return tuple(poly)
    raise ArithmeticError("no irreducible polynomial found")


# --- the field ------------------------------------------------------------------------


def _matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(len(a), dtype=np.int64)
    while e:
        if e & 1:
            result = result @ a % p
        a = a @ a % p
        e >>= 1
    return result


@dataclass(frozen=True, eq=False)
class SmallField:
    p: int
    f: int
    poly: tuple[int, ...]
    gen: int
    exp_table: np.ndarray    # k -> encoding of gen^k, length q - 1
    dlog: np.ndarray         # encoding -> k, -1 at zero
    trace: np.ndarray        # encoding -> trace to F_p

    @property
    def q(self) -> int:
        return self.p**self.f

    def digits(self, enc) -> np.ndarray:
        enc = np.asarray(enc, dtype=np.int64)
        return np.stack([(enc // self.p**k) % self.p for k in range(self.f)], axis=-1)

    def encode(self, digits) -> np.ndarray:
        weights = self.p ** np.arange(self.f, dtype=np.int64)
        return (np.asarray(digits, dtype=np.int64) % self.p) @ weights


def _companion(poly: tuple[int, ...], p: int) -> np.ndarray:
    """Matrix of multiplication by x on coordinate column vectors."""
    f = len(poly) - 1
    c = np.zeros((f, f), dtype=np.int64)
    for i in range(1, f):
        c[i, i - 1] = 1
    c[:, f - 1] = [(-a) % p for a in poly[:f]]
    return c


def _mult_matrix(digits: np.ndarray, comp: np.ndarray, p: int) -> np.ndarray:
    f = len(comp)
    out = np.zeros((f, f), dtype=np.int64)
    power = np.eye(f, dtype=np.int64)
    for d in digits:
        out = (out + int(d) * power) % p
        power = power @ comp % p
    return out


@lru_cache(maxsize=32)
def build_field(p: int, f: int) -> SmallField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("degree must be positive")
    q = p**f
    if q > FIELD_CAP:
        raise ValueError(f"q = {q} exceeds the cap 2^20")
    poly = least_irreducible(p, f)
    comp = _companion(poly, p)
    weights = p ** np.arange(f, dtype=np.int64)
    ells = factorize(q - 1).primes

    def digits_of(e: int) -> np.ndarray:
        return np.array([(e // p**k) % p for k in range(f)], dtype=np.int64)

    gen = None
    for e in range(2, q) if q > 2 else [1]:
        mat = _mult_matrix(digits_of(e), comp, p)
        if all(not np.array_equal(_matpow(mat, (q - 1) // ell, p), np.eye(f, dtype=np.int64))
               for ell in ells):
            gen = e
            break
    if gen is None:
        raise ArithmeticError("no generator found")

    # powers of the generator, one block of columns at a time
    gmat = _mult_matrix(digits_of(gen), comp, p)
    block = min(q - 1, 1024)
    cols = np.zeros((f, block), dtype=np.int64)
    v = np.zeros(f, dtype=np.int64)
    v[0] = 1
    for k in range(block):
        cols[:, k] = v
        v = gmat @ v % p
    step = _matpow(gmat, block, p)
    chunks = []
    done = 0
    while done < q - 1:
        chunks.append(cols)
        done += block
        cols = step @ cols % p
    vecs = np.concatenate(chunks, axis=1)[:, : q - 1]
    exp_table = weights @ vecs

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp_table] = np.arange(q - 1, dtype=np.int64)
    if np.count_nonzero(dlog[1:] >= 0) != q - 1:
        raise AssertionError("generator powers are not a bijection")

    # Tr(x^k) is the matrix trace of the k-th companion power
    tr_basis = []
    power = np.eye(f, dtype=np.int64)
    for _ in range(f):
        tr_basis.append(int(np.trace(power)) % p)
        power = power @ comp % p
    enc = np.arange(q, dtype=np.int64)
    digs = np.stack([(enc // p**k) % p for k in range(f)], axis=1)
    trace = digs @ np.array(tr_basis, dtype=np.int64) % p

    for arr in (exp_table, dlog, trace):
        arr.flags.writeable = False
    return SmallField(p, f, poly, gen, exp_table, dlog, trace)


# --- sums --------------------------------------------------------------------------


def compensated_sum(values: np.ndarray) -> np.longdouble:
    """Pairwise TwoSum cascade in extended precision."""
    v = np.asarray(values, dtype=np.longdouble)
    errs = []
    while len(v) > 1:
        if len(v) % 2:
            v = np.append(v, np.longdouble(0))
        a, b = v[0::2], v[1::2]
        s = a + b
        bb = s - a
        errs.append((a - (s - bb)) + (b - bb))
        v = s
    total = v[0] if len(v) else np.longdouble(0)
    if errs:
        total += np.sum(np.concatenate(errs))
    return total


@dataclass(frozen=True)
class ComplexSum:
    real: np.longdouble
    imag: np.longdouble

    @property
    def value(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __abs__(self) -> float:
        return float(np.hypot(self.real, self.imag))


def _root_sum(w: np.ndarray, n: int, counts: bool = False) -> ComplexSum:
    """sum of exp(2 pi i w / n); with counts=True, w[j] is the multiplicity of exponent j."""
    if counts:
        idx = np.flatnonzero(w)
        weight = w[idx].astype(np.longdouble)
    else:
        idx = w
        weight = np.longdouble(1)
    ang = np.longdouble(2) * np.pi * idx.astype(np.longdouble) / np.longdouble(n)
    return ComplexSum(compensated_sum(weight * np.cos(ang)), compensated_sum(weight * np.sin(ang)))


def gauss_sum_numeric(fld: SmallField, m: int, a: int) -> ComplexSum:
    """G(eta^a) with eta(g^k) = exp(2 pi i k / m), summed over F_q^x."""
    q, p = fld.q, fld.p
    if (q - 1) % m:
        raise ValueError(f"{m} does not divide q - 1 = {q - 1}")
    k = np.arange(q - 1, dtype=np.int64)
    w = (a * k % m) * p + fld.trace[fld.exp_table] * m
    n = m * p
    if n <= 4 * q:
        return _root_sum(np.bincount(w, minlength=n), n, counts=True)
    return _root_sum(w, n)


def gauss_sums_all(fld: SmallField) -> np.ndarray:
    """G(eta^a) for every a mod q - 1 by one discrete Fourier transform (double precision)."""
    z = np.exp(2j * np.pi * fld.trace[fld.exp_table] / fld.p)
    return np.fft.ifft(z) * (fld.q - 1)


# --- checks ---------------------------------------------------------------------------


@dataclass
class PropertyReport:
    q: int
    m: int
    norm_dev: float        # max | |G|^2 / q - 1 |
    frobenius_dev: float   # max |G(a p) - G(a)| / sqrt(q)
    conjugate_dev: float   # max |G(-a) - eta^a(-1) conj G(a)| / sqrt(q)
    trivial_dev: float     # |G(0) + 1|
    tol: float = 1e-8

    @property
    def passed(self) -> bool:
        return max(self.norm_dev, self.frobenius_dev, self.conjugate_dev, self.trivial_dev) < self.tol


def check_basic_properties(fld: SmallField, m: int, tol: float = 1e-8, sums=None) -> PropertyReport:
    q = fld.q
    if m <= 2 or (q - 1) % m:
        raise ValueError("need m > 2 dividing q - 1")
    full = gauss_sums_all(fld) if sums is None else sums
    step = (q - 1) // m
    g = full[np.arange(m) * step]
    a = np.arange(1, m)
    root = math.sqrt(q)
    norm_dev = float(np.max(np.abs(np.abs(g[a]) ** 2 / q - 1)))
    frob = float(np.max(np.abs(g[a * fld.p % m] - g[a]))) / root
    # eta^a(-1) = exp(2 pi i a (q-1)/2 / m) since -1 = g^((q-1)/2)
    half = (q - 1) // 2 if q % 2 else 0
    sign = np.exp(2j * np.pi * (a * half % m) / m)
    conj = float(np.max(np.abs(g[(-a) % m] - sign * np.conj(g[a])))) / root
    trivial = abs(g[0] + 1)
    return PropertyReport(q, m, norm_dev, frob, conj, float(trivial), tol)


def _legendre_table(p: int) -> np.ndarray:
    t = -np.ones(p, dtype=np.int64)
    t[0] = 0
    t[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    return t


def _det_mod(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of square integer matrices."""
    n = mats.shape[-1]
    a = mats
    if n == 1:
        return a[:, 0, 0] % p
    if n == 2:
        return (a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]) % p
    if n == 3:
        t1 = a[:, 0, 0] * ((a[:, 1, 1] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 1]) % p)
        t2 = a[:, 0, 1] * ((a[:, 1, 0] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 0]) % p)
        t3 = a[:, 0, 2] * ((a[:, 1, 0] * a[:, 2, 1] - a[:, 1, 1] * a[:, 2, 0]) % p)
        return (t1 - t2 + t3) % p
    return _det_mod_eliminate(mats, p)


def _det_mod_eliminate(mats: np.ndarray, p: int) -> np.ndarray:
    """Stacked Gaussian elimination over F_p, any size."""
    a = mats.astype(np.int64) % p
    k, n = a.shape[0], a.shape[-1]
    det = np.ones(k, dtype=np.int64)
    rows = np.arange(k)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    for col in range(n):
        nz = a[:, col:, col] != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = col + np.argmax(nz, axis=1)
        swap = has & (piv != col)
        det[swap] = (-det[swap]) % p
        top = a[rows, piv].copy()
        a[rows, piv] = a[:, col]
        a[:, col] = top
        pv = a[:, col, col]
        det = det * pv % p
        scale = inv[pv]
        factors = a[:, col + 1:, col] * scale[:, None] % p
        a[:, col + 1:, :] = (a[:, col + 1:, :] - factors[:, :, None] * a[:, col, None, :]) % p
    return det



def quadratic_gauss_sum(p: int, h: int, chunk: int = 1 << 18) -> ComplexSum:
    """Gauss sum of the quadratic character of F_{p^h}, p odd, h <= 3.

    The quadratic character is the Legendre symbol of the norm, and the norm of
    x is det of multiplication by x, so no discrete-log table is needed and q may
    exceed the table cap.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    poly = least_irreducible(p, h)
    comp = _companion(poly, p)
    leg = _legendre_table(p)
    powers = [np.eye(h, dtype=np.int64)]
    for _ in range(h - 1):
        powers.append(powers[-1] @ comp % p)
    basis = np.stack(powers)                                   # (h, h, h)
    tr_basis = np.array([int(np.trace(b)) % p for b in basis], dtype=np.int64)
    q = p**h
    counts = np.zeros(p, dtype=np.int64)                       # signed count per trace value
    for start in range(1, q, chunk):
        enc = np.arange(start, min(q, start + chunk), dtype=np.int64)
        digs = np.stack([(enc // p**k) % p for k in range(h)], axis=1)
        mats = np.einsum("nk,kij->nij", digs, basis) % p
        eta = leg[_det_mod(mats, p)]
        tr = digs @ tr_basis % p
        np.add.at(counts, tr, eta)
    return _root_sum_signed(counts, p)


def _root_sum_signed(counts: np.ndarray, n: int) -> ComplexSum:
    ang = np.longdouble(2) * np.pi * np.arange(n, dtype=np.longdouble) / np.longdouble(n)
    c = counts.astype(np.longdouble)
    return ComplexSum(compensated_sum(c * np.cos(ang)), compensated_sum(c * np.sin(ang)))


def quadratic_closed_form(p: int, h: int) -> complex:
    """(-1)^(h-1) * sqrt((-1)^((p-1)/2) p)^h."""
    root = math.sqrt(p) if p % 4 == 1 else 1j * math.sqrt(p)
    return (-1) ** (h - 1) * root**h


def check_quadratic_closed_form(p: int, h: int, tol: float = 1e-6) -> bool:
    g = quadratic_gauss_sum(p, h).value
    want = quadratic_closed_form(p, h)
    return abs(g - want) <= tol * abs(want)


def _subfield_embedding(small: SmallField, big: SmallField) -> int:
    """t with phi(small.gen) = big.gen^(t N), N = (Q - 1)/(q - 1), for some embedding phi."""
    q, Q, p = small.q, big.q, small.p
    N = (Q - 1) // (q - 1)
    if small.f == 1:
        # prime field: the generator is the residue itself
        img = np.zeros(big.f, dtype=np.int64)
        img[0] = small.gen
        return int(big.dlog[int(big.encode(img))]) // N
    for j in range(q - 1):
        # candidate root of small.poly inside the subfield
        beta_log = j * N
        acc = np.zeros(big.f, dtype=np.int64)
        for k, c in enumerate(small.poly):
            if c:
                acc = (acc + c * big.digits(big.exp_table[beta_log * k % (Q - 1)])) % p
        if acc.any():
            continue
        # image of the small generator: sum d_i beta^i
        img = np.zeros(big.f, dtype=np.int64)
        for i, d in enumerate(small.digits(small.gen).tolist()):
            if d:
                img = (img + d * big.digits(big.exp_table[beta_log * i % (Q - 1)])) % p
        log = int(big.dlog[int(big.encode(img))])
        if log % N:
            raise AssertionError("embedded element left the subfield")
        return log // N
    raise ArithmeticError("defining polynomial has no root in the big field")


def check_davenport_hasse(small: SmallField, big: SmallField, m: int, s: int,
                          a: int = 1, tol: float = 1e-6) -> bool:
    """G_{q^s}(lifted eta^a) = (-1)^(s-1) G_q(eta^a)^s."""
    if small.p != big.p or big.f != s * small.f:
        raise ValueError("fields do not form a degree-s tower")
    if (small.q - 1) % m:
        raise ValueError(f"{m} does not divide q - 1")
    t = _subfield_embedding(small, big)
    # eta(norm(G^k)) = eta(small.gen^(k / t)), so the lifted exponent is a / t
    c = a * pow(t, -1, small.q - 1) % m
    lhs = gauss_sum_numeric(big, m, c).value
    rhs = (-1) ** (s - 1) * gauss_sum_numeric(small, m, a).value ** s
    return abs(lhs - rhs) <= tol * small.q ** (s / 2)


@dataclass
class ConjugateReport:
    inside_max: float        # worst |r^(m w) - 1| over t in E0
    outside_max: float       # largest |r^(m w) - 1| over t outside E0
    tol: float

    @property
    def passed(self) -> bool:
        return self.inside_max < self.tol and self.outside_max >= self.tol


def conjugate_report(fld: SmallField, m: int, E0) -> ConjugateReport:
    if (fld.q - 1) % m:
        raise ValueError(f"{m} does not divide q - 1")
    member = np.zeros(m, dtype=bool)
    for x in E0:
        if math.gcd(x, m) != 1:
            raise ValueError("E0 must consist of units")
        member[x % m] = True
    if m < 3 or not member[1] or not is_index2_subgroup(m, member):
        raise ValueError("E0 is not an index-2 subgroup")
    w = lcm(2, m)
    base = gauss_sum_numeric(fld, m, 1).value
    inside, outside = 0.0, 0.0
    for t in range(1, m):
        if math.gcd(t, m) != 1:
            continue
        r = gauss_sum_numeric(fld, m, t).value / base
        r /= abs(r)
        # repeated squaring loses less than the direct power on long exponents
        dev = abs(_unit_power(r, m * w) - 1)
        if member[t]:
            inside = max(inside, dev)
        else:
            outside = max(outside, dev)
    return ConjugateReport(inside, outside, m * w * 1e-10)


def _unit_power(z: complex, e: int) -> complex:
    ang = np.longdouble(math.atan2(z.imag, z.real)) * e
    ang = math.remainder(float(ang % (2 * np.pi)), 2 * math.pi)
    return complex(math.cos(ang), math.sin(ang))


def conjugate_two_value_test(fld: SmallField, m: int, E0) -> bool:
    return conjugate_report(fld, m, E0).passed


def semiprimitive_prediction(p: int, m: int, h: int) -> int | None:
    """Sign of p^(-h/2) G_{p^h}(eta_m) when p is semi-primitive mod m, else None."""
    if m <= 2 or math.gcd(p, m) != 1:
        return None
    f = mult_order(p, m)
    s = next((k for k in range(1, f + 1) if pow(p, k, m) == m - 1), None)
    if s is None or h % (2 * s):
        return None
    t = h // (2 * s)
    if p == 2:
        return (-1) ** (t - 1)
    return (-1) ** (t - 1 + (p**s + 1) * t // m)


def check_semiprimitive(p: int, m: int, h: int, tol: float = 1e-8) -> bool:
    sign = semiprimitive_prediction(p, m, h)
    if sign is None:
        raise ValueError("p is not semi-primitive mod m with 2s | h")
    fld = build_field(p, h)
    g = gauss_sum_numeric(fld, m, 1).value / p ** (h / 2)
    return abs(g - sign) < tol


def find_prime_in_class(m: int, pbar: int, bound: int) -> int | None:
    if math.gcd(pbar, m) != 1:
        raise ValueError(f"{pbar} is not a unit modulo {m}")
    x = pbar % m
    if x == 0:
        x = m
    while x <= bound:
        if is_prime(x):
            return x
        x += m
    return None
