"""Exact arithmetic in Z[zeta_m] and its ideals.

Elements are integer coordinate vectors in the power basis
``1, zeta, ..., zeta^(phi(m)-1)`` modulo the literal ``Phi_m`` (``m = 46`` is
kept as degree-22 ``Phi_46``, never rewritten through ``m/2``).  Ideals are
full-rank sublattices of Z^phi(m) stored in row HNF.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import lattice as lat
from .errors import ModulusMismatch, NotContained, ZeroIdeal
from .ntheory import divisors, euler_phi, factorize, is_prime, multiplicative_order, next_prime

# -- integer polynomials, coefficient lists low degree first ------------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division; exact over Z when ``b`` is monic, otherwise over Q."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] if lead == 1 else Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        _trim(a)
    return q, a


def poly_eval(p: Sequence[int], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def resultant(f: Sequence, g: Sequence) -> int:
    """Resultant ``Res(f, g)`` of integer polynomials via the Euclidean recursion over Q."""
    f = _trim([Fraction(c) for c in f])
    g = _trim([Fraction(c) for c in g])
    if not f or not g:
        return 0
    result = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            result *= g[0] ** df
            break
        if df == 0:
            result *= f[0] ** dg
            break
        _, r = poly_divmod(f, g)
        if not r:
            return 0
        dr = len(r) - 1
        if (df * dg) % 2:
            result = -result
        result *= g[-1] ** (df - dr)
        f, g = g, r
    assert result.denominator == 1
    return int(result)


@dataclass(frozen=True)
class CyclotomicPoly:
    m: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return poly_eval(self.coeffs, x)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> CyclotomicPoly:
    """``Phi_m`` by exact division of ``x^m - 1`` by ``Phi_d`` for proper divisors ``d``."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_poly(d).coeffs)
        assert not rem
    return CyclotomicPoly(m, tuple(int(c) for c in num))


def phi_value(m: int, t: int) -> int:
    """``Phi_m(t)`` exactly."""
    return cyclotomic_poly(m)(t)


# -- elements -----------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicElement:
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.m):
            raise ValueError(f"element of Z[zeta_{self.m}] needs {euler_phi(self.m)} coordinates")

    @classmethod
    def from_poly(cls, m: int, poly: Sequence[int]) -> "CyclotomicElement":
        """Reduce an arbitrary integer polynomial in zeta modulo ``Phi_m``."""
        n = euler_phi(m)
        _, r = poly_divmod(list(poly), cyclotomic_poly(m).coeffs)
        r = [int(c) for c in r] + [0] * (n - len(r))
        return cls(m, tuple(r))

    @classmethod
    def integer(cls, m: int, k: int) -> "CyclotomicElement":
        return cls.from_poly(m, [k])

    @classmethod
    def zeta_minus(cls, m: int, t: int) -> "CyclotomicElement":
        """The binomial ``zeta_m - t``."""
        return cls.from_poly(m, [-t, 1])

    def _check(self, other: "CyclotomicElement") -> None:
        if self.m != other.m:
            raise ModulusMismatch(f"Z[zeta_{self.m}] vs Z[zeta_{other.m}]")

    def __add__(self, other):
        self._check(other)
        return CyclotomicElement(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CyclotomicElement(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicElement(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        return mul(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def times_zeta(self) -> "CyclotomicElement":
        return CyclotomicElement(self.m, tuple(_times_zeta(self.m, self.coeffs)))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _times_zeta(m: int, coeffs: Sequence[int]) -> list[int]:
    phi = cyclotomic_poly(m).coeffs
    n = len(coeffs)
    top = coeffs[-1]
    out = [0] + list(coeffs[:-1])
    if top:
        for i in range(n):
            out[i] -= top * phi[i]
    return out


def mul(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    a._check(b)
    return CyclotomicElement.from_poly(a.m, poly_mul(a.coeffs, b.coeffs) or [0])


def multiplication_matrix(a: CyclotomicElement) -> lat.Matrix:
    """Rows are ``a * zeta^i`` in power-basis coordinates."""
    rows = [list(a.coeffs)]
    for _ in range(len(a.coeffs) - 1):
        rows.append(_times_zeta(a.m, rows[-1]))
    return rows


def norm(a: CyclotomicElement) -> int:
    """Absolute norm ``|N(a)| = |Res(Phi_m, a)|``; zero iff ``a`` is a zero divisor."""
    if a.is_zero():
        return 0
    return abs(resultant(cyclotomic_poly(a.m).coeffs, a.coeffs))


# -- trace form ---------------------------------------------------------------


def ramanujan_sum(m: int, k: int) -> int:
    """Trace of ``zeta_m^k`` from Q(zeta_m) to Q."""
    g = math.gcd(k, m)
    total = 0
    for d in divisors(g):
        q = m // d
        total += _mobius(q) * d
    return total


def _mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def trace_gram(m: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of ``<a, b> = Tr(a * conj(b))`` on the power basis (all integers)."""
    n = euler_phi(m)
    return tuple(tuple(ramanujan_sum(m, (i - j) % m) for j in range(n)) for i in range(n))


def t2(coeffs: Sequence[int], m: int) -> int:
    """Exact ``sum over embeddings |sigma(a)|^2``."""
    g = trace_gram(m)
    return sum(ci * sum(gij * cj for gij, cj in zip(row, coeffs)) for ci, row in zip(coeffs, g))


def embedding_roots(m: int) -> list[complex]:
    """One complex embedding per conjugate pair (all of them when the field is real)."""
    if m <= 2:
        return [complex(1.0 if m == 1 else -1.0, 0.0)]
    return [cmath.exp(2j * math.pi * k / m) for k in range(1, m // 2 + 1) if math.gcd(k, m) == 1]


# -- ideals -------------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicIdeal:
    m: int
    lattice: lat.Lattice

    def __post_init__(self):
        n = euler_phi(self.m)
        if self.lattice.ambient_rank != n or not self.lattice.is_full_rank():
            raise ZeroIdeal(f"ideal of Z[zeta_{self.m}] must have full rank {n}")
        for row in self.lattice.basis:
            if not lat.lattice_contains(self.lattice, _times_zeta(self.m, row)):
                raise ValueError("lattice is not closed under multiplication by zeta")

    @property
    def degree(self) -> int:
        return self.lattice.ambient_rank

    def basis_elements(self) -> list[CyclotomicElement]:
        return [CyclotomicElement(self.m, row) for row in self.lattice.basis]

    def contains(self, a: CyclotomicElement) -> bool:
        if a.m != self.m:
            raise ModulusMismatch(f"Z[zeta_{a.m}] element vs Z[zeta_{self.m}] ideal")
        return lat.lattice_contains(self.lattice, a.coeffs)


def unit_ideal(m: int) -> CyclotomicIdeal:
    return CyclotomicIdeal(m, lat.full_lattice(euler_phi(m)))


def ideal_from_generators(gens: Iterable[CyclotomicElement]) -> CyclotomicIdeal:
    """Z-span of ``g * zeta^i`` over the generators, in HNF."""
    gens = list(gens)
    if not gens:
        raise ZeroIdeal("no generators")
    m = gens[0].m
    for g in gens:
        gens[0]._check(g)
    n = euler_phi(m)
    rows = []
    # Norm-nonzero generators first: they pin down small pivots early.
    for g in sorted(gens, key=lambda e: norm(e) == 0):
        rows.extend(multiplication_matrix(g))
    lattice = lat.hnf(rows, n)
    if not lattice.is_full_rank():
        raise ZeroIdeal("generators span a rank-deficient module")
    return CyclotomicIdeal(m, lattice)


def principal_ideal(a: CyclotomicElement) -> CyclotomicIdeal:
    return ideal_from_generators([a])


def ideal_norm(i: CyclotomicIdeal) -> int:
    return i.lattice.determinant()


def ideal_contains(outer: CyclotomicIdeal, inner: CyclotomicIdeal) -> bool:
    return outer.m == inner.m and all(lat.lattice_contains(outer.lattice, r) for r in inner.lattice.basis)


def ideal_index(inner: CyclotomicIdeal, outer: CyclotomicIdeal) -> int:
    if inner.m != outer.m:
        raise ModulusMismatch("ideals live in different rings")
    if not ideal_contains(outer, inner):
        raise NotContained("inner ideal is not contained in outer ideal")
    idx = lat.lattice_index(inner.lattice, outer.lattice)
    assert idx * ideal_norm(outer) == ideal_norm(inner)
    return idx


def ideal_mul(a: CyclotomicIdeal, b: CyclotomicIdeal) -> CyclotomicIdeal:
    if a.m != b.m:
        raise ModulusMismatch("ideals live in different rings")
    m, n = a.m, a.degree
    rows = []
    for x in a.lattice.basis:
        ex = CyclotomicElement(m, x)
        for y in b.lattice.basis:
            rows.append(list(mul(ex, CyclotomicElement(m, y)).coeffs))
    out = CyclotomicIdeal(m, lat.hnf(rows, n))
    assert ideal_norm(out) == ideal_norm(a) * ideal_norm(b)
    return out


def ideal_pow(a: CyclotomicIdeal, k: int) -> CyclotomicIdeal:
    if k < 1:
        raise ValueError("exponent must be positive")
    result = a
    for _ in range(k - 1):
        result = ideal_mul(result, a)
    return result


# -- lower bound on proper sub-ideal indices ------------------------------------


def conductor(m: int) -> int:
    return m // 2 if m % 4 == 2 else m


def residue_degree(q: int, m: int) -> int:
    """Residue degree of the rational prime ``q`` in Q(zeta_m), via the conductor."""
    c = conductor(m)
    while c % q == 0:
        c //= q
    return multiplicative_order(q, c) if c > 1 else 1


def min_cofactor_norm(m: int, prime_limit: int | None = None) -> int:
    """Smallest norm ``q^f`` of a prime ideal of Z[zeta_m].

    With ``prime_limit`` the minimum runs over primes ``q <= prime_limit``;
    without it the scan stops once ``q`` exceeds the best norm seen, which is
    then the exact minimum over all primes.  For ``m <= 2`` (the ring is Z)
    this returns the trivial bound 1.
    """
    if m <= 2:
        return 1
    best = None
    q = 2
    while True:
        if prime_limit is not None and q > prime_limit:
            break
        if prime_limit is None and best is not None and q > best:
            break
        cand = q ** residue_degree(q, m)
        if best is None or cand < best:
            best = cand
        q = next_prime(q)
    return best if best is not None else 1


__all__ = [
    "CyclotomicElement",
    "CyclotomicIdeal",
    "CyclotomicPoly",
    "conductor",
    "cyclotomic_poly",
    "ideal_from_generators",
    "ideal_index",
    "ideal_mul",
    "ideal_norm",
    "ideal_pow",
    "is_prime",
    "min_cofactor_norm",
    "mul",
    "norm",
    "phi_value",
    "principal_ideal",
    "residue_degree",
    "t2",
    "trace_gram",
    "unit_ideal",
]
