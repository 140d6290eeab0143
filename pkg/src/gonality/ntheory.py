"""Exact integer number theory: factorization, Euler phi, orders, primitive roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .errors import NotCoprime, NotPrime

_TRIAL_LIMIT = 10**6
# Deterministic Miller-Rabin for n < 3.3e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES_SMALL = _small_primes(1000)


def is_prime(n: int) -> bool:
    """Miller-Rabin primality; deterministic below 3.3e24, probabilistic-strong above."""
    if n < 2:
        return False
    for p in _PRIMES_SMALL[:13]:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES if n < _MR_LIMIT else _MR_BASES + (43, 47, 53, 59, 61, 67, 71)
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    q = max(n + 1, 2)
    while not is_prime(q):
        q += 1
    return q


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return _small_primes(limit)


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as strictly increasing ``(prime, exponent)`` pairs."""

    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Factor ``n >= 1``: trial division up to 10**6, then Pollard rho."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    counts: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        d = _pollard_rho(k)
        stack.extend((d, k // d))
    return Factorization(tuple(sorted(counts.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def multiplicative_order(a: int, n: int) -> int:
    """Least ``k >= 1`` with ``a**k == 1 (mod n)``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    if n == 1:
        return 1
    a %= n
    # Carmichael-free: shrink phi(n) by its prime factors.
    k = euler_phi(n)
    for p, _ in factorize(k):
        while k % p == 0 and pow(a, k // p, n) == 1:
            k //= p
    return k


def is_primitive_root(t: int, p: int) -> bool:
    """True iff ``t mod p`` generates the units of the prime field."""
    if t % p == 0:
        return False
    return multiplicative_order(t, p) == p - 1


class RootCriterion(str, Enum):
    LEAST_POSITIVE = "least_positive"
    LEAST_ABSOLUTE = "least_absolute"


class PrimitiveRootResult(NamedTuple):
    prime: int
    root: int
    criterion: RootCriterion


def least_primitive_root(p: int, criterion: RootCriterion | str = RootCriterion.LEAST_POSITIVE) -> PrimitiveRootResult:
    """Smallest primitive root of the odd prime ``p`` under ``criterion``.

    Under ``least_absolute`` the search runs over ``1, -1, 2, -2, ...`` so that
    ties in absolute value resolve to the positive root.
    """
    criterion = RootCriterion(criterion)
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if criterion is RootCriterion.LEAST_POSITIVE:
        t = 1
        while not is_primitive_root(t, p):
            t += 1
        return PrimitiveRootResult(p, t, criterion)
    k = 1
    while True:
        for t in (k, -k):
            if is_primitive_root(t, p):
                return PrimitiveRootResult(p, t, criterion)
        k += 1


def within_half_sqrt(t: int, p: int) -> bool:
    """Exact test of ``|t| <= sqrt(p)/2`` as ``4 t^2 <= p``."""
    return 4 * t * t <= p


def primitive_root_bound_scan(limit: int) -> list[tuple[int, int, bool]]:
    """For each odd prime ``p <= limit``: ``(p, |g(p)|, |g(p)| <= sqrt(p)/2)``.

    The square-root bound is only guaranteed once ``log2(p - 1) >= 24``, so
    failures for small primes are data, not errors.
    """
    rows = []
    for p in primes_up_to(limit):
        if p == 2:
            continue
        g = abs(least_primitive_root(p, RootCriterion.LEAST_ABSOLUTE).root)
        rows.append((p, g, within_half_sqrt(g, p)))
    return rows


def prime_power_parts(n: int) -> list[tuple[int, int, int]]:
    """Decompose ``n`` as ``[(l, u, l**u), ...]`` over its prime factors."""
    return [(p, e, p**e) for p, e in factorize(n)]


def prime_power_base(s: int) -> tuple[int, int]:
    """Return ``(l, u)`` with ``s == l**u``; raise ValueError if ``s`` is not a prime power."""
    f = factorize(s)
    if len(f) != 1:
        raise ValueError(f"{s} is not a prime power")
    return f.pairs[0]
