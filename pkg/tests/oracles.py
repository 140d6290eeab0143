"""Brute-force reference implementations used only by the tests."""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction


def phi_brute(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def order_brute(a: int, n: int) -> int:
    x, k = a % n, 1
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def _inverse(m):
    """Rational inverse by Gauss-Jordan elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def coset_count(rows) -> int:
    """``|Z^n : L|`` for the row lattice ``L`` by breadth-first coset enumeration.

    Two vectors lie in the same coset iff their coordinates with respect to
    the rows differ by integers, so the fractional parts identify the coset.
    """
    n = len(rows)
    inv = _inverse(rows)

    def key(v):
        return tuple((sum(v[i] * inv[i][j] for i in range(n))) % 1 for j in range(n))

    start = (0,) * n
    seen = {key(start)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(n):
            for d in (1, -1):
                w = list(v)
                w[i] += d
                k = key(w)
                if k not in seen:
                    seen.add(k)
                    queue.append(tuple(w))
    return len(seen)


def galois_image(s: int, n: int) -> set[int]:
    """Image in (Z/s)^* of the kernel of (Z/lcm(n, s))^* -> (Z/n)^*."""
    big = math.lcm(n, s)
    return {a % s for a in range(1, big + 1) if math.gcd(a, big) == 1 and a % n == 1 % n}


# -- polynomials over F_q, coefficients low to high --------------------------------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def pmod(a, b, q):
    a = [x % q for x in a]
    _trim(a)
    inv = pow(b[-1], -1, q)
    while len(a) >= len(b):
        f = a[-1] * inv % q
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % q
        _trim(a)
    return a


def pmulmod(a, b, f, q):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    return pmod(out, f, q)


def pgcd(a, b, q):
    a, b = _trim([x % q for x in a]), _trim([x % q for x in b])
    while b:
        a, b = b, pmod(a, b, q)
    return a


def smallest_factor_degree(f, q) -> int:
    """Least degree of an irreducible factor of ``f`` mod ``q`` (distinct-degree test)."""
    f = _trim([x % q for x in f])
    x = [0, 1]
    power = x
    for d in range(1, len(f)):
        # power = x^(q^d) mod f
        r = [1]
        base, e = power, q
        while e:
            if e & 1:
                r = pmulmod(r, base, f, q)
            base = pmulmod(base, base, f, q)
            e >>= 1
        power = r
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % q
        if len(pgcd(f, _trim(diff), q)) > 1:
            return d
    return len(f) - 1
