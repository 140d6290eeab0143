"""Galois groups ``Gal(K(zeta_s)/K)`` for cyclotomic base fields ``K = Q(zeta_n)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import phi_value
from .errors import NoGenerator, NotCyclic
from .groups import AbelianGroupSpec
from .ntheory import euler_phi, is_prime, multiplicative_order


@dataclass(frozen=True)
class FieldSpec:
    """The base field ``Q(zeta_n)``; ``n = 1`` is Q."""

    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("field index must be >= 1")

    def __str__(self) -> str:
        return "Q" if self.n == 1 else f"Q(zeta_{self.n})"


@dataclass(frozen=True)
class GaloisSubgroup:
    s: int
    elements: tuple[int, ...]
    order: int
    cyclic: bool
    generators: tuple[int, ...]

    @property
    def m_s(self) -> int:
        return self.order

    def structure(self) -> str:
        """Cyclic, or non-cyclic with its order and exponent."""
        orders = sorted(multiplicative_order(a, self.s) for a in self.elements) if self.s > 1 else [1]
        if self.cyclic:
            return f"cyclic of order {self.order}"
        return f"non-cyclic of order {self.order}, exponent {max(orders)}"


def galois_subgroup(s: int, k: FieldSpec) -> GaloisSubgroup:
    """``Gal(K(zeta_s)/K)`` inside ``(Z/s)^*``.

    It is the image mod ``s`` of the kernel of ``(Z/lcm(n, s))^* -> (Z/n)^*``;
    by CRT that image is exactly the units ``a`` with ``a = 1 mod gcd(n, s)``.
    """
    if s < 1:
        raise ValueError("s must be positive")
    g = math.gcd(k.n, s)
    if s == 1:
        elems = (0,)
    else:
        elems = tuple(a for a in range(1, s) if math.gcd(a, s) == 1 and (a - 1) % g == 0)
    order = len(elems)
    if s == 1:
        return GaloisSubgroup(s, elems, 1, True, ())
    gens = tuple(a for a in elems if multiplicative_order(a, s) == order)
    cyclic = bool(gens)
    return GaloisSubgroup(s, elems, order, cyclic, gens if order > 1 else ())


def extension_degree(s: int, k: FieldSpec) -> int:
    """``[K(zeta_s) : K] = phi(lcm(n, s)) / phi(n)``."""
    return euler_phi(math.lcm(k.n, s)) // euler_phi(k.n)


@dataclass(frozen=True)
class Violation:
    s: int
    structure: str

    def __str__(self) -> str:
        return f"s = {self.s}: Gal(K(zeta_{self.s})/K) is {self.structure}"


def check_hypotheses(a: AbelianGroupSpec, k: FieldSpec) -> list[Violation]:
    """Prime powers ``s`` in the elementary divisors whose Galois group is not cyclic."""
    out = []
    for s in sorted(set(a.omega)):
        sub = galois_subgroup(s, k)
        if not sub.cyclic:
            out.append(Violation(s, sub.structure()))
    return out


def select_t(l: int, k: FieldSpec, window: int | None = None, m_target: int | None = None):
    """Integer ``t`` whose residue generates ``Gal(K(zeta_l)/K)``, minimising ``|Phi_m(t)|``.

    Every ``|t| <= window`` with a generating residue is a candidate; ties go
    to the smaller ``|t|``, then to the positive sign.  Candidates with
    ``Phi_m(t) = 0`` are skipped.  Returns ``(t, [(t', |Phi_m(t')|), ...])``.
    """
    sub = galois_subgroup(l, k)
    if not sub.cyclic:
        raise NotCyclic(f"Gal(K(zeta_{l})/K) is not cyclic")
    if sub.order < 2:
        raise ValueError(f"Gal(K(zeta_{l})/K) is trivial; no generator to choose")
    window = l if window is None else window
    m_target = sub.order if m_target is None else m_target
    gens = set(sub.generators)
    candidates = []
    for t in range(-window, window + 1):
        if t % l in gens:
            value = abs(phi_value(m_target, t))
            if value:
                candidates.append((t, value))
    if not candidates:
        raise NoGenerator(f"no generator of Gal(K(zeta_{l})/K) with |t| <= {window}")
    t, _ = min(candidates, key=lambda tv: (tv[1], abs(tv[0]), tv[0] < 0))
    return t, candidates


def conditional_lower_bound(s: int, k: FieldSpec) -> int | None:
    """``m_s + 1`` when the standing assumptions can be checked, else None.

    Requires ``s`` an odd prime, ``Gal(K(zeta_s)/K)`` cyclic with even order
    ``m_s > 2``.  The value additionally presumes a non-machine-checkable
    condition on the generating function of the invariant field, so callers
    must present it as conditional.  ``m_s <= 2`` is excluded because every
    ideal of Z is principal.
    """
    if s < 3 or not is_prime(s):
        return None
    sub = galois_subgroup(s, k)
    if not sub.cyclic or sub.order <= 2 or sub.order % 2:
        return None
    return sub.order + 1
