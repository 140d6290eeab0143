"""Finite abelian groups given by invariant factors."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import prod

from .ntheory import factorize


@dataclass(frozen=True)
class AbelianGroupSpec:
    """``Z/k1 + Z/k2 + ...`` with its elementary-divisor multiset ``omega``."""

    invariant_factors: tuple[int, ...]
    omega: tuple[int, ...] = field(init=False)
    order: int = field(init=False)

    def __post_init__(self):
        if not self.invariant_factors:
            raise ValueError("at least one invariant factor is required")
        if any(k < 2 for k in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")
        parts = []
        for k in self.invariant_factors:
            parts.extend(p**e for p, e in factorize(k))
        object.__setattr__(self, "omega", tuple(sorted(parts)))
        object.__setattr__(self, "order", prod(self.invariant_factors))

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.omega).items()))

    def elements(self):
        """All elements as coordinate tuples, in lexicographic order."""
        return itertools.product(*(range(k) for k in self.invariant_factors))

    def __str__(self) -> str:
        return " + ".join(f"Z/{k}" for k in self.invariant_factors)


def elementary_divisors(factors) -> AbelianGroupSpec:
    return AbelianGroupSpec(tuple(int(k) for k in factors))


def is_power_of_two(s: int) -> bool:
    return s > 0 and s & (s - 1) == 0


def omega_prime(a: AbelianGroupSpec) -> tuple[int, ...]:
    """Elementary divisors with the powers of 2 removed (multiset, sorted)."""
    return tuple(s for s in a.omega if not is_power_of_two(s))
