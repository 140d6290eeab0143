"""Assemble per-summand obstruction ideals into gonality upper bounds.

For each odd prime power ``s = l^u`` among the elementary divisors, the
obstruction ideal ``(l, zeta_m - t)`` of ``Z[zeta_m]`` (``m = [K(zeta_s):K]``)
has norm ``l``.  The smallest index of a principal sub-ideal, raised to the
multiplicity of ``s``, multiplies into the bound; ``(|A| - 1)!`` is always
available as a fallback.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Mapping, Optional

from .cyclotomic import (
    CyclotomicElement,
    CyclotomicIdeal,
    ideal_from_generators,
    ideal_norm,
    ideal_pow,
    phi_value,
)
from .errors import (
    BudgetExhausted,
    CapExceeded,
    HypothesisViolation,
    MissingClassNumber,
    NormCheckFailed,
)
from .galois import (
    FieldSpec,
    check_hypotheses,
    conditional_lower_bound,
    galois_subgroup,
    select_t,
)
from .groups import AbelianGroupSpec, elementary_divisors, is_power_of_two, omega_prime
from .lattice import Lattice, kernel_mod
from .ntheory import euler_phi, factorize, prime_power_base
from .search import (
    DEFAULT_BUDGET,
    DEFAULT_RADIUS,
    SearchOutcome,
    min_principal_index,
    principality_search,
)

FISCHER_CAP = 64
DECIMAL_DIGITS = 30


class Principal(str, enum.Enum):
    YES = "yes"
    NO_WITHIN_BOUND = "no_within_bound"


class Rationality(str, enum.Enum):
    RATIONAL_BY_CRITERION = "rational_by_criterion"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchParams:
    radius: int = DEFAULT_RADIUS
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    slack: Fraction = Fraction(1)


@dataclass
class SummandReport:
    s: int
    l: int
    u: int
    m_s: int
    n_s: int = 1
    t: Optional[int] = None
    frak_a: Optional[CyclotomicIdeal] = None
    norm_check: bool = False
    candidate_index: Optional[int] = None
    search: Optional[SearchOutcome] = None
    principal: Principal = Principal.YES
    power_principal: Optional[bool] = None
    conditional_lower: Optional[int] = None
    tag: str = ""
    complete: bool = True

    @property
    def factor(self) -> int:
        """Contribution to the product bound, multiplicity included."""
        if self.tag in ("zeta_s_in_K", "ring_is_Z", "power_of_two") or self.search is None:
            return 1
        return self.search.best_index**self.n_s

    @property
    def principal_for_criterion(self) -> bool:
        return self.principal is Principal.YES or bool(self.power_principal)


@dataclass
class GonalityReport:
    group: AbelianGroupSpec
    field: FieldSpec
    summands: list[SummandReport]
    product_bound: int
    factorial_bound: int
    reported_bound: int
    rationality: Rationality
    formulas: dict = field(default_factory=dict)
    params: SearchParams = field(default_factory=SearchParams)
    class_number_source: Optional[str] = None
    complete: bool = True


# -- summands -------------------------------------------------------------------


def build_obstruction_ideal(s: int, k: FieldSpec) -> SummandReport:
    """Obstruction ideal ``(l, zeta_m - t)`` for the odd prime power ``s``, norm-checked."""
    l, u = prime_power_base(s)
    if l == 2:
        raise ValueError("powers of 2 carry no obstruction ideal")
    sub = galois_subgroup(s, k)
    if not sub.cyclic:
        raise HypothesisViolation([f"s = {s}: Galois group is {sub.structure()}"])
    m = sub.order
    rep = SummandReport(s=s, l=l, u=u, m_s=m)
    if m == 1:
        rep.tag = "zeta_s_in_K"
        return rep
    t, _ = select_t(l, k, window=l, m_target=m)
    ideal = ideal_from_generators([CyclotomicElement.integer(m, l), CyclotomicElement.zeta_minus(m, t)])
    if ideal_norm(ideal) != l:
        raise NormCheckFailed(f"N((l, zeta_{m} - {t})) = {ideal_norm(ideal)}, expected {l}")
    rep.t = t
    rep.frak_a = ideal
    rep.norm_check = True
    if m == 2:
        rep.tag = "ring_is_Z"
    return rep


def summand_bound(
    s: int,
    k: FieldSpec,
    radius: int = DEFAULT_RADIUS,
    budget: int = DEFAULT_BUDGET,
    n_s: int = 1,
    workers: int = 1,
    slack: Fraction | int = 1,
) -> SummandReport:
    """Obstruction data plus the principal-sub-ideal search for one prime power.

    On budget exhaustion raises :class:`BudgetExhausted` whose ``partial`` is
    the incomplete :class:`SummandReport`.
    """
    rep = build_obstruction_ideal(s, k)
    rep.n_s = n_s
    if rep.frak_a is None:
        return rep
    m, l, t = rep.m_s, rep.l, rep.t
    value = abs(phi_value(m, t))
    assert value % l == 0
    rep.candidate_index = value // l
    binomial = CyclotomicElement.zeta_minus(m, t)
    try:
        rep.search = min_principal_index(rep.frak_a, radius, budget, workers, slack, seeds=[binomial])
    except BudgetExhausted as exc:
        rep.search = exc.partial
        rep.principal = Principal.YES if exc.partial.best_index == 1 else Principal.NO_WITHIN_BOUND
        rep.complete = False
        raise BudgetExhausted(rep) from None
    rep.principal = Principal.YES if rep.search.best_index == 1 else Principal.NO_WITHIN_BOUND
    if n_s > 1:
        if rep.principal is Principal.YES:
            rep.power_principal = True
        else:
            try:
                power = principality_search(ideal_pow(rep.frak_a, n_s), radius, budget, workers, slack)
            except BudgetExhausted:
                rep.complete = False
                raise BudgetExhausted(rep) from None
            rep.power_principal = power.best_index == 1
    if rep.u == 1:
        rep.conditional_lower = conditional_lower_bound(s, k)
    return rep


def gonality_upper_bound(
    a: AbelianGroupSpec,
    k: FieldSpec,
    radius: int = DEFAULT_RADIUS,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    slack: Fraction | int = 1,
    class_numbers: Optional[Mapping[int, int]] = None,
    class_number_source: Optional[str] = None,
) -> GonalityReport:
    """Upper bound for the gonality of the Noether quotient of ``a`` over ``k``.

    Raises :class:`HypothesisViolation` when some Galois group is not cyclic,
    and :class:`BudgetExhausted` (with the partial report) when a search runs
    out of nodes.
    """
    violations = check_hypotheses(a, k)
    if violations:
        raise HypothesisViolation(violations)
    params = SearchParams(radius, budget, workers, Fraction(slack))
    summands: list[SummandReport] = []
    exhausted = False
    for s, n_s in a.multiplicities().items():
        if is_power_of_two(s):
            continue
        try:
            rep = summand_bound(s, k, radius, budget, n_s, workers, slack)
        except BudgetExhausted as exc:
            rep = exc.partial
            exhausted = True
        summands.append(rep)
        if exhausted:
            break
    formulas = evaluate_formulas(a, k, class_numbers)
    report = _assemble(a, k, summands, formulas, params, class_number_source)
    if exhausted:
        report.complete = False
        raise BudgetExhausted(report)
    return report


def _assemble(a, k, summands, formulas, params, source) -> GonalityReport:
    product = 1
    for rep in summands:
        product *= rep.factor
    factorial = math.factorial(a.order - 1)
    rational = all(rep.principal_for_criterion for rep in summands)
    return GonalityReport(
        group=a,
        field=k,
        summands=summands,
        product_bound=product,
        factorial_bound=factorial,
        reported_bound=min(product, factorial),
        rationality=Rationality.RATIONAL_BY_CRITERION if rational else Rationality.UNKNOWN,
        formulas=formulas,
        params=params,
        class_number_source=source,
    )


# -- closed-form bounds ------------------------------------------------------------


def _decimal(x: Decimal) -> str:
    return format(x, f".{DECIMAL_DIGITS - 1}E")


def phi_phi(s: int) -> int:
    return euler_phi(euler_phi(s))


def growth_exponent(s: int) -> Fraction:
    """Exponent ``e`` in ``|a_s : (zeta - t)| = O(l^e)`` for ``t = O(l^(1/4))``."""
    return Fraction(phi_phi(s) - 4, 4)


def effective_root_bound(s: int) -> Decimal:
    """``(1/l) * (sqrt(l)/2 + 1)^phi(phi(s))`` as a decimal."""
    l, _ = prime_power_base(s)
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS + 10
        base = Decimal(l).sqrt() / 2 + 1
        return base ** phi_phi(s) / l


def class_number_bound(l: int, h: int) -> int:
    """``N(a)^(h-1) = l^(h-1)``: the index of ``a^h`` inside ``a``."""
    if h < 1:
        raise ValueError("class number must be positive")
    return l ** (h - 1)


def l_group_exponent(a: AbelianGroupSpec, l: int) -> Fraction:
    """``1/4 * sum v_i (l^(u_i - 2) (l - 1) phi(l - 1) - 4)`` over the Sylow-``l`` part."""
    total = Fraction(0)
    counts: dict[int, int] = {}
    for s in a.omega:
        p, u = prime_power_base(s)
        if p == l:
            counts[u] = counts.get(u, 0) + 1
    for u, v in counts.items():
        total += v * (Fraction(l) ** (u - 2) * (l - 1) * euler_phi(l - 1) - 4)
    return total / 4


def cyclic_prime_bound(p: int) -> Decimal:
    """``(1/p) * (sqrt(p)/2 + 1)^((p - 1)/2)`` for ``A = Z/p``."""
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS + 10
        return (Decimal(p).sqrt() / 2 + 1) ** ((p - 1) // 2) / p


def evaluate_formulas(
    a: AbelianGroupSpec, k: FieldSpec, class_numbers: Optional[Mapping[int, int]] = None
) -> dict:
    """Closed-form bounds, each ``{"value": str, "kind": ..., "caveat": ...}``.

    Class-number bounds appear only when ``class_numbers`` (keyed by ``n`` for
    ``Q(zeta_n)``) is given; a missing entry then raises MissingClassNumber.
    """
    out: dict[str, dict] = {}
    q_only = "derived for K = Q"
    root_caveat = "uses |t| <= sqrt(l)/2, guaranteed only when log2(l - 1) >= 24"
    distinct = sorted(set(omega_prime(a)))
    for s in distinct:
        l, _ = prime_power_base(s)
        out[f"growth_exponent[s={s}]"] = {
            "value": str(growth_exponent(s)),
            "kind": "exact exponent e in O(l^e)",
            "caveat": "asymptotic; assumes a primitive root t = O(l^(1/4)); " + q_only,
        }
        out[f"effective_root_bound[s={s}]"] = {
            "value": _decimal(effective_root_bound(s)),
            "kind": f"decimal, {DECIMAL_DIGITS} significant digits",
            "caveat": root_caveat + "; " + q_only,
        }
        if class_numbers is not None:
            m = galois_subgroup(s, k).order
            if m not in class_numbers:
                raise MissingClassNumber(f"no class number supplied for Q(zeta_{m}) (needed for s = {s})")
            out[f"class_number_bound[s={s}]"] = {
                "value": str(class_number_bound(l, class_numbers[m])),
                "kind": "exact integer",
                "caveat": f"uses caller-supplied h = {class_numbers[m]} for Q(zeta_{m})",
            }
    for l in sorted({prime_power_base(s)[0] for s in distinct}):
        out[f"l_group_exponent[l={l}]"] = {
            "value": str(l_group_exponent(a, l)),
            "kind": "exact exponent C in O(l^C) for the Sylow-l part",
            "caveat": "asymptotic; " + q_only,
        }
    if len(a.omega) == 1 and factorize(a.order).pairs[0][1] == 1 and a.order > 2:
        p = a.order
        out["cyclic_prime_bound"] = {
            "value": _decimal(cyclic_prime_bound(p)),
            "kind": f"decimal, {DECIMAL_DIGITS} significant digits",
            "caveat": root_caveat + "; K = Q, A = Z/p",
        }
        out["cyclic_prime_exponent"] = {
            "value": str(Fraction(p - 9, 8)),
            "kind": "exact exponent e in O(p^e)",
            "caveat": "asymptotic; K = Q, A = Z/p",
        }
    out["factorial_bound"] = {
        "value": str(math.factorial(a.order - 1)),
        "kind": "exact integer",
        "caveat": "symmetric-group fallback, always valid",
    }
    return out


def parse_class_numbers(text: str) -> dict[int, int]:
    """Read a two-column ``n h_n`` table; ``#`` starts a comment."""
    table: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'n h_n', got {raw!r}")
        try:
            n, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer entry in {raw!r}") from None
        if n < 1 or h < 1:
            raise ValueError(f"line {lineno}: entries must be positive")
        if table.get(n, h) != h:
            raise ValueError(f"line {lineno}: conflicting class number for n = {n}")
        table[n] = h
    return table


# -- invariant generators when enough roots of unity are present -------------------


def fischer_generators(a: AbelianGroupSpec, cap: int = FISCHER_CAP) -> tuple[Lattice, int]:
    """Exponent vectors of multiplicative generators of the invariant field.

    The eigenbasis ``y_g`` of the regular representation is indexed by the
    elements of ``a`` (lexicographic order); ``y_g`` maps to ``g`` under the
    identification of ``a`` with its character group.  The kernel of that map
    is free of rank ``|a|`` and index ``|a|``.
    """
    if a.order > cap:
        raise CapExceeded(f"|A| = {a.order} exceeds the cap {cap}")
    elements = [list(g) for g in a.elements()]
    kernel = kernel_mod(elements, list(a.invariant_factors))
    return kernel, kernel.determinant()


def maps_to_identity(a: AbelianGroupSpec, row) -> bool:
    elements = list(a.elements())
    for j, q in enumerate(a.invariant_factors):
        if sum(c * g[j] for c, g in zip(row, elements)) % q:
            return False
    return True


__all__ = [
    "GonalityReport",
    "Principal",
    "Rationality",
    "SearchParams",
    "SummandReport",
    "build_obstruction_ideal",
    "class_number_bound",
    "conditional_lower_bound",
    "effective_root_bound",
    "elementary_divisors",
    "evaluate_formulas",
    "fischer_generators",
    "gonality_upper_bound",
    "growth_exponent",
    "l_group_exponent",
    "maps_to_identity",
    "omega_prime",
    "parse_class_numbers",
    "summand_bound",
]
