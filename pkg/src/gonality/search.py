"""Principal-ideal searches inside ideals of Z[zeta_m].

The ideal's HNF basis is LLL-reduced for the trace form
``<a, b> = Tr(a * conj(b))`` in exact rational arithmetic.  The search region
is then

    { sum c_j b_j : c in [-radius, radius]^n, T2 <= bound }

where ``bound`` is ``slack`` times the largest integer with
``(bound / n)^n <= (N(I) * K0)^2`` and ``K0`` is the smallest index among the
reduced basis vectors (which also seed the candidate set).  By AM-GM every
element of the region has index at most ``K0 * slack^(n/2)``.  The region is a
fixed set, so the minimum found (under the tie-break: norm, then coefficient
L1 size, then lexicographic order of the sign-normalised power-basis vector)
does not depend on traversal order or on how the top coordinate is split
across workers.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .cyclotomic import (
    CyclotomicElement,
    CyclotomicIdeal,
    embedding_roots,
    ideal_norm,
    min_cofactor_norm,
    norm,
    t2,
    trace_gram,
)
from .errors import BudgetExhausted
from .lattice import Matrix, matmul

log = logging.getLogger(__name__)

if os.environ.get("GONALITY_PURE_PYTHON"):
    from ._enum_py import enumerate_box

    KERNEL = "python"
else:
    try:
        from ._enum_c import enumerate_box  # type: ignore[import-not-found]

        KERNEL = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from ._enum_py import enumerate_box

        KERNEL = "python"

DEFAULT_BUDGET = 10**7
DEFAULT_RADIUS = 2


@dataclass(frozen=True)
class SearchOutcome:
    best_index: int
    witness: Optional[CyclotomicElement]
    certified: bool
    lower_bound: int
    nodes_visited: int
    region_bound: int = 0
    note: str = ""


# -- exact LLL on a Gram matrix -------------------------------------------------


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_gram(basis: Matrix, gram: Matrix, delta: Fraction = Fraction(99, 100)):
    """LLL-reduce ``basis`` (rows) w.r.t. the Gram matrix ``gram`` of those rows.

    Exact rational arithmetic throughout.  Returns ``(basis, gram, mu, bstar)``
    for the reduced basis, with ``mu``/``bstar`` its Gram-Schmidt data.
    """
    n = len(basis)
    b = [list(r) for r in basis]
    g = [[Fraction(x) for x in row] for row in gram]
    mu = [[Fraction(0)] * n for _ in range(n)]
    bs = [Fraction(0)] * n
    if n == 0:
        return b, g, mu, bs
    bs[0] = g[0][0]
    k, kmax = 1, 0

    def red(k, l):
        if abs(mu[k][l]) <= Fraction(1, 2):
            return
        q = _round_half_up(mu[k][l])
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        gkk = g[k][k] - 2 * q * g[k][l] + q * q * g[l][l]
        for i in range(n):
            if i != k:
                g[k][i] -= q * g[l][i]
                g[i][k] = g[k][i]
        g[k][k] = gkk
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m_ = mu[k][k - 1]
        bn = bs[k] + m_ * m_ * bs[k - 1]
        mu[k][k - 1] = m_ * bs[k - 1] / bn
        bs[k] = bs[k - 1] * bs[k] / bn
        bs[k - 1] = bn
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m_ * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                mu[k][j] = (g[k][j] - sum(mu[j][i] * mu[k][i] * bs[i] for i in range(j))) / bs[j]
            bs[k] = g[k][k] - sum(mu[k][j] ** 2 * bs[j] for j in range(k))
            if bs[k] == 0:
                raise ValueError("basis vectors are linearly dependent")
        red(k, k - 1)
        if bs[k] < (delta - mu[k][k - 1] ** 2) * bs[k - 1]:
            swap(k)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return b, [[int(x) for x in row] for row in g], mu, bs


def reduced_basis(ideal: CyclotomicIdeal):
    """LLL-reduced power-basis rows of ``ideal`` plus their exact GSO data."""
    basis = [list(r) for r in ideal.lattice.basis]
    g0 = trace_gram(ideal.m)
    gram = matmul(matmul(basis, g0), [list(c) for c in zip(*basis)])
    return lll_gram(basis, gram)


# -- search -------------------------------------------------------------------


def _canonical(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    for x in coeffs:
        if x:
            return coeffs if x > 0 else tuple(-y for y in coeffs)
    return coeffs


def _region_bound(n: int, target_norm: int) -> int:
    """Largest integer ``B`` with ``B^n <= n^n * target_norm^2``."""
    rhs = n**n * target_norm**2
    guess = int(n * target_norm ** (2.0 / n)) + 2
    lo, hi = 0, max(guess, 1)
    while hi**n <= rhs:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= rhs:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _rank_key(nrm: int, coeffs: tuple[int, ...]):
    # equal norms: fewer/smaller coefficients first, then lexicographic
    return nrm, sum(abs(x) for x in coeffs), coeffs


@dataclass
class _Best:
    norm: Optional[int] = None
    coeffs: Optional[tuple[int, ...]] = None

    def offer(self, nrm: int, coeffs: tuple[int, ...]) -> None:
        if nrm == 0:
            return
        if self.norm is None or _rank_key(nrm, coeffs) < _rank_key(self.norm, self.coeffs):
            self.norm = nrm
            self.coeffs = coeffs


@dataclass
class _Problem:
    m: int
    basis: Matrix
    gram: Matrix
    mu: list
    bstar: list
    bound: int
    radius: int
    emb_re: list
    emb_im: list
    squared: bool  # approximate norm is N^2 (real embedding) rather than N


def _leaf_handler(prob: _Problem, best: _Best):
    n = len(prob.basis)

    def thr_of(nrm):
        v = float(nrm) ** 2 if prob.squared else float(nrm)
        return v * (1.0 + 1e-6) + 0.5

    def on_leaf(c):
        # exact region membership, then exact norm
        q = sum(ci * sum(gij * cj for gij, cj in zip(row, c)) for ci, row in zip(c, prob.gram) if ci)
        if q <= prob.bound:
            vec = [0] * n
            for ci, row in zip(c, prob.basis):
                if ci:
                    vec = [v + ci * r for v, r in zip(vec, row)]
            coeffs = _canonical(tuple(vec))
            nrm = norm(CyclotomicElement(prob.m, coeffs))
            best.offer(nrm, coeffs)
        return thr_of(best.norm)

    return on_leaf, thr_of(best.norm)


def _run_slice(args):
    prob, lo, hi, budget, init_norm, init_coeffs = args
    best = _Best(init_norm, init_coeffs)
    on_leaf, thr = _leaf_handler(prob, best)
    nodes, exhausted = enumerate_box(
        prob.mu, prob.bstar, float(prob.bound), prob.radius, prob.emb_re, prob.emb_im,
        lo, hi, budget, on_leaf, thr,
    )
    return nodes, exhausted, best.norm, best.coeffs


def _prepare(ideal: CyclotomicIdeal, radius: int):
    m = ideal.m
    basis, gram, mu, bstar = reduced_basis(ideal)
    roots = embedding_roots(m)
    emb_re, emb_im = [], []
    for row in basis:
        vals = [sum(c * r**k for k, c in enumerate(row)) for r in roots]
        emb_re.append([v.real for v in vals])
        emb_im.append([v.imag for v in vals])
    n = len(basis)
    mu_f = [[float(mu[i][j]) if j < i else 0.0 for j in range(n)] for i in range(n)]
    return basis, gram, mu_f, [float(x) for x in bstar], emb_re, emb_im


def min_principal_index(
    ideal: CyclotomicIdeal,
    radius: int = DEFAULT_RADIUS,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    slack: Fraction | int = 1,
    seeds: Sequence[CyclotomicElement] = (),
) -> SearchOutcome:
    """Smallest ``|N(a)| / N(I)`` over nonzero ``a`` in the search region of ``ideal``.

    ``seeds`` are extra elements of the ideal that compete for the minimum
    (for instance a binomial ``zeta - t``); they do not change the region.
    """
    if radius < 1 or budget < 1:
        raise ValueError("radius and budget must be positive")
    slack = Fraction(slack)
    if slack < 1:
        raise ValueError("slack must be >= 1")
    m = ideal.m
    n = ideal.degree
    n_ideal = ideal_norm(ideal)
    basis, gram, mu, bstar, emb_re, emb_im = _prepare(ideal, radius)

    # Seed with the reduced basis vectors themselves.
    best = _Best()
    for row in basis:
        coeffs = _canonical(tuple(row))
        best.offer(norm(CyclotomicElement(m, coeffs)), coeffs)
    k0 = best.norm // n_ideal
    bound = _region_bound(n, best.norm) * slack
    bound = bound.numerator // bound.denominator
    for e in seeds:
        if not ideal.contains(e):
            raise ValueError(f"seed {e} is not in the ideal")
        best.offer(norm(e), _canonical(e.coeffs))
    prob = _Problem(m, basis, gram, mu, bstar, bound, radius, emb_re, emb_im, squared=m <= 2)

    slices = _top_slices(radius, workers)
    jobs = [(prob, lo, hi, budget, best.norm, best.coeffs) for lo, hi in slices]
    if len(jobs) == 1:
        results = [_run_slice(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(_run_slice, jobs))

    total = 0
    exhausted = False
    for nodes, ex, nrm, coeffs in results:
        total += nodes
        exhausted = exhausted or ex
        best.offer(nrm, coeffs)
    exhausted = exhausted or total > budget

    best_index = best.norm // n_ideal
    assert best.norm == best_index * n_ideal
    witness = CyclotomicElement(m, best.coeffs)
    assert ideal.contains(witness)
    lower = 1 if best_index == 1 else min(min_cofactor_norm(m), best_index)
    certified = best_index == 1 or best_index == lower
    note = "index-1 witness is a generator" if best_index == 1 else (
        "minimum over proper principal sub-ideals attained" if certified else
        "best index found within the search region; not proven minimal"
    )
    log.debug("search m=%d K0=%d bound=%d nodes=%d best=%d", m, k0, bound, total, best_index)
    outcome = SearchOutcome(best_index, witness, certified, lower, total, bound, note)
    if exhausted:
        raise BudgetExhausted(replace(outcome, certified=best_index == 1))
    return outcome


def principality_search(
    ideal: CyclotomicIdeal,
    radius: int = DEFAULT_RADIUS,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    slack: Fraction | int = 1,
) -> SearchOutcome:
    """Look for a generator (index-1 element) of ``ideal`` in the search region.

    Success certifies principality.  Failure is evidence only: ``certified``
    is False and the witness slot is empty.
    """
    try:
        out = min_principal_index(ideal, radius, budget, workers, slack)
    except BudgetExhausted as exc:
        raise BudgetExhausted(_as_principality(exc.partial)) from None
    return _as_principality(out)


def _as_principality(out: SearchOutcome) -> SearchOutcome:
    if out.best_index == 1:
        return replace(out, certified=True, lower_bound=1)
    return replace(
        out,
        witness=None,
        certified=False,
        note="no generator in the search region; absence within the bound is not a proof",
    )


def _top_slices(radius: int, workers: int) -> list[tuple[int, int]]:
    # the top coordinate is nonnegative by sign symmetry
    values = list(range(0, radius + 1))
    workers = max(1, min(workers, len(values)))
    size = -(-len(values) // workers)
    return [(values[i], values[min(i + size, len(values)) - 1]) for i in range(0, len(values), size)]


def element_index(ideal: CyclotomicIdeal, a: CyclotomicElement) -> int:
    """``|I : (a)|`` for ``a`` in ``I``."""
    return norm(a) // ideal_norm(ideal)


__all__ = [
    "KERNEL",
    "SearchOutcome",
    "element_index",
    "lll_gram",
    "min_principal_index",
    "principality_search",
    "reduced_basis",
    "t2",
]
