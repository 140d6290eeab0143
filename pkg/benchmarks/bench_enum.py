"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_enum.py --m 46 --l 47 --t -2 --slack 1 2 3

For each slack the region is traversed twice per kernel: once with leaf
callbacks disabled (raw traversal), once through ``min_principal_index``
(traversal plus exact norms at the leaves).  Node counts must agree.
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from gonality import _enum_py, search
from gonality.cyclotomic import CyclotomicElement, ideal_from_generators

try:
    from gonality import _enum_c
except ImportError:  # pragma: no cover
    _enum_c = None


def _timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def traverse(kernel, ideal, radius, slack, budget):
    """Walk the whole region; a negative threshold keeps leaves out of Python."""
    basis, _, mu, bstar, emb_re, emb_im = search._prepare(ideal, radius)
    n = len(basis)
    bound = search._region_bound(n, search.norm(CyclotomicElement(ideal.m, tuple(basis[0])))) * Fraction(slack)
    bound = bound.numerator // bound.denominator
    return kernel.enumerate_box(mu, bstar, float(bound), radius, emb_re, emb_im, 0, radius, budget,
                                lambda c: -1.0, -1.0)


def full_search(kernel, ideal, radius, slack, budget):
    saved = search.enumerate_box
    search.enumerate_box = kernel.enumerate_box
    try:
        return search.min_principal_index(ideal, radius, budget, slack=Fraction(slack))
    finally:
        search.enumerate_box = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=46)
    ap.add_argument("--l", type=int, default=47)
    ap.add_argument("--t", type=int, default=-2)
    ap.add_argument("--radius", type=int, default=2)
    ap.add_argument("--slack", type=str, nargs="+", default=["1", "2", "3"])
    ap.add_argument("--budget", type=int, default=10**8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    ideal = ideal_from_generators(
        [CyclotomicElement.integer(args.m, args.l), CyclotomicElement.zeta_minus(args.m, args.t)]
    )
    kernels = [("python", _enum_py)] + ([("cython", _enum_c)] if _enum_c else [])
    print(f"ideal (l={args.l}, zeta_{args.m} - ({args.t})), radius {args.radius}")
    print(f"{'slack':>6} {'kernel':>7} {'nodes':>10} {'traverse s':>11} {'search s':>9} {'best':>6}")
    for slack in args.slack:
        rows = []
        for name, kernel in kernels:
            t_trav, (nodes, _) = _timed(lambda: traverse(kernel, ideal, args.radius, slack, args.budget), args.repeat)
            t_full, out = _timed(lambda: full_search(kernel, ideal, args.radius, slack, args.budget), args.repeat)
            rows.append((name, nodes, t_trav, t_full, out))
            print(f"{slack:>6} {name:>7} {nodes:>10} {t_trav:>11.4f} {t_full:>9.4f} {out.best_index:>6}")
        if len(rows) == 2:
            (_, n1, a1, b1, o1), (_, n2, a2, b2, o2) = rows
            assert n1 == n2 and o1 == o2, "kernels disagree"
            print(f"{'':>6} speedup traverse x{a1 / a2:.1f}, search x{b1 / b2:.1f}")


if __name__ == "__main__":
    main()
