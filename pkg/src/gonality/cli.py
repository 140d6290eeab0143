"""Command-line front end: ``gonality bound --group "Z/9 + Z/3" --field Q``.

Exit status: 0 success, 1 parse or other error, 2 hypothesis violation,
3 node budget exhausted (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import enum
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import engine
from .cyclotomic import (
    CyclotomicElement,
    conductor,
    ideal_from_generators,
    ideal_norm,
    norm,
    phi_value,
)
from .errors import BudgetExhausted, GonalityError, HypothesisViolation, ParseError
from .galois import FieldSpec
from .groups import AbelianGroupSpec, omega_prime
from .ntheory import RootCriterion, factorize, least_primitive_root, primitive_root_bound_scan
from .search import DEFAULT_BUDGET, DEFAULT_RADIUS, SearchOutcome, min_principal_index

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3

NON_PROOF_NOTE = (
    "no principal generator was found in the search region; this is evidence "
    "of non-principality, not a proof"
)

CONVENTIONS = {
    "t_selection": "among |t| <= l whose residue generates the Galois group, least |Phi_m(t)|; ties to smaller |t|, then positive",
    "witness_tie_break": "least norm, then least coefficient L1 size, then lexicographic order with first nonzero coefficient positive",
}

# Map of report fields to the mathematics they carry, printed by --cite.
FIELD_MAP = {
    "omega": "prime-power elementary divisors of A, with repetition",
    "omega_prime": "elementary divisors that are not powers of 2; only these contribute",
    "summands[].m_s": "degree [K(zeta_s):K], the order of the Galois group inside (Z/s)^*",
    "summands[].ideal": "obstruction ideal (l, zeta_m - t) of Z[zeta_m], a prime of norm l",
    "summands[].candidate_index": "index of the principal ideal (zeta_m - t) in the obstruction ideal, |Phi_m(t)|/l",
    "summands[].search.best_index": "smallest index of a principal sub-ideal found in the search region",
    "summands[].search.lower_bound": "least norm of a proper integral ideal of Z[zeta_m] (residue-degree bound)",
    "summands[].power_principal": "whether the n_s-th power of the obstruction ideal has a generator in the region",
    "summands[].conditional_lower": "lower bound m_s + 1, valid only under the extra function-field assumption",
    "product_bound": "product over summands of best_index^n_s: an upper bound for the gonality",
    "factorial_bound": "(|A| - 1)!, the bound from the symmetric-group embedding",
    "rationality": "rational by criterion when every obstruction ideal (or its n_s-th power) is principal",
    "formulas": "closed-form growth and effective bounds with their validity caveats",
}


# -- parsing --------------------------------------------------------------------

_TERM = re.compile(r"\s*(?:Z\s*/\s*)?(\d+)\s*")


def parse_group(spec: str) -> AbelianGroupSpec:
    """Parse ``"Z/9 + Z/3"`` (or ``"9+3"``) into invariant factors, in order."""
    factors = []
    pos = 0
    for piece in spec.split("+"):
        m = _TERM.fullmatch(piece)
        if m is None:
            raise ParseError(f"expected 'Z/k' or an integer, got {piece.strip()!r}", pos)
        k = int(m.group(1))
        if k < 2:
            raise ParseError(f"invariant factors must be >= 2, got {k}", pos + m.start(1))
        factors.append(k)
        pos += len(piece) + 1
    return AbelianGroupSpec(tuple(factors))


_FIELD = re.compile(r"Q(?:\(\s*zeta_(\d+)\s*\))?")


def parse_field(spec: str) -> FieldSpec:
    """``"Q"`` or ``"Q(zeta_n)"`` with ``n >= 1``."""
    text = spec.strip()
    m = _FIELD.fullmatch(text)
    if m is None:
        raise ParseError(f"unsupported base field {spec!r}; expected 'Q' or 'Q(zeta_n)'", 0)
    n = int(m.group(1)) if m.group(1) else 1
    if n < 1:
        raise ParseError("zeta_n needs n >= 1", m.start(1))
    return FieldSpec(n)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _slack(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("slack must be >= 1")
    return v


# -- serialisation -----------------------------------------------------------------


def plain(x: Any) -> Any:
    """JSON-ready form: integers and rationals become decimal strings."""
    if isinstance(x, enum.Enum):
        return x.value
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return str(x)


def dumps(report: dict) -> str:
    return json.dumps(plain(report), sort_keys=True, indent=2, ensure_ascii=True)


def search_dict(out: Optional[SearchOutcome]) -> Optional[dict]:
    if out is None:
        return None
    witness = out.witness
    return {
        "best_index": out.best_index,
        "witness": None if witness is None else str(witness),
        "witness_coefficients": None if witness is None else list(witness.coeffs),
        "witness_norm": None if witness is None else norm(witness),
        "certified": out.certified,
        "lower_bound": out.lower_bound,
        "nodes_visited": out.nodes_visited,
        "region_bound": out.region_bound,
        "note": out.note,
    }


def summand_dict(rep: engine.SummandReport) -> dict:
    d = {
        "s": rep.s,
        "l": rep.l,
        "u": rep.u,
        "m_s": rep.m_s,
        "n_s": rep.n_s,
        "t": rep.t,
        "tag": rep.tag or None,
        "ideal": None,
        "norm_check": rep.norm_check,
        "candidate_index": rep.candidate_index,
        "search": search_dict(rep.search),
        "principal": rep.principal,
        "power_principal": rep.power_principal,
        "conditional_lower": rep.conditional_lower,
        "factor": rep.factor,
        "complete": rep.complete,
    }
    if rep.frak_a is not None:
        d["ideal"] = {
            "generators": [str(rep.l), str(CyclotomicElement.zeta_minus(rep.m_s, rep.t))],
            "ring": f"Z[zeta_{rep.m_s}]",
            "norm": ideal_norm(rep.frak_a),
        }
    if rep.conditional_lower is not None:
        d["conditional_lower_note"] = "conditional: assumes an extra hypothesis that is not checked here"
    if rep.principal is engine.Principal.NO_WITHIN_BOUND:
        d["evidence"] = NON_PROOF_NOTE
    if rep.search is not None and rep.m_s > 2:
        q = factorize(rep.search.lower_bound).primes()[0] if rep.search.lower_bound > 1 else None
        if q is not None and conductor(rep.m_s) % q == 0:
            d["lower_bound_note"] = (
                f"the least proper ideal norm {rep.search.lower_bound} comes from the ramified prime {q}, "
                f"so proper sub-ideal indices below {rep.l} are not excluded by residue degrees"
            )
    return d


def report_dict(rep: engine.GonalityReport) -> dict:
    summands = [summand_dict(s) for s in rep.summands]
    certified = rep.complete and all(
        s.search is None or s.search.certified or s.tag == "ring_is_Z" for s in rep.summands
    )
    notes = []
    if any(s.principal is engine.Principal.NO_WITHIN_BOUND for s in rep.summands):
        notes.append(NON_PROOF_NOTE)
    if not rep.complete:
        notes.append("node budget exhausted; the report is partial")
    return {
        "command": "bound",
        "group": str(rep.group),
        "invariant_factors": list(rep.group.invariant_factors),
        "omega": list(rep.group.omega),
        "omega_prime": list(omega_prime(rep.group)),
        "field": str(rep.field),
        "params": {
            "radius": rep.params.radius,
            "budget": rep.params.budget,
            "workers": rep.params.workers,
            "slack": rep.params.slack,
        },
        "summands": summands,
        "product_bound": rep.product_bound,
        "factorial_bound": rep.factorial_bound,
        "reported_bound": rep.reported_bound,
        "rationality": rep.rationality,
        "certified": certified,
        "complete": rep.complete,
        "formulas": rep.formulas,
        "class_number_source": rep.class_number_source,
        "notes": notes,
        "conventions": CONVENTIONS,
    }


def render_text(report: dict) -> str:
    """Indented ``key: value`` rendering of the same data as the JSON report."""
    lines: list[str] = []

    def walk(x, indent):
        pad = "  " * indent
        if isinstance(x, dict):
            for k in sorted(x):
                v = x[k]
                if _nested(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        else:
            for i, v in enumerate(x):
                if _nested(v):
                    lines.append(f"{pad}- [{i}]")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(v)}")

    walk(plain(report), 0)
    return "\n".join(lines) + "\n"


def _nested(v) -> bool:
    if isinstance(v, dict):
        return bool(v)
    return isinstance(v, list) and any(isinstance(e, (dict, list)) for e in v)


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


# -- commands -----------------------------------------------------------------------


def _class_numbers(args):
    if not args.class_numbers:
        return None, None
    path = Path(args.class_numbers)
    return engine.parse_class_numbers(path.read_text()), str(path)


def cmd_bound(args) -> dict:
    group = parse_group(args.group)
    field = parse_field(args.field)
    table, source = _class_numbers(args)
    rep = engine.gonality_upper_bound(
        group, field, args.radius, args.budget, args.workers, args.slack, table, source
    )
    return report_dict(rep)


def cmd_summand(args) -> dict:
    field = parse_field(args.field)
    rep = engine.summand_bound(args.s, field, args.radius, args.budget, args.multiplicity, args.workers, args.slack)
    return {"command": "summand", "field": str(field), "summand": summand_dict(rep), "conventions": CONVENTIONS}


def cmd_primroot(args) -> dict:
    res = least_primitive_root(args.p, args.criterion)
    return {
        "command": "primroot",
        "prime": res.prime,
        "root": res.root,
        "criterion": res.criterion,
        "within_half_sqrt": 4 * res.root * res.root <= res.prime,
    }


def cmd_ideal(args) -> dict:
    m, l, t = args.m, args.l, args.t
    ideal = ideal_from_generators([CyclotomicElement.integer(m, l), CyclotomicElement.zeta_minus(m, t)])
    out = {
        "command": "ideal",
        "ring": f"Z[zeta_{m}]",
        "generators": [str(l), str(CyclotomicElement.zeta_minus(m, t))],
        "norm": ideal_norm(ideal),
        "phi_value": phi_value(m, t),
        "hnf": [list(r) for r in ideal.lattice.basis],
        "search": None,
    }
    if args.search:
        out["search"] = search_dict(
            min_principal_index(ideal, args.radius, args.budget, args.workers, args.slack,
                                seeds=[CyclotomicElement.zeta_minus(m, t)] if phi_value(m, t) else ())
        )
    return out


def cmd_fischer(args) -> dict:
    group = parse_group(args.group)
    kernel, index = engine.fischer_generators(group, args.cap)
    return {
        "command": "fischer",
        "group": str(group),
        "elements": [list(g) for g in group.elements()],
        "exponent_basis": [list(r) for r in kernel.basis],
        "index": index,
        "rows_map_to_identity": all(engine.maps_to_identity(group, r) for r in kernel.basis),
    }


def cmd_scan(args) -> dict:
    rows = []
    for p, g, ok in primitive_root_bound_scan(args.limit):
        row = {"p": p, "least_abs_primitive_root": g, "within_half_sqrt": ok}
        if args.summands and p >= 3:
            rep = engine.summand_bound(p, FieldSpec(1), args.radius, args.budget, 1, args.workers, args.slack)
            row["best_index"] = rep.factor
            row["principal"] = rep.principal
        rows.append(row)
    return {"command": "scan", "limit": args.limit, "rows": rows}


COMMANDS = {
    "bound": cmd_bound,
    "summand": cmd_summand,
    "primroot": cmd_primroot,
    "ideal": cmd_ideal,
    "fischer": cmd_fischer,
    "scan": cmd_scan,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    env_budget = os.environ.get("GONALITY_BUDGET")
    default_budget = int(env_budget) if env_budget else DEFAULT_BUDGET

    common = _Parser(add_help=False)
    common.add_argument("--field", default="Q", help='base field, "Q" or "Q(zeta_n)"')
    common.add_argument("--radius", type=_positive_int, default=DEFAULT_RADIUS)
    common.add_argument("--budget", type=_positive_int, default=default_budget,
                        help="enumeration node budget (env GONALITY_BUDGET)")
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--slack", type=_slack, default=Fraction(1),
                        help="widen the search region by this factor on the trace form")
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("--cite", action="store_true", help="append the report-field glossary")

    parser = _Parser(prog="gonality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[common], help="gonality upper bound for a finite abelian group")
    p.add_argument("--group", required=True)
    p.add_argument("--class-numbers", help="two-column 'n h_n' table")

    p = sub.add_parser("summand", parents=[common], help="one prime-power summand")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--multiplicity", type=_positive_int, default=1)

    p = sub.add_parser("primroot", parents=[common], help="least primitive root of an odd prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--criterion", choices=[c.value for c in RootCriterion], default="least_absolute")

    p = sub.add_parser("ideal", parents=[common], help="the ideal (l, zeta_m - t)")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--search", action="store_true", help="also search for principal sub-ideals")

    p = sub.add_parser("fischer", parents=[common], help="multiplicative generators of the invariant field")
    p.add_argument("--group", required=True)
    p.add_argument("--cap", type=_positive_int, default=engine.FISCHER_CAP)

    p = sub.add_parser("scan", parents=[common], help="least primitive roots over odd primes")
    p.add_argument("--limit", type=_positive_int, required=True)
    p.add_argument("--summands", action="store_true", help="also run the Z/p summand search")
    return parser


def _emit(report: dict, args, stream) -> None:
    report = dict(report, schema_version=SCHEMA_VERSION)
    if args.cite:
        report["field_map"] = FIELD_MAP
    stream.write(dumps(report) + "\n" if args.output == "json" else render_text(report))


def _partial(exc: BudgetExhausted) -> dict:
    part = exc.partial
    if isinstance(part, engine.GonalityReport):
        return dict(report_dict(part), certified=False)
    if isinstance(part, engine.SummandReport):
        return {"command": "summand", "summand": summand_dict(part), "certified": False}
    return {"search": search_dict(part), "certified": False}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        report = COMMANDS[args.command](args)
    except HypothesisViolation as exc:
        print("hypothesis violated:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        if args is not None and args.output == "json":
            _emit({"command": args.command, "violations": [str(v) for v in exc.violations]}, args, sys.stdout)
        return EXIT_HYPOTHESIS
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(_partial(exc), args, sys.stdout)
        return EXIT_BUDGET
    except (GonalityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(report, args, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
