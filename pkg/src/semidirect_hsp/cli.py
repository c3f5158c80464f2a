"""Command-line entry point; every subcommand prints JSON.

Exit codes: 0 success, 1 domain error or solver failure, 2 a structural identity
failed (TheoryViolation), 64 malformed arguments.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .decomposition import decompose, hypothesis_violations
from .errors import DomainError, SolverFailure, TheoryViolation
from .experiments import default_seed, estimate_success, trial_rng
from .modmath import factorize
from .group import GroupSpec, canonical_spec, format_element, parse_element, validate_spec
from .oracle import make_oracle
from .qsim import distribution_records, post_collapse_distribution
from .solver import DEFAULT_K, solve_2pr, solve_general
from .subgroups import (
    ExplicitSet,
    SubgroupDesc,
    closure,
    enumerate_subgroups,
    format_subgroup,
    parse_subgroup,
    subgroup_elements,
    subgroup_lattice_bruteforce,
)

EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def parse_hidden(text: str, spec: GroupSpec) -> SubgroupDesc:
    """Descriptor text, or ``<g1; g2; ...>`` for the subgroup generated by the listed elements."""
    s = text.strip()
    if s.startswith("<") and s.endswith(">"):
        parts = re.findall(r"\(\s*-?\d+\s*,\s*-?\d+\s*\)|[^,;\s]+", s[1:-1])
        return ExplicitSet(closure([parse_element(part, spec) for part in parts], spec))
    if s.startswith("E{") or spec.canonical_params() is not None:
        return parse_subgroup(s, spec)
    raise DomainError("for a non-canonical group give the hidden subgroup as <generators> or E{...}")


def _cmd_enumerate(args) -> dict:
    spec = canonical_spec(args.p, args.r, args.t0)
    descs = enumerate_subgroups(spec)
    out = {
        "group": [spec.N, spec.p, spec.phi11],
        "count": len(descs),
        "subgroups": [
            {
                "desc": format_subgroup(d),
                "order": len(subgroup_elements(d, spec)),
                "generators": [format_element(g) for g in d.generators(spec)],
            }
            for d in descs
        ],
    }
    if args.check:
        brute = subgroup_lattice_bruteforce(spec)
        out["bruteforce_count"] = len(brute)
        out["matches_bruteforce"] = brute == {subgroup_elements(d, spec) for d in descs}
    return out


def _cmd_solve(args) -> dict:
    spec = validate_spec(args.N, args.p, args.phi11)
    hidden = parse_hidden(args.hidden, spec)
    oracle = make_oracle(spec, hidden)
    rng = trial_rng(args.seed, 0)
    if spec.canonical_params() is not None and not args.general:
        result = solve_2pr(spec, oracle, args.k, rng)
        route = "2pr"
    else:
        result = solve_general(spec, oracle, args.k, rng)
        route = "abelian" if spec.is_direct else "general"
    found = result.elements(spec)
    return {
        "group": [spec.N, spec.p, spec.phi11],
        "route": route,
        "hidden": format_subgroup(hidden),
        "generators": [format_element(g) for g in result.generators],
        "descriptor": format_subgroup(result.descriptor) if result.descriptor else None,
        "order": len(found),
        "correct": found == subgroup_elements(hidden, spec),
        "queries": result.queries,
        "rounds": len(result.rounds),
        "k": args.k,
        "seed": args.seed,
    }


def _cmd_estimate(args) -> dict:
    spec = validate_spec(args.N, args.p, args.phi11)
    hidden = parse_hidden(args.hidden, spec)
    report = estimate_success(spec, hidden, args.k, args.trials, args.seed, keyed=args.keyed)
    out = report.to_dict(timing=args.timing)
    out["passes_bound"] = report.passes_bound
    return out


class _Diagnosed(DomainError):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _cmd_decompose(args) -> dict:
    spec = validate_spec(args.N, args.p, args.phi11)
    violations = hypothesis_violations(spec.N, spec.p)
    if violations:
        raise _Diagnosed(
            f"p = {spec.p} divides q - 1 for q in {violations}",
            {
                "factorization": [list(f) for f in factorize(spec.N).factors],
                "hypothesis": False,
                "violations": violations,
            },
        )
    return decompose(spec).to_dict()


def _cmd_distribution(args) -> dict:
    spec = canonical_spec(args.p, args.r, args.t0)
    hidden = parse_subgroup(args.hidden, spec)
    dist = post_collapse_distribution(spec, args.t, args.s, hidden)
    return {
        "group": [spec.N, spec.p, spec.phi11],
        "hidden": format_subgroup(hidden),
        "t": args.t,
        "s": args.s,
        "distribution": distribution_records(dist),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semidirect-hsp", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate-subgroups", help="list every subgroup of a canonical group")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t0", type=int, default=1, choices=(0, 1))
    p.add_argument("--check", action="store_true", help="also compare with brute-force search")
    p.set_defaults(func=_cmd_enumerate)

    for name, func, help_ in (
        ("solve-hsp", _cmd_solve, "solve one hidden subgroup instance"),
        ("estimate-success", _cmd_estimate, "Monte-Carlo success rate"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--phi11", type=int, required=True)
        p.add_argument("--hidden", required=True, help="C(t,s), T(t,s,h), Y(t), E{...} or <g1;g2>")
        p.add_argument("--k", type=int, default=DEFAULT_K)
        p.add_argument("--seed", type=int, default=default_seed())
        p.set_defaults(func=func)
        if name == "solve-hsp":
            p.add_argument("--general", action="store_true", help="force the decomposition route")
        else:
            p.add_argument("--trials", type=int, default=10_000)
            p.add_argument("--keyed", action="store_true", help="scramble oracle labels")
            p.add_argument("--timing", action="store_true", help="include wall-clock seconds")

    p = sub.add_parser("decompose", help="split Z_N x| Z_p into cyclic x canonical parts")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--phi11", type=int, required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("distribution", help="exact post-QFT distribution of one round")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t0", type=int, default=1, choices=(0, 1))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--hidden", required=True)
    p.set_defaults(func=_cmd_distribution)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    indent = 2 if args.pretty else None
    try:
        out = args.func(args)
    except TheoryViolation as exc:
        print(json.dumps({"status": "theory-violation", "error": str(exc)}, indent=indent))
        return 2
    except SolverFailure as exc:
        print(json.dumps({"status": "solver-failure", "reason": exc.reason, "error": str(exc)}, indent=indent))
        return 1
    except DomainError as exc:
        payload = getattr(exc, "payload", {})
        print(json.dumps({"status": "domain-error", "error": str(exc), **payload}, indent=indent))
        return 1
    print(json.dumps({"status": "ok", **out}, indent=indent))
    return 0


if __name__ == "__main__":
    sys.exit(main())
