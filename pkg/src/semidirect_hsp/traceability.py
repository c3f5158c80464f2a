"""Claim-to-code-to-test table, rendered to ``docs/traceability.md``.

Each claim the package makes executable is listed once with the functions
that implement it and the tests that check it. Rendering fails if any listed
function cannot be imported or any listed test does not exist.

    python -m semidirect_hsp.traceability [output-path]
"""
from __future__ import annotations

import importlib
import re
import sys
from dataclasses import dataclass
from pathlib import Path

__all__ = ["Claim", "CLAIMS", "TraceabilityError", "generate_traceability"]


class TraceabilityError(LookupError):
    pass


@dataclass(frozen=True)
class Claim:
    key: str
    statement: str
    operations: tuple[str, ...]
    tests: tuple[str, ...]


CLAIMS: tuple[Claim, ...] = (
    Claim(
        "group-law",
        "Pairs (a, b) multiply with the second factor twisting the first; y^b x^a = x^(a phi11^b) y^b.",
        ("group:GroupSpec.mul", "group:GroupSpec.pow"),
        ("test_commutation_relation", "test_associativity_exhaustive"),
    ),
    Claim(
        "twist-order",
        "A nontrivial twist phi11 is a unit of multiplicative order exactly p modulo N.",
        ("group:validate_spec", "modmath:multiplicative_order"),
        ("test_validate_spec_examples", "test_order_divides_phi"),
    ),
    Claim(
        "componentwise-action",
        "Each automorphism of the twist preserves the prime-power components of Z_N.",
        ("decomposition:decompose",),
        ("test_componentwise_action",),
    ),
    Claim(
        "trivial-twist-off-p-part",
        "If p divides no q-1, the twist is the identity on the part of Z_N coprime to p.",
        ("decomposition:decompose", "decomposition:check_hypothesis"),
        ("test_twist_trivial_off_p_part", "test_criterion_09_twist_trivial_off_p_part"),
    ),
    Claim(
        "coprime-product-splitting",
        "Every subgroup of a product of groups with coprime orders is a product of subgroups.",
        ("decomposition:split_subgroup",),
        ("test_split_subgroup_roundtrip",),
    ),
    Claim(
        "crt-reduction",
        "Z_N x| Z_p is isomorphic to Z_M0 x (Z_{p^r} x| Z_p) via the Chinese remainder map.",
        ("decomposition:map_element", "decomposition:unmap_element", "modmath:crt_combine"),
        ("test_map_element_is_isomorphism",),
    ),
    Claim(
        "end-to-end-reduction",
        "The hidden subgroup of Z_N x| Z_p is found by solving the cyclic and canonical factors separately.",
        ("solver:solve_general",),
        ("test_criterion_08_end_to_end",),
    ),
    Claim(
        "order-p-units",
        "The order-p units modulo 2p^r (r >= 2) are exactly 2ip^(r-1)+1 for i = 1..p-1.",
        ("modmath:order_p_elements",),
        ("test_order_p_elements_match_scan", "test_criterion_03_order_p_units"),
    ),
    Claim(
        "twist-isomorphisms",
        "All nontrivial twists on Z_{2p^r} give isomorphic groups via x^a y^b -> x^a y^(b/i).",
        ("subgroups:isomorphism_psi",),
        ("test_psi_is_isomorphism",),
    ),
    Claim(
        "canonical-presentation",
        "The canonical group satisfies x^(2p^r) = y^p = e and yx = x^(2p^(r-1)+1) y.",
        ("group:canonical_spec",),
        ("test_canonical_presentation_relations",),
    ),
    Claim(
        "power-and-order-formulas",
        "Closed forms for (x^a y^b)^k and for the order of x^a y^b in the canonical group.",
        ("group:pow_closed_form_2pr", "group:GroupSpec.element_order"),
        ("test_pow_closed_form_matches_pow", "test_criterion_02_order_formulas"),
    ),
    Claim(
        "cyclic-subgroup-lists",
        "<x^a y^b> equals the set of x^(ai) y^(bi) over one period of i.",
        ("subgroups:cyclic_elements",),
        ("test_power_list_equals_cyclic_subgroup",),
    ),
    Claim(
        "subgroup-classification",
        "Every subgroup is <x^(2^t p^s)> or <x^(2^t p^s), x^(h 2^t p^(s-1)) y>.",
        ("subgroups:enumerate_subgroups", "subgroups:membership"),
        ("test_classification_matches_bruteforce", "test_criterion_01_subgroup_classification"),
    ),
    Claim(
        "coset-subset",
        "x^((bh mod p) 2^t p^(s-1)) y^b lies in the two-generator subgroup for every b.",
        ("subgroups:membership",),
        ("test_coset_subset_property",),
    ),
    Claim(
        "fourier-round",
        "One round: grid state, label measurement, F_p (x) F_p, measurement, slope -c^(p-2) d.",
        ("qsim:run_round", "qsim:qft_p", "qsim:slope_from"),
        ("test_run_round_satisfies_slope_relation", "test_qft_matches_dft_matrix"),
    ),
    Claim(
        "post-qft-distributions",
        "After the round, (c, d) is uniform on {ch + d = 0} for two-generator H and uniform on Z_p^2 for cyclic H.",
        ("qsim:post_collapse_distribution",),
        ("test_twogen_distribution", "test_cyclic_distribution", "test_criterion_04_post_qft_distribution"),
    ),
    Claim(
        "grid-injectivity",
        "For cyclic H the oracle is injective on the p x p grid of the round.",
        ("oracle:make_oracle",),
        ("test_cyclic_oracle_injective_on_grid",),
    ),
    Claim(
        "single-round-recovery",
        "A round survives with probability 1 - 1/p and then returns the true slope.",
        ("qsim:run_round",),
        ("test_criterion_05_single_round_recovery",),
    ),
    Claim(
        "success-probabilities",
        "k rounds fail with probability 1/p^k; cyclic H is misjudged with probability at most (2^k-1)/p^(k-1).",
        ("experiments:success_bound", "experiments:cyclic_error_bound", "experiments:decision_rule_error_exact"),
        ("test_exact_decision_error_within_bound", "test_criterion_06_total_success_bound",
         "test_criterion_07_cyclic_error_claim"),
    ),
)


def _resolve(path: str):
    module, _, qualname = path.partition(":")
    obj = importlib.import_module(f"semidirect_hsp.{module}")
    for part in qualname.split("."):
        obj = getattr(obj, part)
    return obj


def _test_names(tests_dir: Path) -> set[str]:
    names = set()
    for f in tests_dir.glob("test_*.py"):
        names.update(re.findall(r"^\s*def (test_\w+)\(", f.read_text(), flags=re.M))
    return names


def default_tests_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "tests"


def generate_traceability(tests_dir: Path | None = None) -> str:
    """Markdown table of :data:`CLAIMS`; raises :class:`TraceabilityError` on a dangling entry."""
    tests_dir = Path(tests_dir) if tests_dir else default_tests_dir()
    known = _test_names(tests_dir)
    keys = [c.key for c in CLAIMS]
    if len(keys) != len(set(keys)):
        raise TraceabilityError("duplicate claim key")
    lines = [
        "# Traceability",
        "",
        "Generated by `python -m semidirect_hsp.traceability`; do not edit by hand.",
        "",
        "| claim | statement | implemented by | checked by |",
        "|---|---|---|---|",
    ]
    for c in CLAIMS:
        for op in c.operations:
            try:
                _resolve(op)
            except (ImportError, AttributeError) as exc:
                raise TraceabilityError(f"{c.key}: cannot resolve {op}") from exc
        missing = [t for t in c.tests if t not in known]
        if missing:
            raise TraceabilityError(f"{c.key}: no test named {missing}")
        ops = ", ".join(f"`{op.replace(':', '.')}`" for op in c.operations)
        tests = ", ".join(f"`{t}`" for t in c.tests)
        lines.append(f"| {c.key} | {c.statement} | {ops} | {tests} |")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else Path(__file__).resolve().parents[2] / "docs" / "traceability.md"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(generate_traceability())
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
