"""Batch command-line front end.

Every operation is exposed as a subcommand emitting one JSON document (or
a CSV table for fuzz runs) on stdout.  Randomized commands require an
explicit --seed and are byte-reproducible.

Exit codes:
  0  the command ran; verdicts, violations, and not-applicable results
     are reported in the body
  1  --strict was given and a checked statement does not hold
  2  usage errors, malformed inputs, out-of-budget requests
  3  a verifier returned FAIL, i.e. a mathematically impossible event;
     kept separate from 2 so CI can flag regressions in the math
"""

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .conditions import (
    COND_CI_GIVEN,
    COND_FUNCTIONAL,
    COND_INDEPENDENCE,
    COND_POINTWISE_PRODUCT,
    COND_SUPPORT_SATURATION,
    COND_UNIQUE_COMMON_VALUE,
    audit_lemma1,
    audit_lemma3,
    check_ci_given,
    check_functional,
    check_independence,
    check_pointwise_product,
    check_support_saturation,
    check_unique_common_value,
)
from .distributions import (
    as_fraction,
    ensure_roles,
    info_report,
    load_distribution,
)
from .errors import LabError, PreconditionFailed, TooLarge
from .families import (
    extend_with_random_B,
    gen_distinct_pairs,
    gen_disjoint_sets,
    gen_field_lines,
    sample_cond2c,
    sample_random_distribution,
)
from .graphs import (
    PARTITION_SEARCH_LIMIT,
    COVER_SEARCH_LIMIT,
    bcc_color_bound,
    gen_gnk,
    bcc_dual_entropy_bound,
    bcc_entropy_bound,
    corollary_bound_check,
    extend_with_cover_index,
    load_cover,
    load_graph,
    load_partition,
    min_biclique_cover,
    min_valid_matching_partition,
    verify_biclique_cover,
    verify_matching_partition,
)
from .inequalities import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    delta_prime_term,
    delta_term,
    entropy_split_gap,
    gamma_term,
    ingleton_gap,
    reduced_ingleton_gap,
    verify_lemma2,
    verify_theorem1,
    verify_theorem2,
)

SEED_SPAN = 2**32

DEFAULT_ROLE_BY_ARITY = {
    1: ("A",),
    2: ("A", "X"),
    3: ("A", "X", "Y"),
    4: ("A", "B", "X", "Y"),
    5: ("A", "B", "X", "Y", "Z"),
}


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    text: str
    document: Optional[object] = None


def _document(doc, exit_code=0) -> CommandOutcome:
    return CommandOutcome(exit_code, json.dumps(doc, indent=2) + "\n", doc)


def _usage_error(message: str, code: str = "USAGE") -> CommandOutcome:
    return _document({"error": {"code": code, "message": message}}, exit_code=2)


def _env_limit(default: int) -> int:
    raw = os.environ.get("ENTROPLAB_LIMIT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise LabError("BAD_PARAM", f"ENTROPLAB_LIMIT={raw!r} is not an integer")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise LabError("IO_ERROR", f"cannot read {path}: {exc}")


def _load_dist(path: str):
    return load_distribution(_read(path))


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise LabError("BAD_PARAM", f"--sizes expects a comma list of integers, got {text!r}")
    return sizes


def _require_flag(value, flag: str):
    if value is None:
        raise LabError("BAD_PARAM", f"this invocation requires {flag}")
    return value


# ---------------------------------------------------------------------------
# catalog


def _cmd_catalog_gen(args) -> CommandOutcome:
    family = args.family
    if family == "distinct-pairs":
        d = gen_distinct_pairs(_require_flag(args.n, "--n"))
    elif family == "disjoint-sets":
        d = gen_disjoint_sets(_require_flag(args.n, "--n"), _require_flag(args.k, "--k"))
    elif family == "field-lines":
        delta = as_fraction(args.delta if args.delta is not None else 0)
        d = gen_field_lines(_require_flag(args.q_exp, "--q-exp"), delta)
    elif family == "random-support":
        sizes = _parse_sizes(_require_flag(args.sizes, "--sizes"))
        if len(sizes) not in DEFAULT_ROLE_BY_ARITY:
            raise LabError("BAD_PARAM", f"--sizes supports 1..5 variables, got {len(sizes)}")
        seed = _require_flag(args.seed, "--seed")
        d = sample_random_distribution(DEFAULT_ROLE_BY_ARITY[len(sizes)], sizes, seed)
    elif family == "random-cond2c":
        sizes = _parse_sizes(_require_flag(args.sizes, "--sizes"))
        d = sample_cond2c(_require_flag(args.seed, "--seed"), sizes)
    else:  # pragma: no cover - argparse restricts choices
        raise LabError("BAD_PARAM", f"unknown family {family!r}")
    if args.b_size is not None:
        d = extend_with_random_B(d, args.b_size, _require_flag(args.seed, "--seed"))
    text = d.dumps()
    if args.out:
        Path(args.out).write_text(text)
    return CommandOutcome(0, text, d.to_json_dict())


# ---------------------------------------------------------------------------
# info / check


def _condition_suite(d):
    e = ensure_roles(d, ("A", "X", "Y"))
    return {
        COND_INDEPENDENCE: lambda: check_independence(e, "X", "Y"),
        COND_CI_GIVEN: lambda: check_ci_given(e, "X", "Y", "A"),
        COND_FUNCTIONAL: lambda: check_functional(e),
        COND_SUPPORT_SATURATION: lambda: check_support_saturation(e),
        COND_UNIQUE_COMMON_VALUE: lambda: check_unique_common_value(e),
        COND_POINTWISE_PRODUCT: lambda: check_pointwise_product(e),
    }


def _cmd_info(args) -> CommandOutcome:
    d = _load_dist(args.dist)
    e = ensure_roles(d, ("A", "B", "X", "Y"))
    conditions = {name: check().to_json_dict() for name, check in _condition_suite(d).items()}
    gaps = {
        report.inequality: report.to_json_dict()
        for report in (ingleton_gap(e), reduced_ingleton_gap(e), entropy_split_gap(e))
    }
    terms = {
        "gamma": gamma_term(e).to_json_dict(),
        "delta": delta_term(e).to_json_dict(),
    }
    try:
        terms["delta-prime"] = delta_prime_term(e).to_json_dict()
    except PreconditionFailed as exc:
        terms["delta-prime"] = {"applicable": False, "witness": exc.witness}
    doc = {
        "variables": list(d.variables),
        "atoms": len(d.atoms),
        "fingerprint": d.fingerprint(),
        "measures": info_report(e).to_json_dict(),
        "conditions": conditions,
        "gaps": gaps,
        "error_terms": terms,
    }
    return _document(doc)


def _cmd_check(args) -> CommandOutcome:
    d = _load_dist(args.dist)
    suite = _condition_suite(d)
    if args.condition is not None:
        names = [args.condition]
    elif args.all:
        names = list(suite)
    else:
        raise LabError("BAD_PARAM", "pass --condition <id> or --all")
    verdicts = [suite[name]().to_json_dict() for name in names]
    doc = {"fingerprint": d.fingerprint(), "verdicts": verdicts}
    failed = [v for v in verdicts if not v["holds"]]
    return _document(doc, exit_code=1 if (args.strict and failed) else 0)


# ---------------------------------------------------------------------------
# verify


def _strictable(status: str, args) -> int:
    if status == FAIL:
        return 3
    if args.strict and status != PASS:
        return 1
    return 0


def _cmd_verify(args) -> CommandOutcome:
    d = ensure_roles(_load_dist(args.dist), ("A", "X", "Y"))
    token = args.theorem
    if token == "1":
        cert = verify_theorem1(d)
        return _document(cert.to_json_dict(), _strictable(cert.status, args))
    if token == "2":
        cert = verify_theorem2(d)
        return _document(cert.to_json_dict(), _strictable(cert.status, args))
    if token == "lemma1":
        audit = audit_lemma1(d)
        return _document(audit.to_json_dict(), 0 if audit.ok else 3)
    if token == "lemma2":
        cert = verify_lemma2(d)
        return _document(cert.to_json_dict(), 0 if cert.status == PASS else 3)
    if token == "lemma3":
        seed = _require_flag(args.seed, "--seed")
        try:
            audit = audit_lemma3(d, trials=args.trials, seed=seed)
        except PreconditionFailed as exc:
            doc = {"status": NOT_APPLICABLE, "witness": exc.witness}
            return _document(doc, 1 if args.strict else 0)
        doc = {
            "status": PASS if audit.ok else FAIL,
            "trials": audit.trials,
            "failures": len(audit.failures),
        }
        return _document(doc, 0 if audit.ok else 3)
    raise LabError("BAD_PARAM", f"unknown theorem token {token!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# fuzz


def _sparse_sample(rng: random.Random):
    sizes = tuple(rng.randint(1, 3) for _ in range(4))
    d = sample_random_distribution(("A", "B", "X", "Y"), sizes, rng.randrange(SEED_SPAN))
    outcomes = sorted(d.atoms)
    keep = rng.randint(1, len(outcomes))
    return d.condition(rng.sample(outcomes, keep))


def _fuzz_trial(target: str, rng: random.Random):
    inner = rng.randrange(SEED_SPAN)
    if target == "theorem1":
        sizes = tuple(rng.randint(1, 4) for _ in range(4))
        d = sample_cond2c(inner, sizes)
        cert = verify_theorem1(d)
        return d, cert.status
    if target == "theorem2":
        sizes = tuple(rng.randint(1, 3) for _ in range(3))
        base = sample_random_distribution(("A", "X", "Y"), sizes, inner)
        d = extend_with_random_B(base, rng.randint(1, 3), rng.randrange(SEED_SPAN))
        cert = verify_theorem2(d)
        return d, cert.status
    if target == "lemma1":
        d = _sparse_sample(rng)
        audit = audit_lemma1(d)
        return d, PASS if audit.ok else FAIL
    if target == "lemma2":
        d = _sparse_sample(rng)
        cert = verify_lemma2(d)
        return d, cert.status
    if target == "lemma3":
        sizes = tuple(rng.randint(1, 3) for _ in range(4))
        d = sample_cond2c(inner, sizes)
        audit = audit_lemma3(d, trials=3, seed=rng.randrange(SEED_SPAN))
        return d, PASS if audit.ok else FAIL
    raise LabError("BAD_PARAM", f"unknown fuzz target {target!r}")  # pragma: no cover


def _cmd_fuzz(args) -> CommandOutcome:
    if args.trials < 1:
        raise LabError("BAD_PARAM", "--trials must be positive")
    rng = random.Random(args.seed)
    rows = []
    counts: dict[str, int] = {}
    first_failure = None
    for trial in range(args.trials):
        d, status = _fuzz_trial(args.target, rng)
        counts[status] = counts.get(status, 0) + 1
        rows.append((trial, d.fingerprint(), status))
        if status == FAIL and first_failure is None:
            first_failure = {"trial": trial, "fingerprint": d.fingerprint()}
    failures = counts.get(FAIL, 0)
    exit_code = 3 if failures else 0
    if args.csv:
        lines = ["trial,fingerprint,status"]
        lines += [f"{t},{fp},{status}" for t, fp, status in rows]
        return CommandOutcome(exit_code, "\n".join(lines) + "\n", None)
    doc = {
        "target": args.target,
        "trials": args.trials,
        "seed": args.seed,
        "counts": counts,
        "failures": failures,
    }
    if first_failure is not None:
        doc["first_failure"] = first_failure
    return _document(doc, exit_code)


# ---------------------------------------------------------------------------
# graph


def _cmd_graph_gen(args) -> CommandOutcome:
    g = gen_gnk(args.n, args.k)
    text = g.dumps()
    if args.out:
        Path(args.out).write_text(text)
    return CommandOutcome(0, text, g.to_json_dict())


def _cmd_graph(args) -> CommandOutcome:
    g = load_graph(_read(args.graph))
    action = args.graph_command
    if action == "verify-partition":
        partition = load_partition(_read(args.partition))
        report = verify_matching_partition(g, partition)
        doc = {"partition": report.to_json_dict(), "corollary": None}
        if report.valid:
            doc["corollary"] = corollary_bound_check(g, partition).to_json_dict()
        return _document(doc, 1 if (args.strict and not report.valid) else 0)
    if action == "min-partition":
        limit = args.limit if args.limit is not None else _env_limit(PARTITION_SEARCH_LIMIT)
        k = min_valid_matching_partition(g, limit)
        left_deg, right_deg = g.degrees()
        left_min = min(left_deg.values()) if left_deg else 0
        right_min = min(right_deg.values()) if right_deg else 0
        doc = {
            "K": k,
            "L": left_min,
            "R": right_min,
            "product_bound_holds": k >= left_min * right_min,
        }
        return _document(doc, 0 if doc["product_bound_holds"] else 3)
    if action == "verify-cover":
        cover = load_cover(_read(args.cover))
        verdict = verify_biclique_cover(g, cover)
        return _document(
            verdict.to_json_dict(), 1 if (args.strict and not verdict.holds) else 0
        )
    if action == "bcc":
        methods = args.method.split(",")
        doc = {}
        for method in methods:
            if method == "exact":
                limit = args.limit if args.limit is not None else _env_limit(COVER_SEARCH_LIMIT)
                cover = min_biclique_cover(g, limit)
                doc["exact"] = {
                    "value": len(cover),
                    "cover": [b.to_json_dict() for b in cover],
                }
                continue
            bound = {
                "entropy": bcc_entropy_bound,
                "dual": bcc_dual_entropy_bound,
                "color": bcc_color_bound,
            }.get(method)
            if bound is None:
                raise LabError("BAD_PARAM", f"unknown bcc method {method!r}")
            try:
                doc[method] = bound(g).to_json_dict()
            except PreconditionFailed as exc:
                doc[method] = {"applicable": False, "witness": exc.witness}
        return _document(doc)
    if action == "z-extend":
        cover = load_cover(_read(args.cover))
        report = extend_with_cover_index(g, cover, seed=args.seed)
        doc = report.to_json_dict()
        doc["fingerprint"] = report.distribution.fingerprint()
        if args.out:
            Path(args.out).write_text(report.distribution.dumps())
        ok = report.split_holds and report.size_floor_holds
        return _document(doc, 1 if (args.strict and not ok) else 0)
    raise LabError("BAD_PARAM", f"unknown graph action {action!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroplab",
        description="Exact checks for conditional information inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    catalog = sub.add_parser("catalog", help="deterministic generators and samplers")
    catalog_sub = catalog.add_subparsers(dest="catalog_command", required=True)
    gen = catalog_sub.add_parser("gen", help="emit a distribution as JSON")
    gen.add_argument(
        "--family",
        required=True,
        choices=[
            "distinct-pairs",
            "disjoint-sets",
            "field-lines",
            "random-support",
            "random-cond2c",
        ],
    )
    gen.add_argument("--n", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--q-exp", dest="q_exp", type=int)
    gen.add_argument("--delta")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--b-size", dest="b_size", type=int)
    gen.add_argument("--sizes")
    gen.add_argument("--out")
    gen.set_defaults(handler=_cmd_catalog_gen)

    info = sub.add_parser("info", help="measure panel for a distribution")
    info_sub = info.add_subparsers(dest="info_command", required=True)
    report = info_sub.add_parser("report", help="entropies, verdicts, gaps, error terms")
    report.add_argument("--dist", required=True)
    report.set_defaults(handler=_cmd_info)

    check = sub.add_parser("check", help="support and product condition verdicts")
    check.add_argument("--dist", required=True)
    check.add_argument(
        "--condition",
        choices=[
            COND_INDEPENDENCE,
            COND_CI_GIVEN,
            COND_FUNCTIONAL,
            COND_SUPPORT_SATURATION,
            COND_UNIQUE_COMMON_VALUE,
            COND_POINTWISE_PRODUCT,
        ],
    )
    check.add_argument("--all", action="store_true")
    check.add_argument("--strict", action="store_true")
    check.set_defaults(handler=_cmd_check)

    verify = sub.add_parser("verify", help="run a theorem or lemma verifier")
    verify.add_argument("--dist", required=True)
    verify.add_argument(
        "--theorem", required=True, choices=["1", "2", "lemma1", "lemma2", "lemma3"]
    )
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--strict", action="store_true")
    verify.set_defaults(handler=_cmd_verify)

    fuzz = sub.add_parser("fuzz", help="seeded property fuzzing")
    fuzz.add_argument(
        "--target",
        required=True,
        choices=["theorem1", "theorem2", "lemma1", "lemma2", "lemma3"],
    )
    fuzz.add_argument("--trials", type=int, required=True)
    fuzz.add_argument("--seed", type=int, required=True)
    fuzz.add_argument("--csv", action="store_true")
    fuzz.set_defaults(handler=_cmd_fuzz)

    graph = sub.add_parser("graph", help="matching partitions and biclique covers")
    graph_sub = graph.add_subparsers(dest="graph_command", required=True)
    gg = graph_sub.add_parser("gen", help="disjointness graph on k-subsets of {1..n}")
    gg.add_argument("--n", type=int, required=True)
    gg.add_argument("--k", type=int, required=True)
    gg.add_argument("--out")
    gg.set_defaults(handler=_cmd_graph_gen)
    vp = graph_sub.add_parser("verify-partition")
    vp.add_argument("--graph", required=True)
    vp.add_argument("--partition", required=True)
    vp.add_argument("--strict", action="store_true")
    vp.set_defaults(handler=_cmd_graph)
    mp = graph_sub.add_parser("min-partition")
    mp.add_argument("--graph", required=True)
    mp.add_argument("--limit", type=int)
    mp.set_defaults(handler=_cmd_graph)
    vc = graph_sub.add_parser("verify-cover")
    vc.add_argument("--graph", required=True)
    vc.add_argument("--cover", required=True)
    vc.add_argument("--strict", action="store_true")
    vc.set_defaults(handler=_cmd_graph)
    bcc = graph_sub.add_parser("bcc")
    bcc.add_argument("--graph", required=True)
    bcc.add_argument("--method", default="entropy,dual,color")
    bcc.add_argument("--limit", type=int)
    bcc.set_defaults(handler=_cmd_graph)
    ze = graph_sub.add_parser("z-extend")
    ze.add_argument("--graph", required=True)
    ze.add_argument("--cover", required=True)
    ze.add_argument("--seed", type=int)
    ze.add_argument("--out")
    ze.add_argument("--strict", action="store_true")
    ze.set_defaults(handler=_cmd_graph)

    return parser


def run(argv) -> CommandOutcome:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return CommandOutcome(0, "")
        return CommandOutcome(2, "")
    try:
        return args.handler(args)
    except TooLarge as exc:
        return _usage_error(str(exc), code=exc.code)
    except LabError as exc:
        doc = {"error": {"code": exc.code, "message": str(exc)}}
        if exc.witness is not None:
            doc["error"]["witness"] = exc.witness
        return _document(doc, exit_code=2)


def main(argv=None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    if outcome.text:
        sys.stdout.write(outcome.text)
    return outcome.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
