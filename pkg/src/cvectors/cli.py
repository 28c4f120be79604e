"""
Command-line front end.

Exit codes: 0 when everything checked passes, 1 for a finding
(counterexample, failed check, inconclusive search), 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .coxeter import (
    coxeter_product_check,
    l_matrix_from_words,
    l_matrix_recurrence,
    reflections_along,
)
from .curves import FamilyLabeling, curves_for_reflections, crossing_word, is_admissible_curve, non_crossing, render_svg
from .fork import (
    ForkViolation,
    certify_point_of_return,
    find_point_of_return,
    fork_linear_ordering,
    is_fork_preserving,
    last_green_vertex,
    random_fork,
    random_fork_preserving_sequence,
    require_fork,
)
from .gim import apply_gim_sequence, check_ordering, is_admissible
from .quiver import ExchangeMatrix, SignCoherenceError, apply_sequence, sign_vector, structural_predicates, walk
from .serialize import digest, dumps, load_quiver, parse_sequence, quiver_to_json
from .verify import (
    ALL_CHECKS,
    CampaignConfig,
    CyclicityDisagreement,
    VerificationReport,
    is_mutation_cyclic_rank3,
    random_walk_campaign,
    verify_l_c_relation,
    verify_quadratic,
    verify_rank3_theorem,
    verify_sign_invariance,
)


class InputError(ValueError):
    pass


@dataclass
class Result:
    code: int
    payload: dict[str, Any]
    table: str = ""
    rows: list[list[Any]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# formatting


def format_matrix(*blocks: Sequence[Sequence[int]]) -> str:
    """Right-aligned integer table; blocks are separated by ``|``."""
    cells = [[str(x) for x in row] for block in blocks for row in block]
    width = max((len(c) for row in cells for c in row), default=1)
    lines = []
    for i in range(len(blocks[0])):
        parts = [" ".join(str(x).rjust(width) for x in block[i]) for block in blocks]
        lines.append("[ " + " | ".join(parts) + " ]")
    return "\n".join(lines)


def report_result(report: VerificationReport) -> Result:
    payload = report.to_dict()
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in report.checks]
    if not report.checks:
        lines.append("(no checks run)")
    if report.counterexample is not None:
        lines.append("counterexample: " + dumps(report.counterexample, sort_keys=True))
    rows = [["name", "pass", "detail"]] + [[c.name, c.passed, c.detail] for c in report.checks]
    return Result(0 if report.passed else 1, payload, "\n".join(lines), rows)


def _ordering(args, b: ExchangeMatrix) -> tuple[int, ...]:
    if args.ordering:
        return check_ordering(parse_sequence(args.ordering), b.n)
    cert = find_point_of_return(b)
    if cert is None:
        raise InputError("--ordering is required for quivers that are not forks")
    return fork_linear_ordering(cert, b)


def _quiver(args) -> ExchangeMatrix:
    if not args.quiver:
        raise InputError("--quiver is required")
    return load_quiver(args.quiver)


def _seq(args, b: ExchangeMatrix | None = None) -> tuple[int, ...]:
    w = parse_sequence(args.seq)
    if b is not None:
        for k in w:
            if not 1 <= k <= b.n:
                raise InputError(f"vertex {k} in --seq out of range 1..{b.n}")
    return w


def _need_seed(args) -> int:
    if args.rng_seed is None:
        raise InputError("--rng-seed is required for randomized commands")
    return args.rng_seed


# ---------------------------------------------------------------------------
# commands


def cmd_mutate(args) -> Result:
    b = _quiver(args)
    w = _seq(args, b)
    seed = apply_sequence(b, w)
    payload = {
        "quiver": quiver_to_json(b),
        "w": list(w),
        "b": seed.b.b,
        "c": seed.c,
        "sign_vector": sign_vector(seed),
    }
    table = f"w = {list(w)}\n" + format_matrix(seed.b.b, seed.c) + f"\nsign vector {sign_vector(seed)}"
    rows = [list(rb) + list(rc) for rb, rc in zip(seed.b.b, seed.c)]
    return Result(0, payload, table, rows)


def cmd_reflections(args) -> Result:
    b = _quiver(args)
    w = _seq(args, b)
    t, _ = reflections_along(b, w)
    payload: dict[str, Any] = {"quiver": quiver_to_json(b), "w": list(w), "reflections": t}
    lines = [f"r_{i}^w = {list(r)}" for i, r in enumerate(t, 1)]
    code = 0
    lam = parse_sequence(args.lambda_order) or None
    rho = parse_sequence(args.rho_order) or None
    if (lam is None) != (rho is None):
        raise InputError("--lambda and --rho must be given together")
    if lam is not None or (w and find_point_of_return(b) is not None):
        cc = coxeter_product_check(b, w, lambda_order=lam, rho_order=rho)
        payload["coxeter"] = {
            "lambda": cc.lambda_order,
            "product": cc.lambda_product_word,
            "expected": cc.rho_product_word,
            "equal": cc.equal,
            "within_hypotheses": cc.within_hypotheses,
        }
        lines.append(
            f"product over {list(cc.lambda_order)} = {list(cc.lambda_product_word)}; "
            f"expected {list(cc.rho_product_word)}: {'equal' if cc.equal else 'DIFFERENT'}"
        )
        code = 0 if cc.equal else 1
    rows = [[i, " ".join(map(str, r))] for i, r in enumerate(t, 1)]
    return Result(code, payload, "\n".join(lines), rows)


def cmd_lmatrix(args) -> Result:
    b = _quiver(args)
    w = _seq(args, b)
    order = _ordering(args, b)
    t, seed = reflections_along(b, w)
    g0, _ = apply_gim_sequence(b, order, ())
    words = l_matrix_from_words(g0, t)
    rec = l_matrix_recurrence(b, order, w)
    agree = words.equal_up_to_row_sign(rec)
    payload = {
        "quiver": quiver_to_json(b), "w": list(w), "ordering": order,
        "l_words": words.raw, "l_recurrence": rec.raw, "c": seed.c,
        "agree_up_to_row_sign": agree,
    }
    table = (
        f"ordering {list(order)}, w = {list(w)}\n"
        f"L (reflection words):\n{format_matrix(words.raw)}\n"
        f"L (recurrence):\n{format_matrix(rec.raw)}\n"
        f"C:\n{format_matrix(seed.c)}\n"
        f"paths agree up to row sign: {agree}"
    )
    return Result(0 if agree else 1, payload, table, [list(r) for r in words.raw])


def cmd_gim(args) -> Result:
    b = _quiver(args)
    w = _seq(args, b)
    order = _ordering(args, b)
    g, seed = apply_gim_sequence(b, order, w)
    admissible = is_admissible(g, seed.b) if structural_predicates(seed.b).complete else None
    payload = {"quiver": quiver_to_json(b), "w": list(w), "ordering": order, "a": g.a,
               "admissible": admissible}
    table = f"A^w for ordering {list(order)}, w = {list(w)}\n{format_matrix(g.a)}\nadmissible: {admissible}"
    return Result(0 if admissible is not False else 1, payload, table, [list(r) for r in g.a])


def cmd_walk(args) -> Result:
    rng_seed = _need_seed(args)
    if args.quiver:
        b = load_quiver(args.quiver)
    else:
        b = random_fork(args.n, args.max_weight, rng_seed)
    cert = require_fork(b)
    w = random_fork_preserving_sequence(b, args.length, random.Random(rng_seed))
    seeds = walk(b, w)
    ok, why = is_fork_preserving(b, w)
    final = seeds[-1]
    lgv = None
    if w:
        lgv = last_green_vertex(final, certify_point_of_return(final.b, w[-1]))
    payload = {
        "quiver": quiver_to_json(b), "point_of_return": cert.point_of_return,
        "w": list(w), "fork_preserving": ok,
        "sign_vectors": [sign_vector(s) for s in seeds],
        "c": final.c, "last_green_vertex": lgv,
    }
    table = (
        f"fork (point of return {cert.point_of_return}):\n{format_matrix(b.b)}\n"
        f"w = {list(w)} ({why})\n"
        + "\n".join(f"  step {i}: {sign_vector(s)}" for i, s in enumerate(seeds))
        + f"\nC^w:\n{format_matrix(final.c)}\nlast green vertex: {lgv}"
    )
    rows = [[i, *sign_vector(s)] for i, s in enumerate(seeds)]
    return Result(0 if ok else 1, payload, table, rows)


def cmd_curves(args) -> Result:
    b = _quiver(args)
    if b.n != 3:
        raise InputError("curves are only implemented for rank 3")
    shape = structural_predicates(b)
    if shape.acyclic or not is_mutation_cyclic_rank3(b):
        raise InputError("curves need a mutation-cyclic rank-3 quiver")
    w = _seq(args, b)
    sigma = parse_sequence(args.ordering) if args.ordering else _ordering(args, b)
    lab = FamilyLabeling(check_ordering(sigma, 3))
    t, _ = reflections_along(b, w)
    ps = curves_for_reflections(t, lab, args.bound)
    payload: dict[str, Any] = {"quiver": quiver_to_json(b), "w": list(w), "sigma": lab.sigma,
                               "reflections": t}
    if ps is None:
        payload["curves"] = None
        return Result(1, payload, "search inconclusive within bound", [])
    words = [crossing_word(p, lab) for p in ps]
    valid = [is_admissible_curve(p, lab) and cw == r for p, cw, r in zip(ps, words, t)]
    jointly = non_crossing(ps)
    payload["curves"] = [
        {"points": [[str(x), str(y)] for x, y in p.points], "word": cw, "valid": v}
        for p, cw, v in zip(ps, words, valid)
    ]
    payload["pairwise_non_crossing"] = jointly
    svg = render_svg(ps, labels=[f"eta_{i}" for i in range(1, len(ps) + 1)])
    payload["svg_sha256"] = digest(svg)
    if args.out:
        Path(args.out).write_text(svg)
    lines = [f"eta_{i}: word {list(cw)} {'valid' if v else 'INVALID'}"
             for i, (cw, v) in enumerate(zip(words, valid), 1)]
    lines.append(f"pairwise non-crossing: {jointly}")
    if args.out:
        lines.append(f"wrote {args.out}")
    rows = [[i, " ".join(map(str, cw)), v] for i, (cw, v) in enumerate(zip(words, valid), 1)]
    return Result(0 if all(valid) and jointly else 1, payload, "\n".join(lines), rows)


def cmd_verify(args) -> Result:
    theorem = args.theorem
    if theorem == "campaign":
        if args.trials and args.trials > 0:
            rng_seed = _need_seed(args)
        else:
            rng_seed = args.rng_seed or 0
        ranks = tuple(parse_sequence(args.n_list)) or (4,)
        checks = frozenset(x.strip() for x in args.checks.split(",")) if args.checks else ALL_CHECKS
        config = CampaignConfig(
            n=ranks, max_weight=args.max_weight, walk_length=args.walk_length,
            trials=args.trials, rng_seed=rng_seed, checks=checks,
        )
        return report_result(random_walk_campaign(config))
    if theorem == "sign-invariance":
        if not args.pair:
            raise InputError("--pair A,B is required")
        names = [x.strip() for x in args.pair.split(",")]
        if len(names) != 2:
            raise InputError("--pair takes exactly two quivers")
        b1, b2 = (load_quiver(x) for x in names)
        w = _seq(args, b1)
        return report_result(verify_sign_invariance(b1, b2, w, strict=False))
    b = _quiver(args)
    if theorem == "quadratic":
        if args.seq is not None:
            return report_result(verify_quadratic(b, _seq(args, b)))
        if b.n != 3:
            raise InputError("without --seq the quadratic check enumerates rank-3 quivers only")
        return report_result(verify_rank3_theorem(b, args.depth))
    if theorem == "rank3":
        if b.n != 3:
            raise InputError("rank3 needs a rank-3 quiver")
        report = VerificationReport({"quiver": quiver_to_json(b)})
        report.add("mutation_cyclic", is_mutation_cyclic_rank3(b), "descent and search agree")
        return report_result(report)
    w = _seq(args, b)
    cert = find_point_of_return(b)
    if theorem == "l-c":
        if cert is None:
            raise InputError("the l/c relation is stated for forks")
        order = _ordering(args, b)
        return report_result(verify_l_c_relation(b, cert, order, w))
    if theorem == "coxeter":
        lam = parse_sequence(args.lambda_order) or None
        rho = parse_sequence(args.rho_order) or None
        cc = coxeter_product_check(b, w, lambda_order=lam, rho_order=rho)
        report = VerificationReport({"quiver": quiver_to_json(b), "w": list(w),
                                     "within_hypotheses": cc.within_hypotheses})
        detail = f"{list(cc.lambda_product_word)} vs {list(cc.rho_product_word)}"
        if cc.equal:
            report.add("coxeter", True, detail)
        else:
            report.fail("coxeter", detail, b=b.tolist(), w=list(w))
        return report_result(report)
    raise InputError(f"unknown theorem {theorem!r}")


COMMANDS: dict[str, Callable[[argparse.Namespace], Result]] = {
    "mutate": cmd_mutate,
    "lmatrix": cmd_lmatrix,
    "reflections": cmd_reflections,
    "gim": cmd_gim,
    "verify": cmd_verify,
    "walk": cmd_walk,
    "curves": cmd_curves,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="built-in name (markov, q233, fork345) or JSON file")
    common.add_argument("--seq", help="comma-separated 1-based mutation sequence")
    common.add_argument("--ordering", help="comma-separated linear ordering / labeling")
    common.add_argument("--rng-seed", type=int, default=None)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", help="write output (SVG for curves) to this path")
    common.add_argument("--log", help="append a run record (JSON lines) to this path")

    parser = argparse.ArgumentParser(prog="cvectors", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("mutate", parents=[common], help="print [B^w | C^w]")
    p = sub.add_parser("reflections", parents=[common], help="reflection words r_i^w")
    p.add_argument("--lambda", dest="lambda_order")
    p.add_argument("--rho", dest="rho_order")
    sub.add_parser("lmatrix", parents=[common], help="L-matrix by both paths")
    sub.add_parser("gim", parents=[common], help="mutated GIM and admissibility")
    p = sub.add_parser("walk", parents=[common], help="random fork-preserving walk")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--length", type=int, default=8)
    p = sub.add_parser("curves", parents=[common], help="admissible curves (rank 3) as SVG")
    p.add_argument("--bound", type=int, default=2)
    p = sub.add_parser("verify", parents=[common], help="theorem checkers and campaigns")
    p.add_argument("--theorem", default="campaign",
                   choices=("campaign", "quadratic", "sign-invariance", "l-c", "coxeter", "rank3"))
    p.add_argument("--pair")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", dest="n_list", default="4", help="rank or comma-separated ranks")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--walk-length", type=int, default=8)
    p.add_argument("--checks", help=f"subset of {','.join(sorted(ALL_CHECKS))}")
    p.add_argument("--lambda", dest="lambda_order")
    p.add_argument("--rho", dest="rho_order")
    return parser


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return dumps(result.payload, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(result.rows)
        return buf.getvalue()
    return result.table + "\n"


def execute(argv: Sequence[str]) -> tuple[Result | None, argparse.Namespace | None, str]:
    """Parse and run; returns (result, args, error message)."""
    parser = build_parser()
    args = parser.parse_args(list(argv))
    try:
        return COMMANDS[args.command](args), args, ""
    except (SignCoherenceError, ForkViolation, CyclicityDisagreement) as exc:
        return Result(1, {"error": str(exc), "kind": type(exc).__name__}, f"finding: {exc}"), args, ""
    except (ValueError, IndexError, OSError) as exc:
        return None, args, str(exc)


def _strip_log(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--log":
            skip = True
            continue
        if tok.startswith("--log="):
            continue
        out.append(tok)
    return out


def append_record(path: str, argv: Sequence[str], result: Result) -> dict[str, Any]:
    record = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": argv[0] if argv else "",
        "config": {"argv": _strip_log(argv)},
        "digest": digest(result.payload),
        "summary": {"exit": result.code, "passed": result.code == 0},
    }
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
    return record


def replay(record: dict[str, Any]) -> bool:
    """Re-run a logged command and compare result digests."""
    result, _, _ = execute(record["config"]["argv"])
    return result is not None and digest(result.payload) == record["digest"]


def read_log(path: str) -> list[dict[str, Any]]:
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        result, args, err = execute(argv)
    except SystemExit as exc:  # argparse errors exit with 2
        return int(exc.code or 0)
    if result is None:
        print(f"error: {err}", file=sys.stderr)
        return 2
    text = render(result, args.format)
    if args.out and args.command != "curves":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.log:
        append_record(args.log, argv, result)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
