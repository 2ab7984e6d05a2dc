"""Command-line front end.

Exit codes: 0 success / gbent / claim holds, 1 negative verdict or failed
check, 2 input or usage error, 3 construction hypothesis violated,
4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import presets
from .analysis import (
    REGULAR, WEAKLY_REGULAR, analyze, is_self_dual, search_self_dual, second_derivative_witness,
)
from .constructions import (
    SymmetricParams, TwistedParams, build_indirect_sum, build_selfdual, build_twisted, eta_pattern, mm_gbent, parse_element,
    parse_table, quadratic_bent, twisted_dual_condition,
)
from .decomposition import check_components_bent, check_dual_components, extract_lambda
from .domain import DomainSpec
from .errors import BudgetExceeded, ConstructionError, FormatError, GBentError
from .field import ExtField
from .gfunction import GFunction, dumps, read_table, write_table
from .walsh import walsh_full_fast, walsh_naive_full

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CONSTRUCTION, EXIT_BUDGET = 0, 1, 2, 3, 4


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _write_or_print(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- analysis commands

def _expected_mismatches(cert, f: GFunction, expected: dict) -> list[str]:
    got = {
        "is_gbent": cert.is_gbent,
        "weakly_regular": cert.regularity in (REGULAR, WEAKLY_REGULAR),
        "regularity": cert.regularity,
        "mu": cert.mu,
    }
    if cert.is_gbent:
        got["self_dual"] = bool(np.array_equal(cert.dual_values, f.values))
        if "dual_gbent" in expected:
            got["dual_gbent"] = analyze(cert.dual()).is_gbent
    return [f"{key}: expected {val!r}, got {got.get(key)!r}" for key, val in expected.items()
            if key in got and got[key] != val]


def cmd_analyze(args) -> int:
    f = read_table(args.file)
    cert = analyze(f)
    payload = cert.to_dict()
    if not args.full:
        payload.pop("epsilon_table")
    lines = [
        f"p={f.p} k={f.k} n={f.n} domain={f.spec}",
        f"generalized bent: {cert.is_gbent}",
        f"xi case: {cert.xi_case}",
        f"regularity: {cert.regularity}" + (f" (mu = {cert.mu})" if cert.mu else ""),
    ]
    if cert.is_gbent:
        sd = is_self_dual(f, cert)
        payload["self_dual"] = sd.holds
        lines.append(f"self-dual: {sd.holds}")
    else:
        lines.append(f"failing points: {len(cert.failures)} (first {list(cert.failures[:10])})")
    if args.degree:
        w = second_derivative_witness(f, seed=args.seed)
        payload["nonquadratic_witness"] = None if w is None else w.__dict__
        lines.append("second derivative: " + ("constant on all tried pairs" if w is None else
                                              f"non-constant at a={w.a}, b={w.b}, x in {{{w.x1}, {w.x2}}}"))
    code = EXIT_OK if cert.is_gbent else EXIT_NEGATIVE
    if args.expect:
        expected = json.loads(Path(args.expect).read_text())
        bad = _expected_mismatches(cert, f, expected)
        payload["expectation_mismatches"] = bad
        lines.append("expected verdict: " + ("reproduced" if not bad else "MISMATCH " + "; ".join(bad)))
        code = EXIT_OK if not bad else EXIT_NEGATIVE
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_dual(args) -> int:
    f = read_table(args.file)
    cert = analyze(f)
    if not cert.is_gbent:
        print(f"not generalized bent: {len(cert.failures)} failing points, first {list(cert.failures[:10])}",
              file=sys.stderr)
        return EXIT_NEGATIVE
    _write_or_print(args, dumps(cert.dual()))
    return EXIT_OK


def cmd_transform(args) -> int:
    f = read_table(args.file)
    w = walsh_naive_full(f) if args.naive else walsh_full_fast(f)
    if args.json:
        text = json.dumps({"p": f.p, "k": f.k, "spec": str(f.spec),
                           "basis": "zeta_p^i zeta_{p^k}^j, i < p-1, j < p^(k-1), row-major",
                           "table": w.table.reshape(len(w), -1).tolist()}) + "\n"
    else:
        text = w.dumps()
    _write_or_print(args, text)
    return EXIT_OK


# ---------------------------------------------------------------- construction

def _field(args, primitive: bool = False) -> ExtField:
    return ExtField(args.p, args.poly, primitive=primitive)


def _twisted_params(args) -> TwistedParams:
    if args.preset:
        table = {"1": presets.nonbent_dual_params, "2": presets.bent_dual_params, "5": presets.nonbent_dual_ternary_params}
        if args.preset not in table:
            raise ConstructionError("twisted presets are 1, 2 and 5")
        return table[args.preset]()
    if not (args.poly and args.alpha and args.beta and args.g):
        raise ConstructionError("twisted needs --preset or all of --p --poly --k --alpha --beta --g")
    fld = _field(args)
    return TwistedParams(fld, args.k, parse_element(fld, args.alpha), parse_element(fld, args.beta),
                      parse_table(args.g, args.p, args.p**args.k))


def _construct_twisted(args) -> tuple[GFunction, dict]:
    params = _twisted_params(args)
    f = build_twisted(params)
    eta = eta_pattern(params)
    expected = {"is_gbent": True, "weakly_regular": eta.all_ones, "dual_gbent": twisted_dual_condition(params)}
    return f, expected


def _construct_quadratic(args) -> tuple[GFunction, dict]:
    fld = _field(args)
    q = quadratic_bent(parse_element(fld, args.alpha), fld)
    return q.f, {"is_gbent": True, "weakly_regular": True, "mu": q.mu, "dual_gbent": True}


def _construct_mm(args) -> tuple[GFunction, dict]:
    g = parse_table(args.g or "pow:1,scale:0", args.p, args.p**args.k)
    return mm_gbent(g, args.p, args.k), {"is_gbent": True, "regularity": REGULAR, "dual_gbent": True}


def _construct_selfdual(args) -> tuple[GFunction, dict]:
    if args.preset:
        table = {"3": (3, presets.selfdual_z25_params), "4": (2, presets.selfdual_f49_params)}
        if args.preset not in table:
            raise ConstructionError("selfdual presets are 3 and 4")
        case, make = table[args.preset]
        params = make()
        case = args.case or case
    else:
        if not (args.poly and args.a and args.alpha and args.beta and args.f and args.case):
            raise ConstructionError("selfdual needs --preset or --case --p --poly --a --alpha --beta --f (p times)")
        fld = _field(args, primitive=True)
        fs = tuple(read_table(path) for path in args.f)
        k = fs[0].k
        params = SymmetricParams(fld, parse_element(fld, args.a), parse_element(fld, args.alpha),
                              parse_element(fld, args.beta), fs, parse_table(args.g or "pow:1,scale:0", args.p, args.p**k))
        case = args.case
    return build_selfdual(case, params).F, {"is_gbent": True, "self_dual": True}


def _construct_indirect(args) -> tuple[GFunction, dict]:
    if args.preset:
        if args.preset not in ("bad", "good"):
            raise ConstructionError("indirect presets are 'bad' (one f_i with non-gbent dual) and 'good'")
        built = presets.indirect_sum_instance(args.preset == "bad")
    else:
        if not (args.f and args.gs and args.g):
            raise ConstructionError("indirect needs --preset or --f (p^t files) --gs (t+1 files) --g")
        fs = [read_table(path) for path in args.f]
        gs = [read_table(path) for path in args.gs]
        t = len(gs) - 1
        built = build_indirect_sum(fs, gs, parse_table(args.g, fs[0].p ** t, fs[0].modulus))
    return built.F, {"is_gbent": True, "dual_gbent": built.dual_gbent_predicted}


_BUILDERS = {
    "twisted": _construct_twisted,
    "quadratic": _construct_quadratic,
    "mm": _construct_mm,
    "selfdual": _construct_selfdual,
    "indirect": _construct_indirect,
}


def cmd_construct(args) -> int:
    f, expected = _BUILDERS[args.kind](args)
    if args.output:
        write_table(f, args.output)
        Path(str(args.output) + ".expected.json").write_text(json.dumps(expected, indent=2) + "\n")
        print(f"wrote {args.output} ({f.spec.size} points) and {args.output}.expected.json", file=sys.stderr)
    else:
        sys.stdout.write(dumps(f))
        print(json.dumps(expected), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- decomposition and searches

def cmd_decompose(args) -> int:
    f = read_table(args.file)
    if args.which == "lambda":
        lam = extract_lambda(f)
        payload = {"lambda": lam.lam.tolist(), "matches_dual": lam.matches_dual}
        _emit(args, payload, " ".join(map(str, lam.lam.tolist())) + f"\nmatches low digits of f*: {lam.matches_dual}")
        return EXIT_OK if lam.matches_dual else EXIT_NEGATIVE
    check = check_components_bent if args.which == "components" else check_dual_components
    report = check(f, budget=args.budget, threads=args.threads)
    _emit(args, report.to_dict(), f"{report.name}: {report.status}\n{report.detail}")
    return EXIT_NEGATIVE if report.status == "violated" else EXIT_OK


def cmd_search_selfdual(args) -> int:
    spec = DomainSpec.parse(args.p, args.domain)
    res = search_self_dual(args.p, args.k, spec, budget=args.budget)
    payload = {"p": args.p, "k": args.k, "spec": str(spec), "examined": res.examined,
               "count": res.count, "witnesses": [w.values.tolist() for w in res.witnesses[:20]]}
    _emit(args, payload, f"examined {res.examined} functions, {res.count} self-dual gbent")
    return EXIT_OK


def cmd_verify_preset(args) -> int:
    claims, seconds = presets.timed_verify(args.item)
    ok = all(c.ok for c in claims)
    payload = {"item": args.item, "pass": ok, "seconds": round(seconds, 3),
               "claims": [c.__dict__ for c in claims]}
    text = "\n".join(f"[{'ok' if c.ok else 'FAIL'}] {c.text}" + (f" ({c.detail})" if c.detail else "")
                     for c in claims)
    _emit(args, payload, text + f"\n{args.item}: {'PASS' if ok else 'FAIL'} in {seconds:.2f}s")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=10**5, help="cap on exhaustive enumerations")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", help="output path")

    ap = argparse.ArgumentParser(prog="gbent", description="Exact analysis of generalized bent functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="bentness certificate of a table file")
    s.add_argument("file")
    s.add_argument("--expect", help="sidecar written by construct; compare verdicts")
    s.add_argument("--degree", action="store_true", help="search for a non-constant second derivative")
    s.add_argument("--full", action="store_true", help="include the epsilon table in JSON")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("dual", parents=[common], help="write the dual table")
    s.add_argument("file")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("transform", parents=[common], help="exact Walsh spectrum")
    s.add_argument("file")
    s.add_argument("--naive", action="store_true", help="direct character sums instead of the fast transform")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("construct", parents=[common], help="build a function from a construction")
    s.add_argument("kind", choices=sorted(_BUILDERS))
    s.add_argument("--preset", help="named parameter set")
    s.add_argument("--case", type=int, choices=(1, 2, 3))
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--poly", help="minimal polynomial, constant term first, e.g. 2,4,1")
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--a")
    s.add_argument("--g", help="table: comma list or pow:e,scale:c")
    s.add_argument("--f", action="append", help="function file (repeat)")
    s.add_argument("--gs", action="append", help="selector block file (repeat)")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("decompose", parents=[common], help="p-ary component checks")
    s.add_argument("which", choices=("components", "dual-components", "lambda"))
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("search-selfdual", parents=[common], help="exhaustive self-dual search")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--domain", default="dot:1")
    s.set_defaults(func=cmd_search_selfdual)

    s = sub.add_parser("verify-preset", parents=[common], help="scripted check of a reference instance")
    s.add_argument("item", choices=presets.ITEMS)
    s.set_defaults(func=cmd_verify_preset)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"construction error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, FormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GBentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
