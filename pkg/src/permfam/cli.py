"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical assertion
fails (criterion/oracle disagreement, counterexample failure, bench
mismatch), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import statistics
import sys
import time
from typing import Optional

from . import families
from .families import (SPECIAL_CASES, Decomposition, Degenerate, FamilyParams, InvalidParams,
                       b_poly, decompose, eval_fast, f_poly, g_map, special_case)
from .field import DEFAULT_MAX_ELEMS, FieldError, GF, parse_field_spec
from .oracle import permutes_fq2, validate_lemma_lemx, validate_lemma_old, validate_lemma_scr
from .poly import INFINITY
from .sweep import CSV_COLUMNS, SCHEMA, SweepConfig, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ACCEPTANCE_FIELDS = ("2^1", "3^1", "2^2", "5^1", "7^1", "2^3", "3^2", "11^1", "13^1")


class UsageError(Exception):
    pass


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def _point_json(P):
    return None if P is INFINITY else P


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _add_params_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--field", required=True, help="field spec p^k naming GF(q)")
    sp.add_argument("--family", choices=families.FAMILIES)
    sp.add_argument("--special", choices=SPECIAL_CASES,
                    help="build the parameters from a named special case")
    sp.add_argument("--r", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, help="set r = n + m(q+1)")
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--sign", type=int, default=1, choices=(1, -1), help="sign for FFLW cases")
    sp.add_argument("--max-elems", type=int, default=DEFAULT_MAX_ELEMS)


def _field(args) -> GF:
    return parse_field_spec(args.field, args.max_elems)


def _params(args, F: GF) -> FamilyParams:
    if args.r is not None and args.m is not None:
        raise UsageError("give --r or --m, not both")
    elem = {name: (F.parse_element(getattr(args, name)) if getattr(args, name) is not None else None)
            for name in ("u", "v", "a", "b")}
    if args.special:
        return special_case(args.special, F, args.n, m=args.m, r=args.r, sign=args.sign, **elem)
    if args.family is None:
        raise UsageError("--family or --special is required")
    r = args.r if args.r is not None else args.n + (args.m or 0) * (F.q + 1)
    if elem["v"] is None:
        raise UsageError("--v is required")
    if args.family == "thm1" and elem["u"] is None:
        raise UsageError("thm1 needs --u")
    if args.family == "thm2" and elem["u"] is not None:
        raise UsageError("thm2 takes no --u")
    a = elem["a"] if elem["a"] is not None else 1
    b = elem["b"] if elem["b"] is not None else 1
    return FamilyParams(F, args.family, r, args.n, v=elem["v"], a=a, b=b, u=elem["u"])


def _verdict_word(flag: bool) -> str:
    return "permutation" if flag else "not-permutation"


def _emit(report: dict, line: str, as_json: bool) -> None:
    if as_json:
        print(line, file=sys.stderr)
        print(dump_json(report))
    else:
        print(line)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def decomposition_identity(params: FamilyParams, d: Decomposition) -> Optional[tuple]:
    """First point of mu where the factored and direct evaluations differ, or None."""
    g = g_map(params.n, b_poly(params))
    for x in params.field.mu:
        if eval_fast(d, x) != g(x):
            return (x, _point_json(eval_fast(d, x)), _point_json(g(x)))
    return None


def cmd_check(args) -> int:
    F = _field(args)
    params = _params(args, F)
    timings = {}
    t0 = time.perf_counter_ns()
    crit = families.criterion(params)
    timings["criterion_ns"] = time.perf_counter_ns() - t0
    B = b_poly(params)
    report = {"schema": SCHEMA, "command": "check", "params": params.to_dict(),
              "deg_B": B.degree, "criterion": crit}
    status = "OK"
    if args.oracle:
        t0 = time.perf_counter_ns()
        verdict = permutes_fq2(F, f_poly(params), args.max_elems)
        timings["oracle_ns"] = time.perf_counter_ns() - t0
        report["oracle"] = {"is_permutation": verdict.is_permutation,
                            "witness": list(verdict.witness) if verdict.witness else None}
        if verdict.is_permutation != crit:
            status = "DISAGREEMENT"
    if args.full:
        t0 = time.perf_counter_ns()
        lemmas = {"old": validate_lemma_old(F, params.r, B),
                  "lemx": validate_lemma_lemx(F, params.r, B),
                  "scr": validate_lemma_scr(F, B, params.n)}
        report["lemmas"] = lemmas
        try:
            d = decompose(params)
        except Degenerate:
            constant = g_map(params.n, B).is_constant()
            report["decomposition"] = {"degenerate": True, "g_constant": constant}
            ok = constant
        else:
            bad = decomposition_identity(params, d)
            report["decomposition"] = {"degenerate": False, "identity_holds": bad is None,
                                       "mismatch": list(bad) if bad else None}
            ok = bad is None
        timings["full_ns"] = time.perf_counter_ns() - t0
        if status == "OK" and not (ok and all(lemmas.values())):
            status = "FAILED"
    report["status"] = status
    if args.timings:
        report["timings_ns"] = timings
    line = f"{params.to_text()}: criterion={_verdict_word(crit)}"
    if args.oracle:
        line += f" oracle={_verdict_word(report['oracle']['is_permutation'])}"
    if args.full:
        line += " lemmas=" + ",".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in report["lemmas"].items())
    line += f" [{status}]"
    _emit(report, line, args.json)
    return EXIT_OK if status == "OK" else EXIT_FAIL


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _field_list(specs) -> list:
    out = []
    for chunk in specs or ():
        for s in chunk.split(","):
            if s.strip():
                p, _, k = s.strip().partition("^")
                try:
                    out.append((int(p), int(k or 1)))
                except ValueError as exc:
                    raise FieldError(f"cannot parse field spec {s!r}") from exc
    return out


def _sweep_config(args, specs) -> SweepConfig:
    return SweepConfig(
        fields=_field_list(specs),
        families=tuple(args.family) if args.family else families.FAMILIES,
        n_max=args.n_max,
        ms=tuple(args.m) if args.m else (0, 1),
        strategy=args.strategy,
        samples=args.samples,
        seed=args.seed,
        oracle=not args.no_oracle,
        threads=args.threads,
        max_elems=args.max_elems,
        keep_rows=bool(args.csv),
    )


def cmd_sweep(args) -> int:
    specs = list(args.field or [])
    if args.preset == "acceptance":
        specs.extend(ACCEPTANCE_FIELDS)
    try:
        config = _sweep_config(args, specs)
    except FieldError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = run_sweep(config, timings=args.timings)
    rows = report.pop("_rows", [])
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            writer.writerows(rows)
    c = report["counts"]
    line = (f"sweep: {c['tuples']} tuples, criterion true {c['criterion_true']}, "
            f"false {c['criterion_false']}, disagreements {c['disagreements']} [{report['status']}]")
    for rec in report["disagreements"][:10]:
        line += f"\n  DISAGREEMENT {rec['text']} criterion={rec['criterion']} " \
                f"oracle={rec['oracle']} witness={rec['witness']}"
    _emit(report, line, args.json)
    return EXIT_FAIL if report["disagreements"] else EXIT_OK


# ---------------------------------------------------------------------------
# counterexamples
# ---------------------------------------------------------------------------

def counterexample_facts(max_elems: int = DEFAULT_MAX_ELEMS) -> list[dict]:
    """The two published counterexamples, each fact checked independently."""
    facts = []

    def fact(case: str, claim: str, holds: bool, **detail):
        facts.append({"case": case, "claim": claim, "holds": bool(holds), **detail})

    F = parse_field_spec("2^5", max_elems)
    P = special_case("PUW8", F, 11, m=1)
    v = permutes_fq2(F, f_poly(P))
    fact("PUW8", "parameters q=32 n=11 r=44 a=b=1 {u,v}=GF(4)\\GF(2)",
         (F.q, P.n, P.r, P.a, P.b) == (32, 11, 44, 1, 1) and {P.u, P.v} == set(F.f4_pair()),
         params=P.to_dict())
    fact("PUW8", "oracle: f permutes GF(1024)", v.is_permutation, field_size=F.order)
    fact("PUW8", "corrected criterion true", families.criterion(P))
    fact("PUW8", "gcd(n, q^2-1) = gcd(11, 1023) = 11 != 1",
         math.gcd(P.n, F.order - 1) == 11, value=math.gcd(P.n, F.order - 1))

    F = parse_field_spec("2^7", max_elems)
    P = special_case("PUW9", F, 43, m=1)
    v = permutes_fq2(F, f_poly(P))
    fact("PUW9", "parameters q=128 n=43 r=172 a=v b=u {u,v}=GF(4)\\GF(2)",
         (F.q, P.n, P.r) == (128, 43, 172) and P.a == P.v and P.b == P.u
         and {P.u, P.v} == set(F.f4_pair()), params=P.to_dict())
    fact("PUW9", "oracle: f permutes GF(16384)", v.is_permutation, field_size=F.order)
    fact("PUW9", "corrected criterion true", families.criterion(P))
    fact("PUW9", "n = 43 = 1 (mod 3)", P.n % 3 == 1)
    fact("PUW9", "gcd(n, q^2-1) = gcd(43, 16383) = 43 != 1",
         math.gcd(P.n, F.order - 1) == 43, value=math.gcd(P.n, F.order - 1))
    return facts


def cmd_counterexamples(args) -> int:
    facts = counterexample_facts(args.max_elems)
    ok = all(f["holds"] for f in facts)
    report = {"schema": SCHEMA, "command": "counterexamples", "facts": facts,
              "status": "OK" if ok else "FAILED"}
    line = "\n".join(f"[{'PASS' if f['holds'] else 'FAIL'}] {f['case']}: {f['claim']}" for f in facts)
    line += f"\ncounterexamples [{report['status']}]"
    _emit(report, line, args.json)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def bench(params: FamilyParams, repetitions: int) -> dict:
    F = params.field
    d = decompose(params)
    g = g_map(params.n, b_poly(params))
    points = list(F.mu)
    fast = [eval_fast(d, x) for x in points]
    direct = [g(x) for x in points]
    mismatches = [x for x, s, t in zip(points, fast, direct) if s != t]
    fast_ns, direct_ns = [], []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        for x in points:
            eval_fast(d, x)
        t1 = time.perf_counter_ns()
        for x in points:
            g(x)
        t2 = time.perf_counter_ns()
        fast_ns.append((t1 - t0) / len(points))
        direct_ns.append((t2 - t1) / len(points))
    out = {"schema": SCHEMA, "command": "bench", "params": params.to_dict(),
           "points": len(points), "deg_g": g.degree, "repetitions": repetitions,
           "outputs_equal": not mismatches, "mismatches": mismatches[:10]}
    if repetitions:
        fast_med, direct_med = statistics.median(fast_ns), statistics.median(direct_ns)
        out.update(fast_ns_per_point=round(fast_med, 1), direct_ns_per_point=round(direct_med, 1),
                   speedup=round(direct_med / fast_med, 3) if fast_med else None)
    else:
        out.update(fast_ns_per_point=None, direct_ns_per_point=None, speedup=None)
    out["status"] = "OK" if not mismatches else "MISMATCH"
    return out


def cmd_bench(args) -> int:
    F = _field(args)
    params = _params(args, F)
    try:
        report = bench(params, args.repetitions)
    except Degenerate as exc:
        raise UsageError(str(exc)) from exc
    line = (f"bench {params.to_text()}: {report['points']} points, deg g = {report['deg_g']}, "
            f"fast {report['fast_ns_per_point']} ns/pt, direct {report['direct_ns_per_point']} ns/pt, "
            f"speedup {report['speedup']}, outputs equal: {report['outputs_equal']}")
    _emit(report, line, args.json)
    return EXIT_OK if report["outputs_equal"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# field-info
# ---------------------------------------------------------------------------

def cmd_field_info(args) -> int:
    F = _field(args)
    report = {"schema": SCHEMA, "command": "field-info", "p": F.p, "k": F.k, "q": F.q,
              "order": F.order, "modulus": list(F.modulus), "modulus_str": F.modulus_str(),
              "generator": F.generator, "mu_size": len(F.mu)}
    line = (f"p={F.p} k={F.k} q={F.q} |GF(q^2)|={F.order} modulus={F.modulus_str()} "
            f"generator={F.generator} |mu_(q+1)|={len(F.mu)}")
    _emit(report, line, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permfam",
        description="Permutation criteria for X^r B(X^(q-1)) over GF(q^2), checked by brute force.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="decide one parameter set")
    _add_params_args(sp)
    sp.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    sp.add_argument("--full", action="store_true", help="also validate the lemma chain and factorization")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timings", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sweep", help="compare criterion and oracle over a parameter space")
    sp.add_argument("--field", action="append", help="p^k, repeatable or comma separated")
    sp.add_argument("--preset", choices=("acceptance",), help="add the standard field list")
    sp.add_argument("--family", action="append", choices=families.FAMILIES)
    sp.add_argument("--n-max", type=int, help="largest n (default q+1)")
    sp.add_argument("--m", type=int, action="append", help="shifts m with r = n + m(q+1) (default 0 and 1)")
    sp.add_argument("--strategy", choices=("a-normalized", "exhaustive", "sampled"), default="a-normalized")
    sp.add_argument("--samples", type=int, default=32, help="(a, b) pairs per slot when sampled")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-oracle", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--csv", help="write per-tuple rows to this file")
    sp.add_argument("--timings", action="store_true", help="include wall time in the report")
    sp.add_argument("--max-elems", type=int, default=DEFAULT_MAX_ELEMS)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("counterexamples", help="reproduce the q=32 and q=128 counterexamples")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-elems", type=int, default=DEFAULT_MAX_ELEMS)
    sp.set_defaults(func=cmd_counterexamples)

    sp = sub.add_parser("bench", help="time factored versus direct evaluation on mu_(q+1)")
    _add_params_args(sp)
    sp.add_argument("--repetitions", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("field-info", help="describe GF(q^2)")
    sp.add_argument("--field", required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-elems", type=int, default=DEFAULT_MAX_ELEMS)
    sp.set_defaults(func=cmd_field_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FieldError, InvalidParams) as exc:
        print(f"permfam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
