"""Command-line surface: count-points, find-curve, build, simulate, verify, sweep."""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations
from math import comb
from pathlib import Path

from .curve import EllipticCurve, find_curve
from .errors import TooLarge
from .field import PrimeField
from .pir_scheme import (
    Database,
    SchemeParams,
    build_scheme,
    check_noise_containment,
    scheme_descriptor,
    scheme_from_descriptor,
    verify_scheme,
)
from .rates import max_rate_g0, max_rate_g1, resolve_curve, rows_to_csv, sweep
from .sim_harness import (
    exhaustive_privacy_oracle,
    exhaustive_security_oracle,
    run_retrieval,
)

# Exhaustively enumerated subsets per oracle run in `verify --exhaustive-oracle`.
ORACLE_SUBSET_LIMIT = 2000


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _curve_json(curve: EllipticCurve) -> dict:
    return {
        "p": curve.field.p,
        "a": curve.a,
        "b": curve.b,
        "points": curve.point_count(),
        "z": len(curve.zeros_of_y()),
    }


def cmd_count_points(args) -> int:
    curve = EllipticCurve(PrimeField(args.p), args.a, args.b)
    print(json.dumps(_curve_json(curve)))
    return 0


def cmd_find_curve(args) -> int:
    curve = find_curve(PrimeField(args.p), args.min_points)
    print(json.dumps(_curve_json(curve)))
    return 0


def cmd_build(args) -> int:
    field = PrimeField(args.p)
    curve = None
    if args.genus == 1:
        explicit = (args.a, args.b) if args.a is not None or args.b is not None else None
        if explicit is not None and (args.a is None or args.b is None):
            print("error: --a and --b must be given together", file=sys.stderr)
            return 2
        model = resolve_curve(field, explicit)
        curve = (model.a, model.b)
    big_l = args.l
    if big_l is None:
        row = max_rate_g0(args.p, args.x, args.t) if args.genus == 0 else max_rate_g1(
            args.p, args.x, args.t, curve
        )
        if not row.feasible:
            print("error: no feasible L for these parameters", file=sys.stderr)
            return 1
        big_l = row.l
    elif args.genus == 1 and big_l % 2 == 0:
        print(f"warning: genus 1 needs odd L; using L = {big_l - 1}", file=sys.stderr)
        big_l -= 1
    params = SchemeParams(
        p=args.p, genus=args.genus, x=args.x, t=args.t, l=big_l, curve=curve, seed=args.seed
    )
    inst = build_scheme(params)
    _write(args.out, json.dumps(scheme_descriptor(inst), indent=2))
    print(f"built N={inst.n} rate={inst.rate} ({float(inst.rate):.4f})", file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    inst = scheme_from_descriptor(json.loads(Path(args.scheme).read_text()))
    # The database is drawn first from its own generator seeded identically;
    # the protocol stream (store, then queries) restarts from the same seed.
    db = Database.random(inst.p, args.files, inst.l, random.Random(args.seed))
    transcript = run_retrieval(inst, db, args.theta, args.seed)
    _write(args.out, transcript.to_json())
    print(f"decoded file {args.theta}: {list(transcript.decoded)}", file=sys.stderr)
    return 0


def _parse_subsets(spec: str) -> tuple[str, int, int]:
    if spec == "all":
        return "all", 0, 0
    if spec.startswith("sample:"):
        parts = spec.split(":")
        if len(parts) == 3:
            return "sample", int(parts[1]), int(parts[2])
    raise argparse.ArgumentTypeError(f"expected 'all' or 'sample:COUNT:SEED', got {spec!r}")


def _oracle_lines(inst) -> list[str]:
    lines = []
    p = inst.p
    db_a = Database(p, tuple((0,) * inst.l for _ in range(2)))
    db_b = Database(p, tuple(tuple((m + i + 1) % p for i in range(inst.l)) for m in range(2)))

    def sweep_subsets(size, runner, label):
        if comb(inst.n, size) > ORACLE_SUBSET_LIMIT:
            lines.append(f"SKIP  {label}: C({inst.n}, {size}) subsets is too many to enumerate")
            return
        try:
            bad = [s for s in combinations(range(inst.n), size) if not runner(s)]
        except TooLarge as exc:
            lines.append(f"SKIP  {label}: {exc}")
            return
        ok = not bad
        lines.append(
            f"{'PASS' if ok else 'FAIL'}  {label}: all {comb(inst.n, size)} subsets"
            + ("" if ok else f" (first failure {bad[0]})")
        )

    sweep_subsets(
        inst.t,
        lambda s: exhaustive_privacy_oracle(inst, s, 1, 2, num_files=2),
        f"privacy oracle, |I| = T = {inst.t}",
    )
    sweep_subsets(
        inst.x,
        lambda s: exhaustive_security_oracle(inst, s, db_a, db_b),
        f"security oracle, |I| = X = {inst.x}",
    )
    return lines


def cmd_verify(args) -> int:
    inst = scheme_from_descriptor(json.loads(Path(args.scheme).read_text()))
    mode, count, seed = _parse_subsets(args.subsets)
    report = verify_scheme(inst, subsets=mode, sample_count=count or 300, sample_seed=seed)
    lines = report.lines()
    containment = check_noise_containment(inst)
    bad = [label for label, ok in containment if not ok]
    lines.append(
        ("PASS" if not bad else "FAIL")
        + f"  noise containment: {len(containment)} products inside the noise bound"
        + ("" if not bad else f" (first failure {bad[0]})")
    )
    failed = not report.passed or bool(bad)
    if args.exhaustive_oracle:
        oracle_lines = _oracle_lines(inst)
        lines.extend(oracle_lines)
        failed = failed or any(line.startswith("FAIL") for line in oracle_lines)
    print("\n".join(lines))
    return 1 if failed else 0


def cmd_sweep(args) -> int:
    result = sweep(args.p, args.xt_min, args.xt_max)
    _write(args.out, rows_to_csv(result.rows))
    print(f"curve: a={result.curve.a} b={result.curve.b} points={result.curve.point_count()} z={len(result.curve.zeros_of_y())}")
    print(f"crossover_xt={result.crossover_xt}")
    print(f"genus0_max_feasible_xt={result.g0_max_feasible_xt}")
    print(f"genus1_max_feasible_xt={result.g1_max_feasible_xt}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agpir",
        description="X-secure, T-private information retrieval from curve evaluation codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cp = sub.add_parser("count-points", help="count rational points of y^2 = x^3 + ax + b")
    cp.add_argument("--p", type=int, required=True)
    cp.add_argument("--a", type=int, required=True)
    cp.add_argument("--b", type=int, required=True)
    cp.set_defaults(func=cmd_count_points)

    fc = sub.add_parser("find-curve", help="first curve with at least the requested points")
    fc.add_argument("--p", type=int, required=True)
    fc.add_argument("--min-points", type=int, required=True)
    fc.set_defaults(func=cmd_find_curve)

    bd = sub.add_parser("build", help="build a scheme and write its JSON descriptor")
    bd.add_argument("--p", type=int, required=True)
    bd.add_argument("--genus", type=int, choices=(0, 1), required=True)
    bd.add_argument("--x", type=int, required=True)
    bd.add_argument("--t", type=int, required=True)
    bd.add_argument("--l", type=int, default=None)
    bd.add_argument("--a", type=int, default=None)
    bd.add_argument("--b", type=int, default=None)
    bd.add_argument("--seed", type=int, default=0)
    bd.add_argument("--out", default="-")
    bd.set_defaults(func=cmd_build)

    sm = sub.add_parser("simulate", help="run one retrieval round and write the transcript")
    sm.add_argument("--scheme", required=True)
    sm.add_argument("--files", type=int, required=True)
    sm.add_argument("--theta", type=int, required=True)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--out", default="-")
    sm.set_defaults(func=cmd_simulate)

    vf = sub.add_parser("verify", help="check decodability and collusion criteria")
    vf.add_argument("--scheme", required=True)
    vf.add_argument("--subsets", default="all")
    vf.add_argument("--exhaustive-oracle", action="store_true")
    vf.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="rate comparison CSV across X = T")
    sw.add_argument("--p", type=int, required=True)
    sw.add_argument("--xt-min", type=int, required=True)
    sw.add_argument("--xt-max", type=int, required=True)
    sw.add_argument("--out", default="-")
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
