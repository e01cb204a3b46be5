#!/usr/bin/env python3
"""Compare genus-0 and genus-1 retrieval rates at q = 43, X = T = 16.

Builds both schemes, verifies them, and runs one retrieval round each.
"""

import random
from fractions import Fraction

from agpir import (
    Database,
    SchemeParams,
    build_scheme,
    max_rate_g0,
    max_rate_g1,
    run_retrieval,
    verify_scheme,
)


def main() -> None:
    g0 = max_rate_g0(43, 16, 16)
    g1 = max_rate_g1(43, 16, 16, curve=(0, 9))
    print(f"genus 0: L={g0.l} N={g0.n} rate={g0.rate} ({float(g0.rate):.4f})")
    print(
        f"genus 1: L={g1.l} N={g1.n} rate={g1.rate} ({float(g1.rate):.4f})"
        f"  [curve y^2 = x^3 + 9, {g1.points} points, Z={g1.z}]"
    )
    gain = g1.rate / g0.rate - 1
    print(f"rate gain: {gain} = {float(gain):.2%}")
    assert g1.rate / g0.rate >= Fraction(11, 10)

    for row in (g0, g1):
        curve = None if row.genus == 0 else (row.curve_a, row.curve_b)
        inst = build_scheme(
            SchemeParams(p=43, genus=row.genus, x=16, t=16, l=row.l, curve=curve)
        )
        report = verify_scheme(inst, subsets="sample", sample_count=100)
        db = Database.random(43, 3, inst.l, random.Random(0))
        transcript = run_retrieval(inst, db, theta=2, seed=0)
        ok = report.passed and transcript.decoded == db.files[1]
        print(f"genus {row.genus}: verified={report.passed} round-trip={'ok' if ok else 'BAD'}")


if __name__ == "__main__":
    main()
