"""Best achievable rates per genus, and the genus-0 vs genus-1 sweep."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import EllipticCurve, find_curve, hasse_window
from .field import PrimeField

# Pinned comparison curve for q = 127 so sweep output is reproducible
# even though several curves attain the maximal point count.
CURVE_PRESETS: dict[int, tuple[int, int]] = {127: (1, 33)}


@dataclass(frozen=True)
class SweepRow:
    """One (genus, X = T) data point of the rate comparison."""

    q: int
    genus: int
    x: int
    t: int
    feasible: bool
    l: int | None = None
    n: int | None = None
    rate: Fraction | None = None
    curve_a: int | None = None
    curve_b: int | None = None
    points: int | None = None
    z: int | None = None


def resolve_curve(
    field: PrimeField, curve: EllipticCurve | tuple[int, int] | None
) -> EllipticCurve:
    """Explicit coefficients win, then the per-q preset, then a maximal-curve search."""
    if isinstance(curve, EllipticCurve):
        return curve
    if curve is not None:
        return EllipticCurve(field, *curve)
    preset = CURVE_PRESETS.get(field.p)
    if preset is not None:
        return EllipticCurve(field, *preset)
    return find_curve(field, hasse_window(field.p)[1])


def max_rate_g0(q: int, x: int, t: int) -> SweepRow:
    """Largest L with q + 1 >= 2L + X + T + 1; N = L + X + T."""
    PrimeField(q)
    best = (q - x - t) // 2
    if best < 1:
        return SweepRow(q=q, genus=0, x=x, t=t, feasible=False)
    n = best + x + t
    return SweepRow(q=q, genus=0, x=x, t=t, feasible=True, l=best, n=n, rate=Fraction(best, n))


def max_rate_g1(
    q: int, x: int, t: int, curve: EllipticCurve | tuple[int, int] | None = None
) -> SweepRow:
    """Largest odd L with #points >= 2L + X + T + 11 + Z; N = L + X + T + 8."""
    field = PrimeField(q)
    model = resolve_curve(field, curve)
    points = model.point_count()
    z = len(model.zeros_of_y())
    best = (points - x - t - 11 - z) // 2
    if best % 2 == 0:
        best -= 1
    info = dict(curve_a=model.a, curve_b=model.b, points=points, z=z)
    if best < 1:
        return SweepRow(q=q, genus=1, x=x, t=t, feasible=False, **info)
    n = best + x + t + 8
    return SweepRow(
        q=q, genus=1, x=x, t=t, feasible=True, l=best, n=n, rate=Fraction(best, n), **info
    )


@dataclass(frozen=True)
class SweepResult:
    q: int
    curve: EllipticCurve
    rows: tuple[SweepRow, ...]
    crossover_xt: int | None
    g0_max_feasible_xt: int | None
    g1_max_feasible_xt: int | None


def sweep(
    q: int,
    xt_min: int,
    xt_max: int,
    curve: EllipticCurve | tuple[int, int] | None = None,
) -> SweepResult:
    """Both genera across X = T in [xt_min, xt_max], plus the crossover summary.

    The crossover is the smallest X = T where the genus-1 rate strictly
    beats genus 0 (an infeasible genus-0 row counts as beaten).
    """
    if xt_min < 1 or xt_max < xt_min:
        raise ValueError("need 1 <= xt_min <= xt_max")
    field = PrimeField(q)
    model = resolve_curve(field, curve)
    g0_rows = [max_rate_g0(q, xt, xt) for xt in range(xt_min, xt_max + 1)]
    g1_rows = [max_rate_g1(q, xt, xt, model) for xt in range(xt_min, xt_max + 1)]
    crossover = None
    for r0, r1 in zip(g0_rows, g1_rows):
        if r1.feasible and (not r0.feasible or r1.rate > r0.rate):
            crossover = r1.x
            break
    g0_max = max((r.x for r in g0_rows if r.feasible), default=None)
    g1_max = max((r.x for r in g1_rows if r.feasible), default=None)
    return SweepResult(
        q=q,
        curve=model,
        rows=tuple(g0_rows) + tuple(g1_rows),
        crossover_xt=crossover,
        g0_max_feasible_xt=g0_max,
        g1_max_feasible_xt=g1_max,
    )


CSV_HEADER = "q,genus,X,T,L,N,rate_num,rate_den,rate,curve_a,curve_b,points,Z,feasible"


def rows_to_csv(rows: tuple[SweepRow, ...]) -> str:
    """Deterministic CSV sorted by (genus, X); empty cells where not applicable."""
    out = [CSV_HEADER]
    for r in sorted(rows, key=lambda row: (row.genus, row.x)):
        cell = lambda v: "" if v is None else str(v)
        rate = "" if r.rate is None else f"{float(r.rate):.4f}"
        rate_num = "" if r.rate is None else str(r.rate.numerator)
        rate_den = "" if r.rate is None else str(r.rate.denominator)
        out.append(
            ",".join(
                [
                    str(r.q),
                    str(r.genus),
                    str(r.x),
                    str(r.t),
                    cell(r.l),
                    cell(r.n),
                    rate_num,
                    rate_den,
                    rate,
                    cell(r.curve_a),
                    cell(r.curve_b),
                    cell(r.points),
                    cell(r.z),
                    str(r.feasible).lower(),
                ]
            )
        )
    return "\n".join(out) + "\n"
