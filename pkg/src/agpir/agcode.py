"""Evaluation codes over F_p: generators, duals, distances, subset-rank checks.

A LinearCode keeps the raw spanning rows it was built from (for evaluation
codes, one row per basis function); the dimension is the rank of those
rows. Brute-force enumerations are capped, with the cap overridable via
the PIR_AG_MAX_BRUTEFORCE environment variable.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, NamedTuple, Sequence

from . import linalg
from .curve import CurvePoint, PointAtInfinity
from .errors import (
    DuplicatePoint,
    InfinityUnsupported,
    LengthMismatch,
    PoleAtEvaluationPoint,
    TooLarge,
)
from .function_space import RationalFunction

DEFAULT_CODEWORD_CAP = 10**6
DEFAULT_SUBSET_CAP = 10**7
DEFAULT_SAMPLE_COUNT = 300


def bruteforce_cap(default: int) -> int:
    env = os.environ.get("PIR_AG_MAX_BRUTEFORCE")
    return int(env) if env else default


@dataclass(frozen=True)
class LinearCode:
    """A linear code given by spanning rows over F_p (length n, dimension rank)."""

    p: int
    n: int
    rows: tuple[tuple[int, ...], ...]
    basis: tuple[RationalFunction, ...] | None = None
    points: tuple[CurvePoint, ...] | None = None

    def __post_init__(self):
        if any(len(r) != self.n for r in self.rows):
            raise LengthMismatch("all rows must have the code length")

    @cached_property
    def k(self) -> int:
        return linalg.rank(self.rows, self.p)

    @cached_property
    def generator(self) -> tuple[tuple[int, ...], ...]:
        """A full-rank generator matrix (nonzero rows of the reduced form)."""
        reduced, pivots = linalg.rref(self.rows, self.p)
        return tuple(tuple(row) for row in reduced[: len(pivots)])

    def __repr__(self) -> str:
        return f"[{self.n}, {self.k}] code over F_{self.p}"


def evaluation_code(
    basis: Sequence[RationalFunction], points: Sequence[CurvePoint], p: int | None = None
) -> LinearCode:
    """Evaluate each basis function at each point; rows index the basis.

    An empty basis yields the dimension-0 code (pass p explicitly then).
    """
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("evaluation points must be distinct")
    for pt in pts:
        if isinstance(pt, PointAtInfinity):
            raise InfinityUnsupported("cannot evaluate at the point at infinity")
    for f in basis:
        for pt in pts:
            if f.valuation(pt) < 0:
                raise PoleAtEvaluationPoint(f"{f!r} has a pole at {pt!r}")
    if basis:
        p = basis[0].curve.field.p
    elif p is None:
        raise ValueError("an empty basis needs an explicit modulus p")
    rows = tuple(tuple(f.eval_at(pt) for pt in pts) for f in basis)
    return LinearCode(p, len(pts), rows, basis=tuple(basis), points=pts)


def dual(code: LinearCode) -> LinearCode:
    """The dual code, as the nullspace of the generator rows."""
    null = linalg.nullspace(code.rows, code.n, code.p)
    return LinearCode(code.p, code.n, tuple(tuple(v) for v in null))


def min_distance(code: LinearCode, cap: int | None = None) -> int:
    """Minimum Hamming weight over all nonzero codewords, by brute force."""
    if code.k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    limit = cap if cap is not None else bruteforce_cap(DEFAULT_CODEWORD_CAP)
    total = code.p**code.k - 1
    if total > limit:
        raise TooLarge(f"{total} codewords exceeds the brute-force cap {limit}")
    gen = code.generator
    p = code.p
    best = code.n
    for coeffs in product(range(p), repeat=code.k):
        if not any(coeffs):
            continue
        weight = 0
        for j in range(code.n):
            if sum(c * gen[i][j] for i, c in enumerate(coeffs)) % p:
                weight += 1
                if weight >= best:
                    break
        if weight < best:
            best = weight
            if best == 1:
                break
    return best


class SubsetRankReport(NamedTuple):
    passed: bool
    t: int
    mode: str  # "all" or "sample"
    requested_mode: str
    checked: int
    total: int
    failures: tuple[tuple[int, ...], ...]
    seed: int | None = None


def subset_rank_check(
    code: LinearCode,
    t: int,
    mode: str = "all",
    sample_count: int = DEFAULT_SAMPLE_COUNT,
    seed: int = 0,
    cap: int | None = None,
) -> SubsetRankReport:
    """Check that (all or sampled) t-subsets of generator columns are independent.

    Exhaustive checking falls back to seeded sampling when the number of
    subsets exceeds the cap; the report records which mode actually ran.
    """
    if t > code.k:
        raise ValueError(f"t = {t} exceeds the code dimension {code.k}")
    if t < 0:
        raise ValueError("t must be >= 0")
    limit = cap if cap is not None else bruteforce_cap(DEFAULT_SUBSET_CAP)
    total = comb(code.n, t)
    requested = mode
    if mode == "all" and total > limit:
        mode = "sample"
    gen = code.generator
    p = code.p

    def cols_independent(cols: tuple[int, ...]) -> bool:
        sub = [[row[c] for c in cols] for row in gen]
        return linalg.rank(sub, p) == len(cols)

    failures: list[tuple[int, ...]] = []
    if mode == "all":
        subsets: Iterable[tuple[int, ...]] = combinations(range(code.n), t)
        checked = total
    elif mode == "sample":
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(code.n), t))) for _ in range(sample_count))
        checked = sample_count
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for cols in subsets:
        if not cols_independent(cols):
            failures.append(cols)
            if len(failures) >= 5:
                break
    return SubsetRankReport(
        passed=not failures,
        t=t,
        mode=mode,
        requested_mode=requested,
        checked=checked,
        total=total,
        failures=tuple(failures),
        seed=seed if mode == "sample" else None,
    )


def find_independent_columns(code: LinearCode, size: int) -> tuple[int, ...] | None:
    """Leftmost set of `size` linearly independent columns, or None if rank < size."""
    cols, achieved = information_set(code.rows, code.p, size)
    return cols if achieved == size else None


class InformationSet(NamedTuple):
    columns: tuple[int, ...]
    achieved: int


def information_set(rows: Sequence[Sequence[int]], p: int, want: int) -> InformationSet:
    """Leftmost pivot columns of the matrix, truncated to `want` of them."""
    _, pivots = linalg.rref(rows, p)
    cols = pivots[:want]
    return InformationSet(columns=cols, achieved=len(cols))


def is_grs(code: LinearCode, alphas: Sequence[int], multipliers: Sequence[int]) -> bool:
    """Whether the code equals the span of the rows (nu_j * alpha_j^i), i < k."""
    if len(alphas) != code.n or len(multipliers) != code.n:
        raise LengthMismatch("need one evaluation point and one multiplier per coordinate")
    p = code.p
    grs_rows = [
        [m % p * pow(a % p, i, p) % p for a, m in zip(alphas, multipliers)]
        for i in range(code.k)
    ]
    return linalg.row_space_equal(code.rows, grs_rows, p)
