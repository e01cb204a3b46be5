"""Materialize the genus-0 and genus-1 retrieval schemes and run the protocol.

A built instance is fully deterministic in its parameters: fragment points
are the canonically smallest usable points, evaluation points are the first
admissible points (reduced by an information set at genus 1), and all
protocol randomness flows through one caller-supplied generator with a fixed
stream order (security noise first, then privacy noise, each fragment-major
then file-major).

Fragments are plain field scalars: the encoding space is the constants, so
the decoded coefficient on each fragment basis function is the fragment
itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .agcode import (
    LinearCode,
    SubsetRankReport,
    evaluation_code,
    information_set,
    subset_rank_check,
)
from .curve import (
    INFINITY,
    AffinePoint,
    Curve,
    CurvePoint,
    EllipticCurve,
    PointAtInfinity,
    ProjectiveLine,
    find_curve,
    hasse_window,
)
from .errors import (
    BadL,
    BadTheta,
    CurveTooSmall,
    Infeasible,
    InconsistentSystem,
    ShapeMismatch,
)
from .field import PrimeField
from .function_space import (
    Divisor,
    RationalFunction,
    Y_ZEROS,
    basis_poles_at_infinity,
    interp_basis_g0,
    interp_basis_g1,
    noise_basis_g1,
)

Table = tuple[tuple[tuple[int, ...], ...], ...]  # indexed [fragment][file][server]


@dataclass(frozen=True)
class SchemeParams:
    """Parameters of one scheme: prime p, genus, security X, privacy T, fragments L."""

    p: int
    genus: int
    x: int
    t: int
    l: int
    curve: tuple[int, int] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.genus not in (0, 1):
            raise ValueError(f"genus must be 0 or 1, got {self.genus}")
        if self.x < 1 or self.t < 1:
            raise ValueError("security and privacy levels must both be >= 1")
        if self.l < 1:
            raise ValueError("need at least one fragment per file")
        if self.genus == 1 and self.l % 2 == 0:
            raise BadL(f"genus 1 requires an odd fragment count, got L = {self.l}")
        if self.genus == 0 and self.curve is not None:
            raise ValueError("genus 0 does not take curve coefficients")


@dataclass(frozen=True)
class Database:
    """M files of L fragments each; fragments are canonical residues mod p."""

    p: int
    files: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for f in self.files:
            if any(not 0 <= v < self.p for v in f):
                raise ValueError("fragments must be canonical residues in [0, p)")

    @classmethod
    def random(cls, p: int, num_files: int, num_fragments: int, rng: random.Random) -> "Database":
        return cls(
            p,
            tuple(
                tuple(rng.randrange(p) for _ in range(num_fragments)) for _ in range(num_files)
            ),
        )

    def __len__(self) -> int:
        return len(self.files)


@dataclass(frozen=True)
class SchemeInstance:
    """A fully materialized scheme: points, bases, codes, and the decode solver."""

    params: SchemeParams
    curve: Curve
    n: int
    fragment_points: tuple[CurvePoint, ...]
    eval_points: tuple[CurvePoint, ...]
    info_basis: tuple[RationalFunction, ...]
    noise_basis: tuple[RationalFunction, ...]
    priv_basis: tuple[RationalFunction, ...]
    sec_bases: tuple[tuple[RationalFunction, ...], ...]
    info_rows: tuple[tuple[int, ...], ...]
    noise_rows: tuple[tuple[int, ...], ...]
    priv_code: LinearCode
    sec_codes: tuple[LinearCode, ...]
    decode_cols: tuple[int, ...]
    decode_inv: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def field(self) -> PrimeField:
        return self.curve.field

    @property
    def genus(self) -> int:
        return self.params.genus

    @property
    def l(self) -> int:
        return self.params.l

    @property
    def x(self) -> int:
        return self.params.x

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def rate(self) -> Fraction:
        return Fraction(self.l, self.n)

    @property
    def sec_dim(self) -> int:
        return len(self.sec_bases[0])

    @property
    def priv_dim(self) -> int:
        return len(self.priv_basis)

    @cached_property
    def decode_rows(self) -> tuple[tuple[int, ...], ...]:
        return self.info_rows + self.noise_rows

    def noise_divisor(self) -> Divisor:
        """Upper bound on every noise-product divisor."""
        if self.genus == 0:
            return Divisor.of(self.curve, {INFINITY: self.x + self.t - 1})
        return Divisor.of(self.curve, {INFINITY: self.x + self.t + 4, Y_ZEROS: 1})

    def __repr__(self) -> str:
        return (
            f"SchemeInstance(p={self.p}, genus={self.genus}, X={self.x}, T={self.t}, "
            f"L={self.l}, N={self.n}, rate={self.rate})"
        )


def build_scheme(params: SchemeParams) -> SchemeInstance:
    """Build and sanity-check a deterministic scheme instance."""
    field = PrimeField(params.p)
    if params.genus == 0:
        return _build_genus0(params, field)
    return _build_genus1(params, field)


def _build_genus0(params: SchemeParams, field: PrimeField) -> SchemeInstance:
    q, big_l, x, t = params.p, params.l, params.x, params.t
    need = 2 * big_l + x + t + 1
    if q + 1 < need:
        raise Infeasible(
            f"genus 0 needs q + 1 >= 2L + X + T + 1; {q + 1} < {need} for "
            f"(q={q}, L={big_l}, X={x}, T={t})"
        )
    line = ProjectiveLine(field)
    n = big_l + x + t
    fragment = tuple(AffinePoint(alpha) for alpha in range(big_l))
    eval_points = tuple(AffinePoint(alpha) for alpha in range(big_l, big_l + n))
    info = interp_basis_g0(line, range(big_l))
    noise = basis_poles_at_infinity(line, x + t - 1)
    priv = basis_poles_at_infinity(line, t - 1)
    sec = tuple(
        tuple(h.inverse() * w for w in basis_poles_at_infinity(line, x - 1)) for h in info
    )
    return _finish(params, line, n, fragment, eval_points, info, noise, priv, sec)


def _build_genus1(params: SchemeParams, field: PrimeField) -> SchemeInstance:
    q, big_l, x, t = params.p, params.l, params.x, params.t
    if params.curve is not None:
        curve = EllipticCurve(field, *params.curve)
    else:
        curve = find_curve(field, hasse_window(q)[1])
    points = curve.enumerate_points()
    z = len(curve.zeros_of_y())
    need = 2 * big_l + x + t + 11 + z
    if len(points) < need:
        raise CurveTooSmall(
            f"curve has {len(points)} rational points but 2L + X + T + 11 + Z = {need} "
            f"are needed for (L={big_l}, X={x}, T={t}, Z={z})"
        )
    j = (big_l + 1) // 2
    pairs = []
    for pt in points:
        if isinstance(pt, PointAtInfinity) or pt.y == 0:
            continue
        if pairs and pairs[-1][0].x == pt.x:
            continue
        fiber = curve.fiber(pt.x)
        if len(fiber) == 2:
            pairs.append(fiber)
        if len(pairs) == j:
            break
    fragment = tuple(pt for pair in pairs for pt in pair)
    fragment_x = {pt.x for pt in fragment}
    candidates = [
        pt
        for pt in points
        if not isinstance(pt, PointAtInfinity) and pt.y != 0 and pt.x not in fragment_x
    ][: big_l + x + t + 9]
    info = interp_basis_g1(curve, pairs)
    noise = noise_basis_g1(curve, x + t + 4)
    priv = basis_poles_at_infinity(curve, t + 1)
    sec = tuple(
        tuple(h.inverse() * w for w in basis_poles_at_infinity(curve, x + 1)) for h in info
    )
    # Reduce the L+X+T+9 candidates to N = L+X+T+8 by keeping an information
    # set of the decode rows and filling with the leftmost remaining points.
    cand_rows = _eval_rows(info + noise, candidates)
    n = big_l + x + t + 8
    cols, achieved = information_set(cand_rows, q, want=len(cand_rows))
    if achieved != len(cand_rows):
        raise RuntimeError(
            f"decode rows have rank {achieved}, expected {len(cand_rows)}; "
            "candidate points do not separate the spaces"
        )
    chosen = set(cols)
    for idx in range(len(candidates)):
        if len(chosen) == n:
            break
        chosen.add(idx)
    eval_points = tuple(candidates[idx] for idx in sorted(chosen))
    return _finish(params, curve, n, fragment, eval_points, info, noise, priv, sec)


def _eval_rows(
    basis: Sequence[RationalFunction], points: Sequence[CurvePoint]
) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(f.eval_at(pt) for pt in points) for f in basis)


def _finish(params, curve, n, fragment, eval_points, info, noise, priv, sec) -> SchemeInstance:
    p = params.p
    info_rows = _eval_rows(info, eval_points)
    noise_rows = _eval_rows(noise, eval_points)
    decode_rows = info_rows + noise_rows
    info_rank = linalg.rank(info_rows, p)
    noise_rank = linalg.rank(noise_rows, p)
    combined = linalg.rank(decode_rows, p)
    if info_rank != params.l:
        raise RuntimeError(f"fragment basis rank {info_rank} != L = {params.l}")
    if noise_rank != len(noise):
        raise RuntimeError(f"noise spanning set is dependent: rank {noise_rank} of {len(noise)}")
    if combined != info_rank + noise_rank:
        raise RuntimeError("information and noise row spaces intersect")
    if params.genus == 0 and (len(decode_rows) != n or combined != n):
        raise RuntimeError("genus-0 decode matrix must be square and invertible")
    cols, achieved = information_set(decode_rows, p, want=len(decode_rows))
    if achieved != len(decode_rows):
        raise RuntimeError("decode matrix lost rank on the selected points")
    sub = linalg.columns(decode_rows, cols)
    inv = linalg.invert(linalg.transpose(sub), p)
    priv_code = evaluation_code(priv, eval_points)
    sec_codes = tuple(evaluation_code(basis, eval_points) for basis in sec)
    return SchemeInstance(
        params=params,
        curve=curve,
        n=n,
        fragment_points=tuple(fragment),
        eval_points=tuple(eval_points),
        info_basis=tuple(info),
        noise_basis=tuple(noise),
        priv_basis=tuple(priv),
        sec_bases=tuple(tuple(b) for b in sec),
        info_rows=info_rows,
        noise_rows=noise_rows,
        priv_code=priv_code,
        sec_codes=sec_codes,
        decode_cols=tuple(cols),
        decode_inv=tuple(tuple(row) for row in inv),
    )


# -- protocol ------------------------------------------------------------------------


def store(inst: SchemeInstance, db: Database, rng: random.Random) -> Table:
    """Encode the database into per-server shares (fragment + security noise)."""
    if db.p != inst.p:
        raise ShapeMismatch(f"database is over F_{db.p}, scheme over F_{inst.p}")
    if any(len(f) != inst.l for f in db.files):
        raise ShapeMismatch(f"every file must have exactly L = {inst.l} fragments")
    p = inst.p
    shares = []
    for ell in range(inst.l):
        sec_rows = inst.sec_codes[ell].rows
        per_file = []
        for file in db.files:
            coeffs = [rng.randrange(p) for _ in range(inst.sec_dim)]
            enc = file[ell]
            per_file.append(
                tuple(
                    (enc + sum(c * row[n] for c, row in zip(coeffs, sec_rows))) % p
                    for n in range(inst.n)
                )
            )
        shares.append(tuple(per_file))
    return tuple(shares)


def make_queries(
    inst: SchemeInstance, theta: int, num_files: int, rng: random.Random
) -> Table:
    """Queries for file theta (1-based), masked with privacy noise."""
    if not 1 <= theta <= num_files:
        raise BadTheta(f"theta must be in 1..{num_files}, got {theta}")
    p = inst.p
    priv_rows = inst.priv_code.rows
    queries = []
    for ell in range(inst.l):
        base = inst.info_rows[ell]
        per_file = []
        for m in range(num_files):
            coeffs = [rng.randrange(p) for _ in range(inst.priv_dim)]
            wanted = 1 if m == theta - 1 else 0
            per_file.append(
                tuple(
                    (wanted * base[n] + sum(c * row[n] for c, row in zip(coeffs, priv_rows))) % p
                    for n in range(inst.n)
                )
            )
        queries.append(tuple(per_file))
    return tuple(queries)


def server_view(table: Table, server: int) -> tuple[tuple[int, ...], ...]:
    """One server's column of a share or query table, indexed [fragment][file]."""
    return tuple(tuple(per_file[server] for per_file in row) for row in table)


def server_respond(
    shares_n: Sequence[Sequence[int]], queries_n: Sequence[Sequence[int]], p: int
) -> int:
    """The single response symbol: sum of share * query over all table cells."""
    if len(shares_n) != len(queries_n) or any(
        len(s) != len(q) for s, q in zip(shares_n, queries_n)
    ):
        raise ShapeMismatch("share and query views have different shapes")
    return sum(s * q for srow, qrow in zip(shares_n, queries_n) for s, q in zip(srow, qrow)) % p


def decode(inst: SchemeInstance, responses: Sequence[int]) -> tuple[int, ...]:
    """Solve for the information coefficients; they are the requested fragments."""
    if len(responses) != inst.n:
        raise ShapeMismatch(f"expected {inst.n} response symbols, got {len(responses)}")
    p = inst.p
    picked = [responses[c] % p for c in inst.decode_cols]
    coeffs = linalg.mat_vec(inst.decode_inv, picked, p)
    rows = inst.decode_rows
    for n in range(inst.n):
        if sum(c * rows[i][n] for i, c in enumerate(coeffs)) % p != responses[n] % p:
            raise InconsistentSystem(f"response symbol {n} is outside the decode row space")
    return tuple(coeffs[: inst.l])


# -- verification ---------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeReport:
    """Outcome of the decodability and collusion-resistance checks."""

    units_ok: bool
    info_rank: int
    noise_rank: int
    combined_rank: int
    info_rank_ok: bool
    direct_sum_ok: bool
    injective_ok: bool
    privacy: SubsetRankReport
    security: tuple[SubsetRankReport, ...]

    @property
    def passed(self) -> bool:
        return (
            self.units_ok
            and self.info_rank_ok
            and self.direct_sum_ok
            and self.injective_ok
            and self.privacy.passed
            and all(r.passed for r in self.security)
        )

    def lines(self) -> list[str]:
        out = [
            _line("fragment basis functions are units", self.units_ok),
            _line(f"information rank {self.info_rank} equals L", self.info_rank_ok),
            _line(
                f"information + noise ranks add ({self.combined_rank} total)",
                self.direct_sum_ok,
            ),
            _line("evaluation map injective on the combined space", self.injective_ok),
            _line(
                f"privacy: {self.privacy.t}-subsets independent "
                f"({self.privacy.mode}, {self.privacy.checked}/{self.privacy.total})",
                self.privacy.passed,
            ),
        ]
        for ell, rep in enumerate(self.security):
            out.append(
                _line(
                    f"security fragment {ell + 1}: {rep.t}-subsets independent "
                    f"({rep.mode}, {rep.checked}/{rep.total})",
                    rep.passed,
                )
            )
        return out


def _line(text: str, ok: bool) -> str:
    return f"{'PASS' if ok else 'FAIL'}  {text}"


def verify_scheme(
    inst: SchemeInstance,
    subsets: str = "all",
    sample_count: int = 300,
    sample_seed: int = 0,
) -> SchemeReport:
    """Re-check the build conditions and the subset-rank collusion criteria."""
    p = inst.p
    info_rank = linalg.rank(inst.info_rows, p)
    noise_rank = linalg.rank(inst.noise_rows, p)
    combined = linalg.rank(inst.decode_rows, p)
    privacy = subset_rank_check(
        inst.priv_code, inst.t, mode=subsets, sample_count=sample_count, seed=sample_seed
    )
    security = tuple(
        subset_rank_check(code, inst.x, mode=subsets, sample_count=sample_count, seed=sample_seed)
        for code in inst.sec_codes
    )
    return SchemeReport(
        units_ok=all(f.scalar % p != 0 for f in inst.info_basis),
        info_rank=info_rank,
        noise_rank=noise_rank,
        combined_rank=combined,
        info_rank_ok=info_rank == inst.l,
        direct_sum_ok=combined == info_rank + noise_rank,
        injective_ok=combined == len(inst.decode_rows),
        privacy=privacy,
        security=security,
    )


def noise_products(inst: SchemeInstance) -> list[tuple[str, RationalFunction]]:
    """Every cross-term product that must stay inside the noise space."""
    out: list[tuple[str, RationalFunction]] = []
    for ell, h in enumerate(inst.info_basis):
        for i, s in enumerate(inst.sec_bases[ell]):
            out.append((f"sec[{ell}][{i}] * query[{ell}]", s * h))
        for j, v in enumerate(inst.priv_basis):
            for i, s in enumerate(inst.sec_bases[ell]):
                out.append((f"sec[{ell}][{i}] * priv[{j}]", s * v))
    for j, v in enumerate(inst.priv_basis):
        out.append((f"enc * priv[{j}]", v))
    return out


def check_noise_containment(inst: SchemeInstance) -> list[tuple[str, bool]]:
    """Whether each noise product's divisor clears the noise bound."""
    bound = inst.noise_divisor()
    zero = Divisor.zero(inst.curve)
    return [(label, zero <= f.divisor() + bound) for label, f in noise_products(inst)]


# -- serialization ----------------------------------------------------------------------


def _point_json(pt: CurvePoint) -> list:
    return [pt.x, pt.y]


def _function_json(f: RationalFunction) -> dict:
    return {
        "scalar": f.scalar,
        "y_exp": f.y_exp,
        "x_factors": [[alpha, exp] for alpha, exp in f.x_factors],
    }


def scheme_descriptor(inst: SchemeInstance) -> dict:
    """JSON-ready descriptor with byte-stable ordering of every array."""
    params = inst.params
    return {
        "p": params.p,
        "genus": params.genus,
        "curve": None
        if params.genus == 0
        else {"a": inst.curve.a, "b": inst.curve.b},
        "x": params.x,
        "t": params.t,
        "l": params.l,
        "n": inst.n,
        "seed": params.seed,
        "rate": {"num": inst.rate.numerator, "den": inst.rate.denominator},
        "fragment_points": [_point_json(pt) for pt in inst.fragment_points],
        "eval_points": [_point_json(pt) for pt in inst.eval_points],
        "basis_descriptors": {
            "info": [_function_json(f) for f in inst.info_basis],
            "noise": [_function_json(f) for f in inst.noise_basis],
            "privacy": [_function_json(f) for f in inst.priv_basis],
            "security": [[_function_json(f) for f in basis] for basis in inst.sec_bases],
        },
    }


def scheme_from_descriptor(descriptor: dict) -> SchemeInstance:
    """Rebuild the instance and confirm it reproduces the descriptor exactly."""
    curve = descriptor.get("curve")
    params = SchemeParams(
        p=descriptor["p"],
        genus=descriptor["genus"],
        x=descriptor["x"],
        t=descriptor["t"],
        l=descriptor["l"],
        curve=None if curve is None else (curve["a"], curve["b"]),
        seed=descriptor.get("seed", 0),
    )
    inst = build_scheme(params)
    if scheme_descriptor(inst) != descriptor:
        raise ValueError("descriptor does not match the deterministic rebuild")
    return inst
