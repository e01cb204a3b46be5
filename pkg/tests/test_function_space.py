import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agpir import linalg
from agpir.curve import INFINITY, AffinePoint, EllipticCurve, PointAtInfinity
from agpir.errors import (
    DuplicateAlpha,
    InfinityUnsupported,
    NegativeOrder,
    PoleAtPoint,
    TwoTorsionPoint,
    UnsupportedDivisor,
    WrongCurveKind,
    ZeroScalar,
)
from agpir.field import Polynomial, PrimeField
from agpir.function_space import (
    Divisor,
    QuadraticPlace,
    RationalFunction,
    Y_ZEROS,
    basis_poles_at_infinity,
    interp_basis_g0,
    interp_basis_g1,
    noise_basis_g1,
    place_degree,
    rr_dim,
)


def fragment_pairs(curve, count):
    """First `count` conjugate pairs with nonzero y, ascending x."""
    pairs = []
    for x in range(curve.field.p):
        fiber = curve.fiber(x)
        if len(fiber) == 2:
            pairs.append((fiber[0], fiber[1]))
            if len(pairs) == count:
                return pairs
    raise AssertionError("not enough split fibers")


def admissible_points(curve, exclude_x=()):
    return [
        pt
        for pt in curve.enumerate_points()
        if not isinstance(pt, PointAtInfinity) and pt.y != 0 and pt.x not in exclude_x
    ]


def eval_rank(functions, points, p):
    rows = [[f.eval_at(pt) for pt in points] for f in functions]
    return linalg.rank(rows, p)


# -- evaluation ------------------------------------------------------------------


def test_eval_simple_reciprocal(curve43):
    f = RationalFunction.x_minus(curve43, 2, -1)
    pt = curve43.fiber(3)[0]
    assert f.eval_at(pt) == 1  # 1/(3 - 2)


def test_eval_y_at_two_torsion():
    f5 = PrimeField(5)
    curve = EllipticCurve(f5, 0, 1)
    y = RationalFunction.y_fn(curve)
    assert y.eval_at(AffinePoint(4, 0)) == 0


def test_eval_pole_raises(curve43):
    f = RationalFunction.x_minus(curve43, 2, -1)
    for pt in curve43.fiber(2):
        with pytest.raises(PoleAtPoint):
            f.eval_at(pt)


def test_eval_at_infinity_unsupported(curve43):
    with pytest.raises(InfinityUnsupported):
        RationalFunction.one(curve43).eval_at(INFINITY)


def test_eval_cancels_shared_zero():
    # y^2 / (x - r) at the two-torsion point (r, 0) has valuation 0:
    # the cubic (r a root) cancels against the denominator.
    f127 = PrimeField(127)
    curve = EllipticCurve(f127, 1, 33)
    r = curve.zeros_of_y()[0].x
    f = RationalFunction.make(curve, x_factors={r: -1}, y_exp=2)
    pt = AffinePoint(r, 0)
    assert f.valuation(pt) == 0
    expected = (curve.cubic // Polynomial(f127, (-r, 1)))(r)
    assert f.eval_at(pt) == expected % 127


def test_fn_mul_y_squared_is_cubic(curve43):
    y2 = RationalFunction.y_fn(curve43) * RationalFunction.y_fn(curve43)
    u, v, den = y2.expanded()
    assert v.is_zero and den == Polynomial.one(curve43.field)
    assert u == curve43.cubic
    for pt in admissible_points(curve43)[:10]:
        assert y2.eval_at(pt) == curve43.cubic(pt.x)


def test_fn_mul_identity_and_inverse(curve43):
    f = RationalFunction.make(curve43, scalar=3, x_factors={5: 2, 7: -1}, y_exp=1)
    assert f * RationalFunction.one(curve43) == f
    assert f * f.inverse() == RationalFunction.one(curve43)
    g = RationalFunction.x_minus(curve43, 5)
    assert RationalFunction.x_minus(curve43, 5, -1) * g == RationalFunction.one(curve43)


def test_scale_rejects_zero(curve43):
    with pytest.raises(ZeroScalar):
        RationalFunction.one(curve43).scale(0)
    with pytest.raises(ZeroScalar):
        RationalFunction.make(curve43, scalar=43)


@settings(max_examples=60, deadline=None)
@given(
    st.dictionaries(st.integers(0, 12), st.integers(-2, 2), max_size=3),
    st.dictionaries(st.integers(0, 12), st.integers(-2, 2), max_size=3),
    st.integers(-2, 2),
    st.integers(-2, 2),
    st.integers(1, 12),
    st.integers(1, 12),
)
def test_eval_is_ring_homomorphism(xf1, xf2, ye1, ye2, s1, s2):
    f13 = PrimeField(13)
    curve = EllipticCurve(f13, 2, 1)
    f = RationalFunction.make(curve, s1, xf1, ye1)
    g = RationalFunction.make(curve, s2, xf2, ye2)
    prod = f * g
    p = 13
    for pt in admissible_points(curve):
        if f.valuation(pt) < 0 or g.valuation(pt) < 0:
            continue
        assert prod.eval_at(pt) == f.eval_at(pt) * g.eval_at(pt) % p


# -- valuation and divisors --------------------------------------------------------


def test_valuation_examples(curve43, line43):
    h = RationalFunction.x_minus(line43, 3, -1)
    assert h.valuation(INFINITY) == 1
    assert h.valuation(AffinePoint(3)) == -1
    h1 = RationalFunction.x_minus(curve43, 1, -1)  # x = 1 splits on y^2 = x^3 + 9
    assert h1.valuation(INFINITY) == 2
    y = RationalFunction.y_fn(curve43)
    assert y.valuation(INFINITY) == -3
    assert y.valuation(Y_ZEROS) == 1


def test_divisor_of_line_reciprocal(line43):
    h = RationalFunction.x_minus(line43, 3, -1)
    d = h.divisor()
    assert d.coeff(INFINITY) == 1
    assert d.coeff(AffinePoint(3)) == -1
    assert d.degree == 0


def test_divisor_of_constant_is_zero(curve43):
    assert RationalFunction.constant(curve43, 7).divisor().is_zero


def test_divisor_of_y(curve43):
    d = RationalFunction.y_fn(curve43).divisor()
    assert d.coeff(Y_ZEROS) == 1
    assert d.coeff(INFINITY) == -3
    assert d.degree == 0


def test_divisor_inert_fiber(curve43):
    # find an x whose cubic value is a non-residue
    inert = next(x for x in range(43) if not curve43.fiber(x))
    d = RationalFunction.x_minus(curve43, inert).divisor()
    assert d.coeff(QuadraticPlace(inert)) == 1
    assert d.coeff(INFINITY) == -2
    assert d.degree == 0
    assert place_degree(QuadraticPlace(inert)) == 2


def test_divisor_ramified_fiber():
    f127 = PrimeField(127)
    curve = EllipticCurve(f127, 1, 33)
    r = curve.zeros_of_y()[0].x
    d = RationalFunction.x_minus(curve, r).divisor()
    assert d.coeff(AffinePoint(r, 0)) == 2
    assert d.coeff(INFINITY) == -2
    assert d.degree == 0


@settings(max_examples=80, deadline=None)
@given(
    st.dictionaries(st.integers(0, 12), st.integers(-3, 3), max_size=4),
    st.integers(-3, 3),
    st.integers(1, 12),
)
def test_divisor_degree_always_zero(xf, ye, s):
    f13 = PrimeField(13)
    curve = EllipticCurve(f13, 2, 1)
    assert RationalFunction.make(curve, s, xf, ye).divisor().degree == 0


def test_divisor_partial_order(curve43):
    two_inf = Divisor.of(curve43, {INFINITY: 2})
    bound = Divisor.of(curve43, {INFINITY: 2, Y_ZEROS: 1})
    assert two_inf <= bound
    assert not bound <= two_inf


# -- Riemann-Roch dimensions --------------------------------------------------------


def test_rr_dim_cases(curve43, line43):
    t = 16
    assert rr_dim(Divisor.of(curve43, {INFINITY: t + 1})) == t + 1
    x = 16
    assert rr_dim(Divisor.of(line43, {INFINITY: x + t - 1})) == x + t
    # full divisor, genus 1: degree L + X + T + 8
    pairs = fragment_pairs(curve43, 4)
    full = Divisor.of(curve43, {INFINITY: x + t + 4, Y_ZEROS: 1})
    for pt, conj in pairs:
        full = full + Divisor.of(curve43, {pt: 1, conj: 1})
    assert full.degree == 7 + x + t + 8
    assert rr_dim(full) == 7 + x + t + 8
    assert rr_dim(Divisor.of(curve43, {INFINITY: -1})) == 0
    assert rr_dim(Divisor.zero(curve43)) == 1
    assert rr_dim(Divisor.zero(line43)) == 1
    with pytest.raises(UnsupportedDivisor):
        pt, conj = pairs[0]
        rr_dim(Divisor.of(curve43, {pt: 1, conj: 1, INFINITY: -2}))


# -- bases ---------------------------------------------------------------------------


def test_basis_poles_at_infinity_g1_m5(curve43):
    basis = basis_poles_at_infinity(curve43, 5)
    assert [repr(f) for f in basis] == ["1", "x", "x^2", "y", "y * x"]


def test_basis_poles_at_infinity_sizes(curve43, line43):
    assert len(basis_poles_at_infinity(line43, 15)) == 16  # dim of degree-15 bound, genus 0
    for m in range(0, 12):
        got = basis_poles_at_infinity(curve43, m)
        assert len(got) == rr_dim(Divisor.of(curve43, {INFINITY: m}))
    assert [repr(f) for f in basis_poles_at_infinity(curve43, 0)] == ["1"]
    with pytest.raises(NegativeOrder):
        basis_poles_at_infinity(curve43, -1)


def test_interp_basis_g0(line43):
    basis = interp_basis_g0(line43, range(5))
    assert len(basis) == 5
    for ell, f in enumerate(basis):
        d = f.divisor()
        assert d.coeff(INFINITY) == 1
        assert d.coeff(AffinePoint(ell)) == -1
    assert len(interp_basis_g0(line43, [0])) == 1
    with pytest.raises(DuplicateAlpha):
        interp_basis_g0(line43, [1, 1])


def test_interp_basis_g1_l5_shape(curve43):
    pairs = fragment_pairs(curve43, 3)
    basis = interp_basis_g1(curve43, pairs)
    assert len(basis) == 5
    alphas = [pt.x for pt, _ in pairs]
    for j in range(3):
        assert basis[j] == RationalFunction.x_minus(curve43, alphas[j], -1)
    for j in range(2):
        assert basis[3 + j] == RationalFunction.make(
            curve43, x_factors={alphas[j]: -1, alphas[2]: -1}, y_exp=1
        )


def test_interp_basis_g1_divisors_match_design(curve43):
    pairs = fragment_pairs(curve43, 3)
    basis = interp_basis_g1(curve43, pairs)
    bound = Divisor.of(curve43, {INFINITY: 2, Y_ZEROS: 1})
    for j in range(3):
        d = basis[j].divisor()
        pt, conj = pairs[j]
        assert d.coeff(INFINITY) == 2 and d.coeff(pt) == -1 and d.coeff(conj) == -1
        assert d.degree == 0
    for j in range(2):
        d = basis[3 + j].divisor()
        pt, conj = pairs[j]
        last, last_conj = pairs[2]
        assert d.coeff(INFINITY) == 1 and d.coeff(Y_ZEROS) == 1
        for q in (pt, conj, last, last_conj):
            assert d.coeff(q) == -1
    for f in basis:
        assert f.divisor() <= bound


def test_interp_basis_g1_single_pair(curve43):
    pairs = fragment_pairs(curve43, 1)
    basis = interp_basis_g1(curve43, pairs)
    assert len(basis) == 1
    assert basis[0] == RationalFunction.x_minus(curve43, pairs[0][0].x, -1)


def test_interp_basis_g1_rejects_bad_input():
    f127 = PrimeField(127)
    curve = EllipticCurve(f127, 1, 33)
    torsion = curve.zeros_of_y()[0]
    with pytest.raises(TwoTorsionPoint):
        interp_basis_g1(curve, [(torsion, torsion)])
    pairs = fragment_pairs(curve, 2)
    with pytest.raises(DuplicateAlpha):
        interp_basis_g1(curve, [pairs[0], pairs[0]])
    with pytest.raises(ValueError):
        interp_basis_g1(curve, [(pairs[0][0], pairs[1][1])])


def test_noise_basis_g1_m0(curve43):
    basis = noise_basis_g1(curve43, 0)
    assert [repr(f) for f in basis] == ["1", "y^-1", "y^-1 * x"]
    pts = admissible_points(curve43)
    assert eval_rank(basis, pts[:4], 43) == 3


def test_noise_basis_g1_size_and_containment(curve43):
    x, t = 16, 16
    m = x + t + 4
    basis = noise_basis_g1(curve43, m)
    assert len(basis) == x + t + 7
    bound = Divisor.of(curve43, {INFINITY: m, Y_ZEROS: 1})
    zero = Divisor.zero(curve43)
    for f in basis:
        assert zero <= f.divisor() + bound
    with pytest.raises(NegativeOrder):
        noise_basis_g1(curve43, -1)


def test_noise_basis_g1_full_rank(curve43):
    for m in (0, 3, 6):
        basis = noise_basis_g1(curve43, m)
        pts = admissible_points(curve43)[: m + 4]
        assert eval_rank(basis, pts, 43) == m + 3


def test_interp_bases_full_rank(curve43, line43):
    basis0 = interp_basis_g0(line43, range(5))
    pts0 = [AffinePoint(x) for x in range(5, 11)]
    assert eval_rank(basis0, pts0, 43) == 5
    pairs = fragment_pairs(curve43, 3)
    basis1 = interp_basis_g1(curve43, pairs)
    pts1 = admissible_points(curve43, exclude_x={pt.x for pt, _ in pairs})[:6]
    assert eval_rank(basis1, pts1, 43) == 5


def test_multiplication_by_unit_preserves_rank(curve43):
    # multiplying a basis by a fixed unit is an isomorphism of spaces
    pairs = fragment_pairs(curve43, 2)
    h = RationalFunction.x_minus(curve43, pairs[0][0].x, -1)
    basis = basis_poles_at_infinity(curve43, 5)
    shifted = [h * f for f in basis]
    pts = admissible_points(curve43, exclude_x={pairs[0][0].x})[:12]
    assert eval_rank(shifted, pts, 43) == eval_rank(basis, pts, 43) == 5


def test_product_space_dimension_matches_divisor_sum(curve43):
    # products of bases of L(2*Inf) and L(3*Inf) span L(5*Inf) exactly
    b1 = basis_poles_at_infinity(curve43, 2)
    b2 = basis_poles_at_infinity(curve43, 3)
    products = [f * g for f in b1 for g in b2]
    pts = admissible_points(curve43)[:10]
    target = rr_dim(Divisor.of(curve43, {INFINITY: 5}))
    assert eval_rank(products, pts, 43) == target == 5


def test_product_containment_in_divisor_sum(curve43):
    b1 = basis_poles_at_infinity(curve43, 2)
    b2 = basis_poles_at_infinity(curve43, 3)
    bound = Divisor.of(curve43, {INFINITY: 5})
    zero = Divisor.zero(curve43)
    for f in b1:
        for g in b2:
            assert zero <= (f * g).divisor() + bound


def test_y_exp_forbidden_on_line(line43):
    with pytest.raises(WrongCurveKind):
        RationalFunction.make(line43, y_exp=1)
