"""Function-field elements in factored form, divisors, and explicit bases.

Every function handled here is a unit of the shape

    scalar * y^k * prod (x - alpha_i)^e_i

so valuations and divisors come straight from per-atom rules instead of
general local-uniformizer machinery. The expanded form (u + y*v) / den is
derived once per function and used for evaluation; the curve relation
y^2 = x^3 + ax + b folds even powers of y into polynomials in x.

The zero locus of y is tracked as one symbolic degree-3 place regardless of
how the cubic splits, matching how the schemes use it (an aggregate pole
bound). Divisors therefore put the mass of y-atoms on that symbolic place,
while point valuations (used to validate evaluation) are the true local
orders; the two views only differ at rational two-torsion points, which the
schemes never evaluate at.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .curve import (
    INFINITY,
    AffinePoint,
    Curve,
    CurvePoint,
    EllipticCurve,
    PointAtInfinity,
    ProjectiveLine,
)
from .errors import (
    DuplicateAlpha,
    InfinityUnsupported,
    NegativeOrder,
    PoleAtPoint,
    TwoTorsionPoint,
    UnsupportedDivisor,
    WrongCurveKind,
    ZeroScalar,
)
from .field import Polynomial


@dataclass(frozen=True)
class QuadraticPlace:
    """Degree-2 place over x = alpha whose fiber has no rational points.

    Needed so that deg((f)) = 0 holds for every factored function even when
    some x - alpha vanishes only at a conjugate pair over F_{p^2}.
    """

    x: int

    def __repr__(self) -> str:
        return f"Pair(x={self.x})"


class YZerosPlace:
    """The aggregate degree-3 zero locus of y on a short-Weierstrass curve."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "(y)_0"


Y_ZEROS = YZerosPlace()

Place = Union[PointAtInfinity, AffinePoint, QuadraticPlace, YZerosPlace]


def place_degree(place: Place) -> int:
    if isinstance(place, (PointAtInfinity, AffinePoint)):
        return 1
    if isinstance(place, QuadraticPlace):
        return 2
    if isinstance(place, YZerosPlace):
        return 3
    raise TypeError(f"not a place: {place!r}")


def place_key(place: Place) -> tuple[int, int, int]:
    if isinstance(place, PointAtInfinity):
        return (0, -1, -1)
    if isinstance(place, AffinePoint):
        return (1, place.x, -1 if place.y is None else place.y)
    if isinstance(place, QuadraticPlace):
        return (2, place.x, -1)
    return (3, -1, -1)


@dataclass(frozen=True)
class Divisor:
    """Formal integer combination of places on a fixed curve."""

    curve: Curve
    items: tuple[tuple[Place, int], ...]

    @classmethod
    def of(cls, curve: Curve, coeffs: Mapping[Place, int]) -> "Divisor":
        cleaned = tuple(
            (pl, n) for pl, n in sorted(coeffs.items(), key=lambda kv: place_key(kv[0])) if n != 0
        )
        return cls(curve, cleaned)

    @classmethod
    def zero(cls, curve: Curve) -> "Divisor":
        return cls(curve, ())

    def coeff(self, place: Place) -> int:
        for pl, n in self.items:
            if pl == place:
                return n
        return 0

    def as_dict(self) -> dict[Place, int]:
        return dict(self.items)

    @property
    def degree(self) -> int:
        return sum(n * place_degree(pl) for pl, n in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def is_effective(self) -> bool:
        return all(n >= 0 for _, n in self.items)

    def _merge(self, other: "Divisor", sign: int) -> "Divisor":
        if self.curve != other.curve:
            raise ValueError("divisors on different curves")
        out = self.as_dict()
        for pl, n in other.items:
            out[pl] = out.get(pl, 0) + sign * n
        return Divisor.of(self.curve, out)

    def __add__(self, other: "Divisor") -> "Divisor":
        return self._merge(other, 1)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self._merge(other, -1)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, tuple((pl, -n) for pl, n in self.items))

    def __rmul__(self, k: int) -> "Divisor":
        if k == 0:
            return Divisor.zero(self.curve)
        return Divisor(self.curve, tuple((pl, k * n) for pl, n in self.items))

    def __le__(self, other: "Divisor") -> bool:
        """Coefficientwise comparison over the union of supports."""
        if self.curve != other.curve:
            raise ValueError("divisors on different curves")
        places = {pl for pl, _ in self.items} | {pl for pl, _ in other.items}
        return all(self.coeff(pl) <= other.coeff(pl) for pl in places)

    def __ge__(self, other: "Divisor") -> bool:
        return other <= self

    def __repr__(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(f"{n}*{pl!r}" for pl, n in self.items)


def rr_dim(divisor: Divisor) -> int:
    """Dimension of the space of functions with pole orders bounded by the divisor.

    Genus 0 uses the canonical divisor -2*Infinity, genus 1 uses 0; both
    make the dimension a pure function of the degree except in the
    ambiguous genus-1 degree-0 case, which is refused unless the divisor
    is identically zero.
    """
    deg = divisor.degree
    if deg < 0:
        return 0
    if divisor.curve.genus == 0:
        return deg + 1
    if deg == 0:
        if divisor.is_zero:
            return 1
        raise UnsupportedDivisor(
            "genus-1 divisor of degree 0 needs a principality test; not supported"
        )
    return deg


@dataclass(frozen=True)
class RationalFunction:
    """A unit of the function field in factored form.

    x_factors is a sorted tuple of (alpha, exponent) pairs with nonzero
    exponents; y_exp is the (possibly negative) power of y, forced to 0 on
    the projective line.
    """

    curve: Curve
    scalar: int
    x_factors: tuple[tuple[int, int], ...]
    y_exp: int = 0

    def __post_init__(self):
        p = self.curve.field.p
        if self.scalar % p == 0:
            raise ZeroScalar("factored functions are units; scalar must be nonzero")
        if self.curve.genus == 0 and self.y_exp != 0:
            raise WrongCurveKind("no y coordinate on the projective line")

    @classmethod
    def make(
        cls,
        curve: Curve,
        scalar: int = 1,
        x_factors: Mapping[int, int] | Iterable[tuple[int, int]] = (),
        y_exp: int = 0,
    ) -> "RationalFunction":
        p = curve.field.p
        merged: dict[int, int] = {}
        pairs = x_factors.items() if isinstance(x_factors, Mapping) else x_factors
        for alpha, exp in pairs:
            alpha %= p
            merged[alpha] = merged.get(alpha, 0) + exp
        cleaned = tuple(sorted((a, e) for a, e in merged.items() if e != 0))
        return cls(curve, scalar % p, cleaned, y_exp)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def one(cls, curve: Curve) -> "RationalFunction":
        return cls.make(curve)

    @classmethod
    def constant(cls, curve: Curve, c: int) -> "RationalFunction":
        return cls.make(curve, scalar=c)

    @classmethod
    def x_minus(cls, curve: Curve, alpha: int, exp: int = 1) -> "RationalFunction":
        return cls.make(curve, x_factors={alpha: exp})

    @classmethod
    def x_power(cls, curve: Curve, i: int) -> "RationalFunction":
        return cls.make(curve, x_factors={0: i})

    @classmethod
    def y_fn(cls, curve: Curve, exp: int = 1) -> "RationalFunction":
        return cls.make(curve, y_exp=exp)

    # -- algebra ---------------------------------------------------------------

    @property
    def is_one(self) -> bool:
        return self.scalar == 1 and not self.x_factors and self.y_exp == 0

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.curve != other.curve:
            raise ValueError("functions on different curves")
        return RationalFunction.make(
            self.curve,
            self.scalar * other.scalar,
            tuple(self.x_factors) + tuple(other.x_factors),
            self.y_exp + other.y_exp,
        )

    def inverse(self) -> "RationalFunction":
        return RationalFunction.make(
            self.curve,
            self.curve.field.inv(self.scalar),
            tuple((a, -e) for a, e in self.x_factors),
            -self.y_exp,
        )

    def scale(self, c: int) -> "RationalFunction":
        if c % self.curve.field.p == 0:
            raise ZeroScalar("cannot scale a unit by zero")
        return RationalFunction.make(self.curve, self.scalar * c, self.x_factors, self.y_exp)

    def __pow__(self, e: int) -> "RationalFunction":
        return RationalFunction.make(
            self.curve,
            self.curve.field.pow_(self.scalar, e),
            tuple((a, k * e) for a, k in self.x_factors),
            self.y_exp * e,
        )

    # -- expanded form ---------------------------------------------------------

    @cached_property
    def _reduced(self) -> tuple[Polynomial, Polynomial, int]:
        """(numerator, monic denominator, y parity) with gcd(num, den) = 1."""
        field = self.curve.field
        num = Polynomial.one(field)
        den = Polynomial.one(field)
        for alpha, exp in self.x_factors:
            atom = Polynomial(field, (-alpha, 1))
            if exp > 0:
                num = num * atom**exp
            else:
                den = den * atom ** (-exp)
        k, parity = divmod(self.y_exp, 2)  # y^e = cubic^k * y^parity
        if k:
            cubic = self.curve.cubic
            if k > 0:
                num = num * cubic**k
            else:
                den = den * cubic ** (-k)
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead_inv = field.inv(den.leading)
        return num.scale(self.scalar * lead_inv), den.monic(), parity

    def expanded(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        """The function as (u + y*v) / den with u, v, den polynomials in x."""
        num, den, parity = self._reduced
        zero = Polynomial.zero(self.curve.field)
        return (zero, num, den) if parity else (num, zero, den)

    # -- valuations, divisor, evaluation ----------------------------------------

    def valuation(self, place: Place) -> int:
        """Order of vanishing at a place (negative at poles)."""
        exps = dict(self.x_factors)
        if isinstance(place, PointAtInfinity):
            total = sum(exps.values())
            if self.curve.genus == 0:
                return -total
            return -2 * total - 3 * self.y_exp
        if isinstance(place, YZerosPlace):
            if self.curve.genus == 0:
                raise WrongCurveKind("(y)_0 only exists on an elliptic curve")
            return self.y_exp
        if isinstance(place, QuadraticPlace):
            if self.curve.genus == 0:
                raise WrongCurveKind("quadratic places only arise on an elliptic curve")
            return exps.get(place.x, 0)
        if isinstance(place, AffinePoint):
            if not self.curve.contains(place):
                raise ValueError(f"{place!r} is not on {self.curve!r}")
            e = exps.get(place.x, 0)
            if self.curve.genus == 0:
                return e
            if place.y == 0:
                # x - alpha ramifies at two-torsion; y is a uniformizer there.
                return 2 * e + self.y_exp
            return e
        raise TypeError(f"not a place: {place!r}")

    def divisor(self) -> Divisor:
        """Zeros minus poles; y-atom mass sits on the aggregate (y)_0 place."""
        coeffs: dict[Place, int] = {}

        def bump(pl: Place, n: int) -> None:
            coeffs[pl] = coeffs.get(pl, 0) + n

        if self.curve.genus == 0:
            for alpha, exp in self.x_factors:
                bump(AffinePoint(alpha), exp)
                bump(INFINITY, -exp)
            return Divisor.of(self.curve, coeffs)
        for alpha, exp in self.x_factors:
            fiber = self.curve.fiber(alpha)
            if len(fiber) == 2:
                bump(fiber[0], exp)
                bump(fiber[1], exp)
            elif len(fiber) == 1:
                bump(fiber[0], 2 * exp)
            else:
                bump(QuadraticPlace(alpha), exp)
            bump(INFINITY, -2 * exp)
        if self.y_exp:
            bump(Y_ZEROS, self.y_exp)
            bump(INFINITY, -3 * self.y_exp)
        return Divisor.of(self.curve, coeffs)

    def eval_at(self, point: CurvePoint) -> int:
        """Exact value at an affine rational point that is not a pole."""
        if isinstance(point, PointAtInfinity):
            raise InfinityUnsupported("evaluation at infinity is not supported")
        val = self.valuation(point)
        if val < 0:
            raise PoleAtPoint(f"{self!r} has a pole at {point!r}")
        if val > 0:
            return 0
        field = self.curve.field
        num, den, parity = self._reduced
        d = den(point.x)
        if d == 0:  # cannot happen once valuation == 0; guard for safety
            raise PoleAtPoint(f"unreduced pole of {self!r} at {point!r}")
        value = field.div(num(point.x), d)
        if parity:
            value = field.mul(value, point.y)
        return value

    def __repr__(self) -> str:
        parts = [] if self.scalar == 1 and (self.x_factors or self.y_exp) else [str(self.scalar)]
        if self.y_exp:
            parts.append("y" if self.y_exp == 1 else f"y^{self.y_exp}")
        for alpha, exp in self.x_factors:
            atom = "x" if alpha == 0 else f"(x-{alpha})"
            parts.append(atom if exp == 1 else f"{atom}^{exp}")
        return " * ".join(parts) if parts else "1"


# -- explicit bases -------------------------------------------------------------


def basis_poles_at_infinity(curve: Curve, m: int) -> tuple[RationalFunction, ...]:
    """Basis of the functions with poles only at infinity, of order at most m.

    Genus 0: 1, x, ..., x^m. Genus 1: x^i for 2i <= m together with y*x^i
    for 2i + 3 <= m (pole orders 2i and 2i + 3 respectively).
    """
    if m < 0:
        raise NegativeOrder(f"pole-order bound must be >= 0, got {m}")
    if curve.genus == 0:
        return tuple(RationalFunction.x_power(curve, i) for i in range(m + 1))
    xs = [RationalFunction.x_power(curve, i) for i in range(m // 2 + 1)]
    ys = [
        RationalFunction.make(curve, x_factors={0: i}, y_exp=1)
        for i in range((m - 3) // 2 + 1)
    ]
    return tuple(xs) + tuple(ys)


def interp_basis_g0(line: ProjectiveLine, alphas: Sequence[int]) -> tuple[RationalFunction, ...]:
    """Fragment basis 1/(x - alpha) for each alpha; divisor Infinity - P_alpha."""
    if not isinstance(line, ProjectiveLine):
        raise WrongCurveKind("genus-0 interpolation basis lives on the projective line")
    p = line.field.p
    norm = [a % p for a in alphas]
    if len(set(norm)) != len(norm):
        raise DuplicateAlpha(f"interpolation points must be distinct, got {list(alphas)}")
    return tuple(RationalFunction.x_minus(line, a, -1) for a in norm)


def interp_basis_g1(
    curve: EllipticCurve, pairs: Sequence[tuple[AffinePoint, AffinePoint]]
) -> tuple[RationalFunction, ...]:
    """Fragment basis for J conjugate point pairs; returns L = 2J - 1 functions.

    The first J functions are 1/(x - alpha_j); the remaining J - 1 are
    y / ((x - alpha_j)(x - alpha_J)). All of their divisors are bounded
    above by 2*Infinity + (y)_0.
    """
    if not isinstance(curve, EllipticCurve):
        raise WrongCurveKind("genus-1 interpolation basis needs an elliptic curve")
    if not pairs:
        raise ValueError("need at least one point pair")
    p = curve.field.p
    alphas = []
    for pt, conj in pairs:
        if not (curve.contains(pt) and curve.contains(conj)):
            raise ValueError(f"{pt!r}, {conj!r} must lie on {curve!r}")
        if pt.y == 0 or conj.y == 0:
            raise TwoTorsionPoint(f"fragment point {pt!r} has y = 0")
        if conj.x != pt.x or conj.y != (-pt.y) % p:
            raise ValueError(f"{conj!r} is not the conjugate of {pt!r}")
        alphas.append(pt.x)
    if len(set(alphas)) != len(alphas):
        raise DuplicateAlpha(f"fragment x-coordinates must be distinct, got {alphas}")
    last = alphas[-1]
    first = [RationalFunction.x_minus(curve, a, -1) for a in alphas]
    second = [
        RationalFunction.make(curve, x_factors={a: -1, last: -1}, y_exp=1)
        for a in alphas[:-1]
    ]
    return tuple(first) + tuple(second)


def noise_basis_g1(curve: EllipticCurve, m: int) -> tuple[RationalFunction, ...]:
    """Spanning set of the noise space with poles bounded by m*Infinity + (y)_0.

    x^i for 2i <= m plus x^j / y for 2j <= m + 3; sizes add to m + 3, the
    Riemann-Roch dimension of the bound, and independence is validated by
    evaluation rank downstream.
    """
    if not isinstance(curve, EllipticCurve):
        raise WrongCurveKind("the (y)_0 noise space needs an elliptic curve")
    if m < 0:
        raise NegativeOrder(f"pole-order bound must be >= 0, got {m}")
    xs = [RationalFunction.x_power(curve, i) for i in range(m // 2 + 1)]
    over_y = [
        RationalFunction.make(curve, x_factors={0: j}, y_exp=-1)
        for j in range((m + 3) // 2 + 1)
    ]
    return tuple(xs) + tuple(over_y)
