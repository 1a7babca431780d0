"""Local analysis at closed points: branch expansions, valuations, tame
residues and the extension verdicts.

A smooth point P = (x0, y0) of f(x, y) = 0 has a uniformizer t, either
x - x0 or y - y0. The other coordinate is lifted to a power series in t
by Newton iteration; valuations of function-field elements are then
read off by substituting the branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ComputationError, PrecisionExhausted, SingularPoint, ZeroElement
from .funcfield import BiPoly, CurvePoly, FFElem
from .quaternion import q_nrd
from .scalars import QuadFieldElem, quad_is_square
from .tautological import ClosedPoint, TautSetup

DEFAULT_PRECISION = 8
DEFAULT_CAP = 128
_ZERO = Fraction(0)


def _is_zero(c) -> bool:
    return c == 0


class LaurentSeries:
    """Truncated Laurent series ``sum coeffs[k] t^(offset+k) + O(t^precision)``.

    ``precision`` is absolute. A series with no known nonzero coefficient
    has ``offset == precision`` and empty ``coeffs``. ``d`` names the
    residue field Q(sqrt d), or None for Q.
    """

    __slots__ = ("d", "offset", "coeffs", "precision")

    def __init__(self, coeffs, offset: int, precision: int, d: int | None = None):
        coeffs = list(coeffs)[: max(precision - offset, 0)]
        k = 0
        while k < len(coeffs) and _is_zero(coeffs[k]):
            k += 1
        coeffs = coeffs[k:]
        offset += k
        if not coeffs:
            offset = precision
        self.d = d
        self.offset = offset
        self.coeffs = coeffs
        self.precision = precision

    @classmethod
    def constant(cls, c, precision: int, d: int | None = None) -> LaurentSeries:
        return cls([c], 0, precision, d)

    @classmethod
    def uniformizer_shift(cls, c0, precision: int, d: int | None = None) -> LaurentSeries:
        """The exact series ``c0 + t``."""
        return cls([c0, Fraction(1)], 0, precision, d)

    def is_resolved(self) -> bool:
        """True when a nonzero leading coefficient is known."""
        return bool(self.coeffs)

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise PrecisionExhausted(f"series is zero to precision {self.precision}", self.precision)
        return self.offset

    @property
    def leading(self):
        if not self.coeffs:
            raise PrecisionExhausted(f"series is zero to precision {self.precision}", self.precision)
        return self.coeffs[0]

    def coefficient(self, n: int):
        if n >= self.precision:
            raise IndexError(f"coefficient t^{n} beyond precision {self.precision}")
        k = n - self.offset
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _lift(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.constant(other, self.precision, self.d)

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.precision, o.precision)
        lo = min(self.offset, o.offset)
        coeffs = [self.coefficient(n) + o.coefficient(n) for n in range(lo, prec)]
        return LaurentSeries(coeffs, lo, prec, self.d if self.d is not None else o.d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.offset, self.precision, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            if _is_zero(other):
                return LaurentSeries([], self.precision, self.precision, self.d)
            return LaurentSeries([c * other for c in self.coeffs], self.offset, self.precision, self.d)
        o = other
        prec = min(self.precision + o.offset, o.precision + self.offset)
        off = self.offset + o.offset
        n = max(prec - off, 0)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs[: n - i]):
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(out, off, prec, self.d if self.d is not None else o.d)

    __rmul__ = __mul__

    def inverse(self) -> LaurentSeries:
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series with no known nonzero term")
        # relative precision, not the stored length: trailing terms may be exact zeros
        n = self.precision - self.offset
        u = self.coeffs
        u0_inv = 1 / u[0]
        inv = [u0_inv]
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, min(k, len(u) - 1) + 1):
                acc = acc + u[i] * inv[k - i]
            inv.append(-acc * u0_inv)
        return LaurentSeries(inv, -self.offset, -self.offset + n, self.d)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * (1 / other)

    def truncate(self, precision: int) -> LaurentSeries:
        return LaurentSeries(self.coeffs, self.offset, min(precision, self.precision), self.d)

    def with_precision(self, precision: int) -> LaurentSeries:
        """Treat the known terms as exact and re-declare the precision."""
        return LaurentSeries(self.coeffs, self.offset, precision, self.d)

    def __repr__(self):
        terms = [f"({c})*t^{self.offset + k}" for k, c in enumerate(self.coeffs) if not _is_zero(c)]
        return " + ".join(terms + [f"O(t^{self.precision})"])


@dataclass(frozen=True)
class Branch:
    point: ClosedPoint
    uniformizer: str  # "x" (t = x - x0) or "y" (t = y - y0)
    x_series: LaurentSeries
    y_series: LaurentSeries
    precision: int

    _powers: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dependent_series(self) -> LaurentSeries:
        return self.y_series if self.uniformizer == "x" else self.x_series

    def power(self, var: str, n: int) -> LaurentSeries:
        """Cached ``x_series**n`` or ``y_series**n``."""
        key = (var, n)
        if key not in self._powers:
            if n == 0:
                base = self.x_series
                self._powers[key] = LaurentSeries.constant(Fraction(1), base.precision, base.d)
            else:
                s = self.x_series if var == "x" else self.y_series
                self._powers[key] = self.power(var, n - 1) * s
        return self._powers[key]

    def _parts(self, i: int) -> tuple[list, list]:
        """Rational and sqrt(d) parts of the coefficients of x_series**i, t^0 up."""
        key = ("parts", i)
        if key not in self._powers:
            s = self.power("x", i)
            coeffs = [s.coefficient(m) for m in range(self.precision)]
            ra = [c.a if isinstance(c, QuadFieldElem) else Fraction(c) for c in coeffs]
            rb = [c.b if isinstance(c, QuadFieldElem) else _ZERO for c in coeffs]
            self._powers[key] = (ra, rb)
        return self._powers[key]

    def _row(self, terms: list) -> LaurentSeries:
        """sum c * x_series**i, accumulated componentwise in Q."""
        d = self.point.residue_d
        n = self.precision
        ra, rb = [_ZERO] * n, [_ZERO] * n
        for i, c in terms:
            pa, pb = self._parts(i)
            for m in range(n):
                if pa[m]:
                    ra[m] += c * pa[m]
                if pb[m]:
                    rb[m] += c * pb[m]
        coeffs = ra if d is None else [QuadFieldElem._new(d, a, b) for a, b in zip(ra, rb)]
        return LaurentSeries(coeffs, 0, n, d)

    def evaluate(self, p: BiPoly) -> LaurentSeries:
        """Substitute the branch into a polynomial, grouped by powers of y.

        x_series has no negative powers, so every partial sum is a power series.
        """
        rows: dict[int, list] = {}
        for (i, j), c in p.terms.items():
            rows.setdefault(j, []).append((i, c))
        acc = LaurentSeries([], self.precision, self.precision, self.point.residue_d)
        for j in sorted(rows):
            row = self._row(rows[j])
            acc = acc + (row * self.power("y", j) if j else row)
        return acc


def smoothness_check(curve: CurvePoly, point: ClosedPoint) -> tuple[object, object]:
    """Partial derivatives (df/dx, df/dy) at the point; raises if both vanish."""
    fx = curve.f.diff_x().evaluate(point.x_image, point.y_image)
    fy = curve.f.diff_y().evaluate(point.x_image, point.y_image)
    if fx == 0 and fy == 0:
        raise SingularPoint(
            f"point {point.describe(curve.names)} is singular; supply a normalized model of the curve"
        )
    return fx, fy


def branch_expand(curve: CurvePoly, point: ClosedPoint, precision: int = DEFAULT_PRECISION) -> Branch:
    fx0, fy0 = smoothness_check(curve, point)
    d = point.residue_d
    f = curve.f
    if fy0 != 0:
        uniformizer, solve_deriv = "x", f.diff_y()
        fixed = LaurentSeries.uniformizer_shift(point.x_image, precision, d)
        moving = LaurentSeries.constant(point.y_image, 1, d)

        def residual(mv, prec):
            return f.evaluate(fixed.truncate(prec), mv)

        def deriv(mv, prec):
            return solve_deriv.evaluate(fixed.truncate(prec), mv)

    else:
        uniformizer, solve_deriv = "y", f.diff_x()
        fixed = LaurentSeries.uniformizer_shift(point.y_image, precision, d)
        moving = LaurentSeries.constant(point.x_image, 1, d)

        def residual(mv, prec):
            return f.evaluate(mv, fixed.truncate(prec))

        def deriv(mv, prec):
            return solve_deriv.evaluate(mv, fixed.truncate(prec))

    known = 1
    while known < precision:
        known = min(2 * known, precision)
        mv = moving.with_precision(known)
        mv = (mv - residual(mv, known) / deriv(mv, known)).truncate(known)
        moving = mv
        check = residual(moving, known)
        if check.is_resolved():
            raise ComputationError(f"Newton step left a residual at order t^{check.offset}")
    if uniformizer == "x":
        xs, ys = fixed, moving
    else:
        xs, ys = moving, fixed
    return Branch(point, uniformizer, xs, ys, precision)


def _series_of(e: FFElem, branch: Branch) -> tuple[LaurentSeries, LaurentSeries]:
    num, den = e.as_fraction()
    return branch.evaluate(num), branch.evaluate(BiPoly.from_y_coeffs([den]))


def expand(e: FFElem, branch: Branch, cap: int = DEFAULT_CAP) -> tuple[int, object, Branch]:
    """Valuation and leading coefficient of ``e`` in the branch's uniformizer.

    The branch is re-expanded at doubled precision until both numerator and
    denominator series show a nonzero term; the branch actually used is
    returned alongside.
    """
    if e.is_zero():
        raise ZeroElement("valuation of zero")
    while True:
        n, dser = _series_of(e, branch)
        if n.is_resolved() and dser.is_resolved():
            return n.valuation - dser.valuation, n.leading / dser.leading, branch
        if branch.precision >= cap:
            raise PrecisionExhausted(
                f"no nonzero coefficient of {e} found below t^{cap} at {branch.point.describe(e.curve.names)}",
                cap,
            )
        branch = branch_expand(e.curve, branch.point, min(2 * branch.precision, cap))


def ff_valuation(e: FFElem, point: ClosedPoint, branch: Branch | None = None, cap: int = DEFAULT_CAP) -> int:
    if branch is None:
        branch = branch_expand(e.curve, point)
    return expand(e, branch, cap)[0]


def _as_field(v, d):
    if d is not None and not isinstance(v, QuadFieldElem):
        return QuadFieldElem(d, v)
    if isinstance(v, int):
        return Fraction(v)
    return v


class TameResidue(NamedTuple):
    residue_class: object
    residue_trivial: bool
    v_a: int
    v_b: int


def tame_symbol_residue(a: FFElem, b: FFElem, branch: Branch, cap: int = DEFAULT_CAP) -> TameResidue:
    """Residue class of (-1)^(v(a)v(b)) a^v(b) b^(-v(a)) at the branch point."""
    va, la, branch = expand(a, branch, cap)
    vb, lb, branch = expand(b, branch, cap)
    sign = -1 if (va * vb) % 2 else 1
    r = sign * _power(la, vb) * _power(lb, -va)
    r = _as_field(r, branch.point.residue_d)
    trivial, _ = quad_is_square(r)
    return TameResidue(r, trivial, va, vb)


def _power(c, n: int):
    if n >= 0:
        out = Fraction(1)
        for _ in range(n):
            out = out * c
        return out
    return 1 / _power(c, -n)


def tame_residue(setup: TautSetup, point: ClosedPoint, branch: Branch | None = None, cap: int = DEFAULT_CAP) -> TameResidue:
    if branch is None:
        branch = branch_expand(setup.curve, point)
    return tame_symbol_residue(setup.a, setup.b, branch, cap)


@dataclass(frozen=True)
class PointVerdict:
    point: ClosedPoint
    v_a: int
    v_b: int
    residue_class: object
    residue_trivial: bool
    v_nrd_c: int
    nrd_leading: object
    nrd_even: bool
    extends_with_action: bool
    uniformizer: str

    @property
    def algebra_extends(self) -> bool:
        return self.residue_trivial


@dataclass(frozen=True)
class GlobalVerdict:
    extends: bool
    algebra_extends: bool
    per_point: tuple[PointVerdict, ...]


def point_verdict(
    setup: TautSetup,
    conj,
    point: ClosedPoint,
    precision: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_CAP,
) -> PointVerdict:
    branch = branch_expand(setup.curve, point, precision)
    res = tame_symbol_residue(setup.a, setup.b, branch, cap)
    v_nrd, lead, _ = expand(q_nrd(conj.c), branch, cap)
    even = v_nrd % 2 == 0
    return PointVerdict(
        point=point,
        v_a=res.v_a,
        v_b=res.v_b,
        residue_class=res.residue_class,
        residue_trivial=res.residue_trivial,
        v_nrd_c=v_nrd,
        nrd_leading=lead,
        nrd_even=even,
        extends_with_action=res.residue_trivial and even,
        uniformizer=branch.uniformizer,
    )


def global_verdict(
    setup: TautSetup,
    conj,
    points: list[ClosedPoint],
    precision: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_CAP,
) -> GlobalVerdict:
    per = tuple(point_verdict(setup, conj, p, precision, cap) for p in points)
    return GlobalVerdict(
        extends=all(v.extends_with_action for v in per),
        algebra_extends=all(v.residue_trivial for v in per),
        per_point=per,
    )

