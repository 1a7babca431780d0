"""The function field F = Q(x)[y]/(f) of a plane curve monic in y."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import DenominatorVanishesOnCurve, MismatchedCurve, NotInvertible, ValidationError
from .scalars import (
    RatFunc,
    UniPoly,
    as_fraction,
    dense_mul,
    dense_xgcd,
    strip,
    format_terms,
    poly_gcd,
    rational_sqrt,
)


class BiPoly:
    """Bivariate polynomial over Q as a sparse map ``(i, j) -> coeff`` of ``x^i y^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                clean[mono] = c
        self.terms: dict[tuple[int, int], Fraction] = clean

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def from_y_coeffs(cls, coeffs: Sequence[UniPoly]) -> BiPoly:
        return cls({(i, j): c for j, p in enumerate(coeffs) for i, c in enumerate(p.coeffs)})

    @staticmethod
    def _lift(other) -> BiPoly | None:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            out[mono] = out.get(mono, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def y_coeffs(self) -> list[UniPoly]:
        """Coefficients of ``y^0, y^1, ...`` as polynomials in x."""
        rows = [dict() for _ in range(self.deg_y + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [UniPoly([row.get(i, 0) for i in range(max(row, default=-1) + 1)]) for row in rows]

    def diff_x(self) -> BiPoly:
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def diff_y(self) -> BiPoly:
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def evaluate(self, xv, yv):
        """Evaluate at ring elements that mix with Fractions (field elements, series)."""
        xpow = [1]
        ypow = [1]
        for _ in range(self.deg_x):
            xpow.append(xpow[-1] * xv)
        for _ in range(self.deg_y):
            ypow.append(ypow[-1] * yv)
        rows: dict[int, list] = {}
        for (i, j), c in sorted(self.terms.items()):
            rows.setdefault(j, []).append((i, c))
        acc = 0
        for j, row in rows.items():
            inner = 0
            for i, c in row:
                inner = inner + (xpow[i] * c if i else c)
            acc = acc + (inner * ypow[j] if j else inner)
        return acc

    def substitute_y(self, p: UniPoly) -> UniPoly:
        acc = UniPoly()
        for coeff in reversed(self.y_coeffs()):
            acc = acc * p + coeff
        return acc

    def to_text(self, xname: str = "x", yname: str = "y") -> str:
        ordered = sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1]))
        return format_terms(((c, {xname: i, yname: j}) for (i, j), c in ordered), descending=True)

    def __repr__(self):
        return f"BiPoly({self.to_text()})"


def poly_sqrt(p: UniPoly) -> UniPoly | None:
    """Square root in Q[x] by top-down coefficient matching, or None."""
    if p.is_zero():
        return UniPoly()
    if p.degree % 2:
        return None
    lead = rational_sqrt(p.lc())
    if lead is None:
        return None
    n = p.degree // 2
    root = [Fraction(0)] * (n + 1)
    root[n] = lead
    for k in range(n - 1, -1, -1):
        # coefficient of x^(n + k) in root^2 determines root[k]
        acc = sum((root[i] * root[n + k - i] for i in range(k + 1, n)), Fraction(0))
        root[k] = (p.coeffs[n + k] - acc) / (2 * lead)
    s = UniPoly(root)
    return s if s * s == p else None


class CurvePoly:
    """A plane curve f(x, y) = 0, stored monic in y.

    ``source`` keeps the polynomial as supplied; ``coeffs`` are the y-power
    coefficients of the monicized polynomial.
    """

    def __init__(self, f: BiPoly, names: tuple[str, str] = ("x", "y"), check_irreducible: bool = True):
        if f.deg_y < 1:
            raise ValidationError("curve polynomial must involve the algebraic variable")
        coeffs = f.y_coeffs()
        lead = coeffs[-1]
        if lead.degree != 0:
            raise ValidationError(
                "curve must have a nonzero constant leading coefficient in the algebraic variable"
            )
        scale = lead.lc()
        self.source = f
        self.names = names
        self.coeffs: tuple[UniPoly, ...] = tuple(UniPoly(c / scale for c in p.coeffs) for p in coeffs)
        self.f = BiPoly.from_y_coeffs(self.coeffs)
        self.deg_y = len(self.coeffs) - 1
        self._rf_coeffs = [RatFunc(c) for c in self.coeffs]
        if check_irreducible and self.deg_y == 2:
            c0, c1 = self.coeffs[0], self.coeffs[1]
            if poly_sqrt(c1 * c1 - 4 * c0) is not None:
                raise ValidationError("curve is reducible over Q(x): discriminant is a square")

    def __eq__(self, other):
        if not isinstance(other, CurvePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CurvePoly({self.f.to_text(*self.names)})"

    # -- element construction

    def element(self, coeffs: Iterable) -> FFElem:
        """Element with the given y-power coefficients (RatFunc, UniPoly or rationals)."""
        cs = [c if isinstance(c, RatFunc) else RatFunc(c) for c in coeffs]
        den = _ONE_POLY
        for c in cs:
            den = _lcm(den, c.den)
        nums = [c.num * (den // c.den) for c in cs]
        return FFElem._make(self, self._reduce(nums), den)

    def const(self, c) -> FFElem:
        return self.element([c])

    def zero(self) -> FFElem:
        return self.element([])

    def one(self) -> FFElem:
        return self.const(1)

    def x(self) -> FFElem:
        return self.element([RatFunc.x()])

    def y(self) -> FFElem:
        return self.element([0, 1])

    def from_bipoly(self, p: BiPoly) -> FFElem:
        return self.element(p.y_coeffs())

    def substitute_y(self, p: UniPoly) -> UniPoly:
        return self.f.substitute_y(p)

    def _reduce(self, nums: list) -> list:
        """Reduce polynomial y-coefficients modulo the monic curve polynomial."""
        n = self.deg_y
        nums = list(nums)
        for k in range(len(nums) - 1, n - 1, -1):
            c = nums[k]
            if c.is_zero():
                continue
            for i in range(n):
                fi = self.coeffs[i]
                if not fi.is_zero():
                    nums[k - n + i] = nums[k - n + i] - c * fi
        nums = nums[:n]
        nums += [_ZERO_POLY] * (n - len(nums))
        return nums


_ZERO_POLY = UniPoly()
_ONE_POLY = UniPoly((1,))


def _lcm(p: UniPoly, q: UniPoly) -> UniPoly:
    if p == q or q.degree == 0:
        return p
    if p.degree == 0:
        return q
    return p * (q // poly_gcd(p, q))


class FFElem:
    """``(N_0 + N_1 y + ... + N_{n-1} y^{n-1}) / D`` with N_k, D in Q[x].

    Stored on a single monic denominator D coprime to the numerators jointly,
    which makes the representation canonical.
    """

    __slots__ = ("curve", "nums", "den")

    def __init__(self, curve: CurvePoly, nums: tuple[UniPoly, ...], den: UniPoly):
        self.curve = curve
        self.nums = nums
        self.den = den

    @classmethod
    def _make(cls, curve: CurvePoly, nums: list, den: UniPoly) -> FFElem:
        if all(c.is_zero() for c in nums):
            return cls(curve, tuple(_ZERO_POLY for _ in nums), _ONE_POLY)
        if den.degree > 0:
            g = den
            for c in nums:
                if not c.is_zero():
                    g = poly_gcd(g, c)
                    if g.degree == 0:
                        break
            if g.degree > 0:
                den = den // g
                nums = [c // g for c in nums]
        lead = den.lc()
        if lead != 1:
            den = den * (1 / lead)
            nums = [c * (1 / lead) for c in nums]
        return cls(curve, tuple(nums), den)

    @property
    def coeffs(self) -> tuple[RatFunc, ...]:
        """The y-power coefficients as reduced rational functions."""
        return tuple(RatFunc(c, self.den) for c in self.nums)

    def _lift(self, other) -> FFElem | None:
        if isinstance(other, FFElem):
            if other.curve is not self.curve and other.curve != self.curve:
                raise MismatchedCurve("elements belong to different curves")
            return other
        if isinstance(other, (int, Fraction, UniPoly, RatFunc)):
            return self.curve.const(other)
        return None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.nums)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except MismatchedCurve:
            return False
        if o is None:
            return NotImplemented
        return self.den == o.den and self.nums == o.nums

    def __hash__(self):
        return hash((self.nums, self.den))

    def _combine(self, o: FFElem, sign: int) -> FFElem:
        if self.den == o.den:
            nums = [a + b * sign for a, b in zip(self.nums, o.nums)]
            return FFElem._make(self.curve, nums, self.den)
        g = poly_gcd(self.den, o.den)
        ls, lo = o.den // g, self.den // g
        nums = [a * ls + b * lo * sign for a, b in zip(self.nums, o.nums)]
        return FFElem._make(self.curve, nums, self.den * ls)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.curve, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.curve.zero()
            return FFElem(self.curve, tuple(a * other for a in self.nums), self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        for u, v in ((self, o), (o, self)):
            c = u._rational()
            if c is not None:
                return v * c
        prod = dense_mul(self.nums, o.nums, _ZERO_POLY)
        return FFElem._make(self.curve, self.curve._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def _rational(self) -> Fraction | None:
        """The value if this element is a rational constant, else None."""
        if self.den.degree != 0 or any(not c.is_zero() for c in self.nums[1:]):
            return None
        c0 = self.nums[0]
        if c0.degree > 0:
            return None
        return c0.coeffs[0] if c0.coeffs else Fraction(0)

    def inverse(self) -> FFElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the function field")
        one = RatFunc(1)
        num = [RatFunc(c) for c in strip(self.nums)]
        g, s, _ = dense_xgcd(num, self.curve._rf_coeffs, RatFunc(0), one)
        if len(g) != 1:
            raise NotInvertible("element shares a factor with the curve polynomial; the curve is reducible")
        g0 = g[0]
        den = RatFunc(self.den)
        return self.curve.element(c * den / g0 for c in s)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FFElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.curve.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def as_fraction(self) -> tuple[BiPoly, UniPoly]:
        """Write as ``N(x, y) / D(x)`` with D monic of least degree."""
        return BiPoly.from_y_coeffs(self.nums), self.den

    def weight(self) -> int:
        """Pivot-selection size: total degree of the numerator in fraction form."""
        return self.as_fraction()[0].total_degree

    def to_text(self, names: tuple[str, str] | None = None) -> str:
        xname, yname = names or self.curve.names
        num, den = self.as_fraction()
        ntext = num.to_text(xname, yname)
        if den == 1:
            return ntext
        dtext = den.to_text(xname)
        # canonical: integer numerator coefficients where possible
        scale = lcm(*(c.denominator for c in num.terms.values())) if num.terms else 1
        if scale != 1:
            ntext = (num * scale).to_text(xname, yname)
            dtext = (den * scale).to_text(xname)
        return f"({ntext})/({dtext})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FFElem({self.to_text()})"


def ff_arith(lhs: FFElem, rhs: FFElem, op: str) -> FFElem:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def ff_inv(e: FFElem) -> FFElem:
    return e.inverse()


def ff_from_fraction(curve: CurvePoly, num: BiPoly, den: BiPoly) -> FFElem:
    d = curve.from_bipoly(den)
    if d.is_zero():
        raise DenominatorVanishesOnCurve(f"denominator {den.to_text(*curve.names)} is zero on the curve")
    return curve.from_bipoly(num) * d.inverse()
