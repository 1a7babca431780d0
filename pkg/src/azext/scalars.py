"""Exact scalar arithmetic: rationals, quadratic fields, polynomials over Q,
and rational functions over Q.

Rationals are plain :class:`fractions.Fraction` values. Everything here is
immutable and exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Union

from .errors import MismatchedField

Rational = Fraction
RationalLike = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_sqrt(q: RationalLike) -> Fraction | None:
    """Exact square root of a rational, or None if it is not a square."""
    q = as_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_rational_square(q: RationalLike) -> bool:
    return rational_sqrt(q) is not None


def squarefree_part(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``n = s**2 * d`` with ``d`` squarefree.

    Returns ``(d, s)``; the sign is carried by ``d``. Trial division, which
    is plenty for the discriminants met on desk-scale curves.
    """
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    d, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= n
    return sign * d, s


# ---------------------------------------------------------------------------
# Quadratic fields Q(sqrt d)


class QuadFieldElem:
    """``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d != 0, 1``."""

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: RationalLike = 0, b: RationalLike = 0):
        if d in (0, 1) or squarefree_part(d)[1] != 1:
            raise ValueError(f"d={d} is not a squarefree integer other than 0, 1")
        self.d = d
        self.a = as_fraction(a)
        self.b = as_fraction(b)

    @classmethod
    def _new(cls, d: int, a: Fraction, b: Fraction) -> QuadFieldElem:
        """Construct from an already validated d and Fraction parts."""
        e = object.__new__(cls)
        e.d, e.a, e.b = d, a, b
        return e

    @classmethod
    def sqrt_d(cls, d: int) -> QuadFieldElem:
        return cls(d, 0, 1)

    def _coerce(self, other) -> QuadFieldElem | None:
        if isinstance(other, QuadFieldElem):
            if other.d != self.d:
                raise MismatchedField(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElem._new(self.d, as_fraction(other), _ZERO)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem._new(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElem._new(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem._new(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem._new(
            self.d,
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadFieldElem:
        return QuadFieldElem._new(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadFieldElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadFieldElem._new(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadFieldElem(self.d, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadFieldElem):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __repr__(self):
        return f"QuadFieldElem({self.d}, {self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        if self.b == 1:
            tail = root
        elif self.b == -1:
            tail = "-" + root
        else:
            tail = f"{self.b}*{root}"
        if self.a == 0:
            return tail
        if tail.startswith("-"):
            return f"{self.a} - {tail[1:]}"
        return f"{self.a} + {tail}"


def quad_is_square(u) -> tuple[bool, object]:
    """Decide whether ``u`` is a square in its field (Q or Q(sqrt d)).

    Returns ``(True, w)`` with ``w*w == u`` exactly, or ``(False, None)``.
    """
    if not isinstance(u, QuadFieldElem):
        r = rational_sqrt(u)
        return (True, r) if r is not None else (False, None)
    d, a, b = u.d, u.a, u.b
    if b == 0:
        r = rational_sqrt(a)
        if r is not None:
            return True, QuadFieldElem(d, r)
        r = rational_sqrt(a / d)
        if r is not None:
            return True, QuadFieldElem(d, 0, r)
        return False, None
    # (p + q sqrt d)^2 = u  <=>  p^2 + d q^2 = a, 2pq = b
    n = rational_sqrt(u.norm())
    if n is None:
        return False, None
    for cand in ((a + n) / 2, (a - n) / 2):
        p = rational_sqrt(cand)
        if p:
            w = QuadFieldElem(d, p, b / (2 * p))
            if w * w == u:
                return True, w
    return False, None


# ---------------------------------------------------------------------------
# Dense univariate polynomials over an arbitrary exact field.
# Coefficient lists are lowest degree first with no trailing zeros.


_ZERO = Fraction(0)
_ONE = Fraction(1)


def strip(coeffs: Sequence) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def dense_divmod(num: Sequence, den: Sequence, zero) -> tuple[list, list]:
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(num)
    lead = den[-1]
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [], strip(rem)
    quot = [zero] * (len(rem) - dd)
    for k in range(len(rem) - 1 - dd, -1, -1):
        c = rem[k + dd] / lead
        quot[k] = c
        if c != 0:
            for i, dc in enumerate(den):
                rem[k + i] = rem[k + i] - c * dc
    return strip(quot), strip(rem[:dd])


def dense_mul(p: Sequence, q: Sequence, zero) -> list:
    if not p or not q:
        return []
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return strip(out)


def dense_add(p: Sequence, q: Sequence, zero) -> list:
    n = max(len(p), len(q))
    return strip(
        (p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)
    )


def dense_scale(p: Sequence, c) -> list:
    return strip(c * a for a in p)


def dense_xgcd(p: Sequence, q: Sequence, zero, one) -> tuple[list, list, list]:
    """Extended Euclid: returns ``(g, s, t)`` with ``s*p + t*q = g``."""
    r0, r1 = strip(p), strip(q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quo, rem = dense_divmod(r0, r1, zero)
        r0, r1 = r1, rem
        s0, s1 = s1, dense_add(s0, dense_scale(dense_mul(quo, s1, zero), -one), zero)
        t0, t1 = t1, dense_add(t0, dense_scale(dense_mul(quo, t1, zero), -one), zero)
    return r0, s0, t0


class UniPoly:
    """Polynomial in one variable over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        self.coeffs: tuple[Fraction, ...] = tuple(strip(as_fraction(c) for c in coeffs))

    @classmethod
    def _raw(cls, coeffs: list) -> UniPoly:
        """Wrap an already stripped list of Fractions without re-validating."""
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: RationalLike) -> UniPoly:
        return cls((c,))

    @staticmethod
    def _lift(other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return None

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return UniPoly._raw(dense_add(self.coeffs, o.coeffs, _ZERO))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

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
        if isinstance(other, (int, Fraction)):
            return UniPoly._raw([c * other for c in self.coeffs] if other else [])
        return UniPoly._raw(_qmul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        o = self._lift(other)
        q, r = dense_divmod(self.coeffs, o.coeffs, _ZERO)
        return UniPoly._raw(q), UniPoly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return UniPoly._raw([c / lead for c in self.coeffs])

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, value):
        """Horner evaluation at any ring element that mixes with Fractions."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def content_integral(self) -> list[int]:
        """Primitive integer coefficient list with the same roots."""
        from math import gcd, lcm

        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def to_text(self, var: str = "x") -> str:
        return format_terms(((c, {var: k}) for k, c in enumerate(self.coeffs)), descending=True)

    __str__ = to_text


def _integral(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """``coeffs == ints / den`` with a common positive denominator."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = den * c.denominator // gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            return ints
    return [v // g for v in ints] if g else ints


def _qmul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Product over Q computed on integer numerators."""
    if not p or not q:
        return []
    pi, dp = _integral(p)
    qi, dq = _integral(q)
    out = [0] * (len(pi) + len(qi) - 1)
    for i, a in enumerate(pi):
        if a:
            for j, b in enumerate(qi):
                out[i + j] += a * b
    d = dp * dq
    return strip([Fraction(v, d) for v in out])


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``.

    Runs a primitive pseudo-remainder sequence over Z, which avoids the
    rational blow-up of plain Euclid.
    """
    if not p.coeffs or not q.coeffs:
        return (p if p.coeffs else q).monic()
    a = _primitive(_integral(p.coeffs)[0])
    b = _primitive(_integral(q.coeffs)[0])
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        # pseudo-remainder of a by b
        r = list(a)
        lb, db = b[-1], len(b) - 1
        while len(r) - 1 >= db and r:
            lr, shift = r[-1], len(r) - 1 - db
            r = [v * lb for v in r]
            for k, bv in enumerate(b):
                r[shift + k] -= lr * bv
            while r and r[-1] == 0:
                r.pop()
        if not r:
            break
        a, b = b, _primitive(r)
    if len(b) == 1:
        return UniPoly._raw([_ONE])
    lead = b[-1]
    return UniPoly._raw([Fraction(v, lead) for v in b])


def format_terms(terms, descending: bool = False) -> str:
    """Render ``(coefficient, {var: exponent})`` pairs as parseable text."""
    items = [(c, mono) for c, mono in terms if c != 0]
    if descending:
        items.reverse()
    if not items:
        return "0"
    parts = []
    for c, mono in items:
        factors = []
        for var, e in mono.items():
            if e == 1:
                factors.append(var)
            elif e > 1:
                factors.append(f"{var}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Rational functions


class RatFunc:
    """``num/den`` in Q(x), reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly | RationalLike, den: UniPoly | RationalLike = 1, *, _reduced=False):
        num = UniPoly._lift(num)
        den = UniPoly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = UniPoly((1,))
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lc()
                if lead != 1:
                    num = UniPoly(c / lead for c in num.coeffs)
                    den = UniPoly(c / lead for c in den.coeffs)
        self.num = num
        self.den = den

    @staticmethod
    def _lift(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, UniPoly)):
            return RatFunc(other)
        return None

    @classmethod
    def x(cls) -> RatFunc:
        return cls(UniPoly.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

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
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(0)
            return RatFunc(self.num * other, self.den, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

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

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _reduced=True)

    def weight(self) -> int:
        """Size measure used for pivot selection: numerator degree."""
        return self.num.degree

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def to_text(self, var: str = "x") -> str:
        if self.den == 1:
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"

    __str__ = to_text


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def field_arith(lhs, rhs, op: str):
    """Apply ``op`` in {add, sub, mul, div} to two elements of one field."""
    if isinstance(lhs, QuadFieldElem) and isinstance(rhs, QuadFieldElem) and lhs.d != rhs.d:
        raise MismatchedField(f"Q(sqrt {lhs.d}) vs Q(sqrt {rhs.d})")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None
    return fn(lhs, rhs)
