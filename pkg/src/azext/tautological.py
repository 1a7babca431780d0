"""The tautological quaternion algebra over a two-generator character curve.

Coordinates are x = I_g and y = I_gh on the curve; I_h defaults to x (the
generators are conjugate, as for two-bridge knots).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import (
    DegenerateTrace,
    NonGenerating,
    ParseError,
    UnsupportedResidueDegree,
    ValidationError,
)
from .funcfield import CurvePoly, FFElem
from .quaternion import QuatAlgebra, QuatElem, q_conj, q_nrd, q_trd
from .scalars import QuadFieldElem, UniPoly, poly_gcd, squarefree_part

GENERATORS = ("g", "h")


# ---------------------------------------------------------------------------
# Words in the free group on g, h


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> Word:
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}")
        sign = 1 if exp > 0 else -1
        return cls(((name, sign),) * abs(exp))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def __len__(self):
        return len(self.letters)

    def substitute(self, images: dict[str, Word]) -> Word:
        out: tuple = ()
        for g, e in self.letters:
            img = images[g]
            out += (img if e > 0 else img.inverse()).letters
        return Word(out)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            if parts and parts[-1][0] == g and (parts[-1][1] > 0) == (e > 0):
                parts[-1] = (g, parts[-1][1] + e)
            else:
                parts.append((g, e))
        return " ".join(g if n == 1 else f"{g}^{n}" for g, n in parts)


def _free_reduce(letters) -> tuple[tuple[str, int], ...]:
    stack: list[tuple[str, int]] = []
    for g, e in letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


_TOKEN = re.compile(r"\s*([gh])(?:\s*\^\s*(\{\s*-?\d+\s*\}|-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens ``g``, ``h^-1``, ``g^3`` (``1`` is the empty word)."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return Word()
    letters: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"bad word token in {text!r}", 1, col)
        exp = int(m.group(2).strip("{} ")) if m.group(2) else 1
        letters.extend([(m.group(1), 1 if exp > 0 else -1)] * abs(exp))
        pos = m.end()
    return Word(tuple(letters))


# ---------------------------------------------------------------------------
# Setup


@dataclass
class TautSetup:
    curve: CurvePoly
    Ig: FFElem
    Ih: FFElem
    Igh: FFElem
    algebra: QuatAlgebra
    mg: QuatElem
    mh: QuatElem
    Q: FFElem
    conjugate: bool
    b_general: FFElem
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def a(self) -> FFElem:
        return self.algebra.a

    @property
    def b(self) -> FFElem:
        return self.algebra.b


def build_symbol(curve: CurvePoly, Ih: FFElem | None = None, conjugate: bool = True) -> TautSetup:
    x, y = curve.x(), curve.y()
    Ih = x if Ih is None else Ih
    if conjugate and Ih != x:
        raise ValidationError("conjugate generators require I_h = I_g")
    a = x * x - 4
    if a.is_zero():
        raise DegenerateTrace("I_g^2 - 4 vanishes identically")
    cross = 2 * y - x * Ih
    b_general = -(a * (Ih * Ih - 4)) + cross * cross
    if conjugate:
        b = 4 * (y - 2) * (y - x * x + 2)
        if b != b_general:
            raise AssertionError("conjugate-generator form of j^2 disagrees with the general form")
    else:
        b = b_general
    if b.is_zero():
        raise NonGenerating("j^2 vanishes: m_g and m_h do not generate the algebra")
    algebra = QuatAlgebra(a, b)
    Q = cross / a
    half = Fraction(1, 2)
    mg = algebra.elem(x * half, half)
    mh = algebra.elem(Ih * half, Q * half, 0, -(2 * a).inverse())
    setup = TautSetup(curve, x, Ih, y, algebra, mg, mh, Q, conjugate, b_general)
    _verify_setup(setup)
    return setup


def _verify_setup(s: TautSetup) -> None:
    if mg_mh_commute(s):
        raise NonGenerating("m_g and m_h commute")
    checks = [
        (q_trd(s.mg), s.Ig, "Trd(m_g) != I_g"),
        (q_trd(s.mh), s.Ih, "Trd(m_h) != I_h"),
        (q_trd(s.mg * s.mh), s.Igh, "Trd(m_g m_h) != I_gh"),
        (q_nrd(s.mg), 1, "Nrd(m_g) != 1"),
        (q_nrd(s.mh), 1, "Nrd(m_h) != 1"),
    ]
    for got, want, msg in checks:
        if got != want:
            raise AssertionError(msg)


def mg_mh_commute(s: TautSetup) -> bool:
    return s.mg * s.mh == s.mh * s.mg


def eval_word(setup: TautSetup, w: Word) -> QuatElem:
    """Image of a group word in the algebra; inverses are conjugates (norm one)."""
    key = ("w", w)
    if key in setup._cache:
        return setup._cache[key]
    letters = w.letters
    # start from the longest cached prefix; every prefix is cached on the way
    k = max(len(letters) - 1, 0)
    while k > 0 and ("w", Word(letters[:k])) not in setup._cache:
        k -= 1
    result = setup._cache[("w", Word(letters[:k]))] if k > 0 else setup.algebra.one()
    for n in range(k, len(letters)):
        name, exp = letters[n]
        gen = setup.mg if name == "g" else setup.mh
        result = result * (gen if exp > 0 else q_conj(gen))
        setup._cache[("w", Word(letters[: n + 1]))] = result
    return result


def char_fn(setup: TautSetup, w: Word) -> FFElem:
    return q_trd(eval_word(setup, w))


# ---------------------------------------------------------------------------
# Closed points and the reducibility locus


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point with residue field Q or Q(sqrt d), given by a root of
    ``x_min_poly`` and the y-coordinate in the same residue field."""

    x_min_poly: UniPoly
    x_image: object
    y_image: object
    residue_d: int | None = None
    root_label: str | None = None

    def conjugate(self) -> ClosedPoint:
        """The Galois-conjugate geometric point (same closed point, other root)."""
        if self.residue_d is None:
            return self

        def conj(v):
            return v.conjugate() if isinstance(v, QuadFieldElem) else v

        label = {"plus": "minus", "minus": "plus"}.get(self.root_label)
        return ClosedPoint(self.x_min_poly, conj(self.x_image), conj(self.y_image), self.residue_d, label)

    def describe(self, names=("x", "y")) -> str:
        return f"{self.x_min_poly.to_text(names[0])} = 0, {names[1]} = {self.y_image}"


def quadratic_root(p: UniPoly, label: str = "plus") -> tuple[QuadFieldElem, int]:
    """A root of an irreducible quadratic, as an element of Q(sqrt d)."""
    m = p.monic()
    q0, q1 = m.coeffs[0], m.coeffs[1]
    disc = q1 * q1 - 4 * q0
    # disc = num/den = (num*den)/den^2
    d, s = squarefree_part(disc.numerator * disc.denominator)
    if d == 1:
        raise ValidationError(f"{p.to_text()} is reducible over Q")
    sign = 1 if label == "plus" else -1
    root = QuadFieldElem(d, -q1 / 2, sign * Fraction(s, 2 * disc.denominator))
    return root, d


def make_point(curve: CurvePoly, x_min_poly: UniPoly, y_value: UniPoly, root_label: str = "plus") -> ClosedPoint:
    """Build and validate a closed point; ``y_value`` is a polynomial in the chosen root."""
    m = x_min_poly.monic()
    if m.degree == 1:
        x0 = -m.coeffs[0]
        d = None
    elif m.degree == 2:
        x0, d = quadratic_root(m, root_label)
    else:
        raise UnsupportedResidueDegree(f"residue field of degree {m.degree} > 2")
    if root_label not in ("plus", "minus"):
        raise ValidationError(f"root label must be plus or minus, not {root_label!r}")
    y0 = y_value(x0)
    if isinstance(y0, int):
        y0 = Fraction(y0)
    if curve.f.evaluate(x0, y0) != 0:
        raise ValidationError(f"point ({x0}, {y0}) is not on the curve")
    return ClosedPoint(m, x0, y0, d, root_label if d is not None else None)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            out.append(k)
            if k * k != n:
                out.append(n // k)
    return sorted(out)


def irreducible_factors(p: UniPoly) -> list[UniPoly]:
    """Distinct monic irreducible factors of degree <= 2 of a nonzero polynomial.

    Rational roots are split off; the leftover must be constant or an
    irreducible quadratic.
    """
    if p.degree <= 0:
        return []
    sqfree = p // poly_gcd(p, p.derivative())
    factors = []
    rest = sqfree.monic()
    if rest.coeffs[0] == 0:
        factors.append(UniPoly.x())
        rest = rest // UniPoly.x()
    if rest.degree > 0:
        ints = rest.content_integral()
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    lin = UniPoly((-r, 1))
                    if lin not in factors and rest.degree > 0 and rest(r) == 0:
                        factors.append(lin)
                        rest = rest // lin
    if rest.degree == 2:
        factors.append(rest.monic())
    elif rest.degree > 2:
        raise UnsupportedResidueDegree(
            f"factor {rest.to_text()} of degree {rest.degree} has no rational root; residue fields above degree 2 are unsupported"
        )
    return sorted(factors, key=lambda f: (f.degree, f.coeffs))


def reducible_branches() -> list[tuple[str, UniPoly]]:
    x = UniPoly.x()
    return [("y = 2", UniPoly.const(2)), ("y = x^2 - 2", x * x - 2)]


def reducible_locus(setup: TautSetup) -> list[ClosedPoint]:
    """Closed points where a representation with conjugate generators is reducible."""
    if not setup.conjugate:
        raise ValidationError("the reducibility criterion needs conjugate generators")
    curve = setup.curve
    points: list[ClosedPoint] = []
    seen = set()
    for _, ypoly in reducible_branches():
        restricted = curve.substitute_y(ypoly)
        if restricted.is_zero():
            raise ValidationError("curve lies entirely in the reducible locus")
        for factor in irreducible_factors(restricted):
            pt = make_point(curve, factor, ypoly, "plus")
            key = (pt.x_min_poly, pt.y_image)
            if key not in seen:
                seen.add(key)
                points.append(pt)
    return points
