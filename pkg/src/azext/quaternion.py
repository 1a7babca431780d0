"""Quaternion symbol algebras (a, b / F).

Elements are stored densely on the basis 1, i, j, ij with i^2 = a,
j^2 = b, ij = -ji. The scalar field is whatever ``a`` and ``b`` belong to
(function-field elements in practice, Fractions in some tests).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchedAlgebra, NotInvertible


def _one_like(x):
    return x**0


@dataclass(frozen=True)
class QuatAlgebra:
    a: object
    b: object

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ValueError("symbol algebra needs nonzero a and b")

    def elem(self, c0=0, c1=0, c2=0, c3=0) -> QuatElem:
        z = self.a * 0
        return QuatElem(self, c0 + z, c1 + z, c2 + z, c3 + z)

    def scalar(self, c) -> QuatElem:
        return self.elem(c)

    def one(self) -> QuatElem:
        return self.elem(_one_like(self.a))

    def zero(self) -> QuatElem:
        return self.elem()

    @property
    def i(self) -> QuatElem:
        return self.elem(0, 1)

    @property
    def j(self) -> QuatElem:
        return self.elem(0, 0, 1)

    @property
    def ij(self) -> QuatElem:
        return self.elem(0, 0, 0, 1)


class QuatElem:
    __slots__ = ("algebra", "c0", "c1", "c2", "c3")

    def __init__(self, algebra: QuatAlgebra, c0, c1, c2, c3):
        self.algebra = algebra
        self.c0, self.c1, self.c2, self.c3 = c0, c1, c2, c3

    @property
    def coeffs(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def _check(self, other: QuatElem) -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MismatchedAlgebra("quaternions from different algebras")

    def __eq__(self, other):
        if isinstance(other, QuatElem):
            return self.algebra == other.algebra and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, QuatElem):
            other = self.algebra.scalar(other)
        self._check(other)
        return QuatElem(self.algebra, *(p + q for p, q in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.algebra, *(-p for p in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, QuatElem):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuatElem):
            return QuatElem(self.algebra, *(p * other for p in self.coeffs))
        self._check(other)
        a, b = self.algebra.a, self.algebra.b
        p0, p1, p2, p3 = self.coeffs
        q0, q1, q2, q3 = other.coeffs
        ab = a * b
        return QuatElem(
            self.algebra,
            p0 * q0 + a * (p1 * q1) + b * (p2 * q2) - ab * (p3 * q3),
            p0 * q1 + p1 * q0 + b * (p3 * q2 - p2 * q3),
            p0 * q2 + p2 * q0 + a * (p1 * q3 - p3 * q1),
            p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
        )

    def __rmul__(self, scalar):
        return QuatElem(self.algebra, *(scalar * p for p in self.coeffs))

    def __truediv__(self, scalar):
        return QuatElem(self.algebra, *(p / scalar for p in self.coeffs))

    def __pow__(self, n: int) -> QuatElem:
        if n < 0:
            return q_inv(self) ** (-n)
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"QuatElem({self.c0!s}, {self.c1!s}, {self.c2!s}, {self.c3!s})"


def q_mul(p: QuatElem, q: QuatElem) -> QuatElem:
    return p * q


def q_conj(p: QuatElem) -> QuatElem:
    return QuatElem(p.algebra, p.c0, -p.c1, -p.c2, -p.c3)


def q_trd(p: QuatElem):
    return 2 * p.c0


def q_nrd(p: QuatElem):
    a, b = p.algebra.a, p.algebra.b
    return p.c0 * p.c0 - a * (p.c1 * p.c1) - b * (p.c2 * p.c2) + (a * b) * (p.c3 * p.c3)


def q_inv(p: QuatElem) -> QuatElem:
    n = q_nrd(p)
    if n == 0:
        raise NotInvertible("reduced norm is zero")
    return q_conj(p) / n


def q_form(p: QuatElem, q: QuatElem):
    """Symmetric bilinear form <p, q> = Trd(conj(p) q) / 2."""
    p._check(q)
    a, b = p.algebra.a, p.algebra.b
    return p.c0 * q.c0 - a * (p.c1 * q.c1) - b * (p.c2 * q.c2) + (a * b) * (p.c3 * q.c3)


def q_is_central(p: QuatElem) -> bool:
    return p.c1 == 0 and p.c2 == 0 and p.c3 == 0
