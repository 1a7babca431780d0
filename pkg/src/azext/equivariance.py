"""C2-actions on the generators and their Skolem-Noether conjugators.

Convention: the conjugator c of an action phi satisfies

    m_gamma * c = c * m_{phi(gamma)}    for gamma in {g, h},

so phi acts on the algebra as x -> c^{-1} x c.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoSolution, NonUniqueSolution
from .funcfield import FFElem
from .quaternion import QuatElem, q_is_central, q_nrd
from .tautological import TautSetup, Word, char_fn, eval_word

NORMALIZATION = "highest-index nonzero coefficient scaled to 1"


@dataclass(frozen=True)
class GroupAction:
    name: str
    img_g: Word
    img_h: Word

    @classmethod
    def identity(cls, name: str = "id") -> GroupAction:
        return cls(name, Word.gen("g"), Word.gen("h"))

    def images(self) -> dict[str, Word]:
        return {"g": self.img_g, "h": self.img_h}

    def apply(self, w: Word) -> Word:
        return w.substitute(self.images())


@dataclass(frozen=True)
class Conjugator:
    c: QuatElem
    normalization: str = NORMALIZATION


def compose_actions(a1: GroupAction, a2: GroupAction, name: str | None = None) -> GroupAction:
    """The action ``a1 o a2``: apply a2 first, then a1."""
    return GroupAction(name or f"{a1.name}{a2.name}", a1.apply(a2.img_g), a1.apply(a2.img_h))


def check_character_trivial(setup: TautSetup, action: GroupAction) -> bool:
    return (
        char_fn(setup, action.img_g) == setup.Ig
        and char_fn(setup, action.img_h) == setup.Ih
        and char_fn(setup, action.img_g * action.img_h) == setup.Igh
    )


def check_order_two(setup: TautSetup, action: GroupAction) -> bool:
    """phi^2 fixes m_g and m_h; compared in the algebra, not as free words."""
    return eval_word(setup, action.apply(action.img_g)) == setup.mg and eval_word(
        setup, action.apply(action.img_h)
    ) == setup.mh


# ---------------------------------------------------------------------------
# Linear algebra over the function field


def _basis(setup: TautSetup) -> list[QuatElem]:
    alg = setup.algebra
    return [alg.one(), alg.i, alg.j, alg.ij]


def conjugation_system(setup: TautSetup, action: GroupAction) -> list[list[FFElem]]:
    """8 x 4 matrix whose kernel is the set of conjugators for ``action``."""
    basis = _basis(setup)
    rows: list[list[FFElem]] = []
    for m, img in ((setup.mg, action.img_g), (setup.mh, action.img_h)):
        target = eval_word(setup, img)
        cols = [(m * e - e * target).coeffs for e in basis]
        for r in range(4):
            rows.append([cols[k][r] for k in range(4)])
    return rows


def _weight(v) -> int:
    w = getattr(v, "weight", None)
    if w is not None:
        return w()
    return 0


def bareiss_kernel(matrix: list[list]) -> list[list]:
    """Basis of the right kernel via fraction-free elimination with full pivoting.

    Pivots are chosen by least weight (numerator degree for function-field
    entries). Each step divides by the previous pivot, which is exact.
    """
    m = [list(row) for row in matrix]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    perm = list(range(ncols))
    prev = None
    rank = 0
    for k in range(min(nrows, ncols)):
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if m[i][j] != 0:
                    w = _weight(m[i][j])
                    if best is None or w < best[0]:
                        best = (w, i, j)
        if best is None:
            break
        _, pi, pj = best
        m[k], m[pi] = m[pi], m[k]
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            perm[k], perm[pj] = perm[pj], perm[k]
        piv = m[k][k]
        for i in range(k + 1, nrows):
            lead = m[i][k]
            for j in range(k + 1, ncols):
                val = piv * m[i][j] - lead * m[k][j]
                m[i][j] = val if prev is None else val / prev
            m[i][k] = lead * 0
        prev = piv
        rank += 1
    zero = m[0][0] * 0
    one = zero + 1
    basis = []
    for free in range(rank, ncols):
        x = [zero] * ncols
        x[free] = one
        for k in range(rank - 1, -1, -1):
            acc = zero
            for j in range(k + 1, ncols):
                if x[j] != 0:
                    acc = acc + m[k][j] * x[j]
            x[k] = -acc / m[k][k]
        out = [zero] * ncols
        for pos, col in enumerate(perm):
            out[col] = x[pos]
        basis.append(out)
    return basis


def _normalize(coeffs: list) -> list:
    for v in reversed(coeffs):
        if v != 0:
            return [c / v for c in coeffs]
    return coeffs


def satisfies_system(setup: TautSetup, action: GroupAction, c: QuatElem) -> bool:
    return setup.mg * c == c * eval_word(setup, action.img_g) and setup.mh * c == c * eval_word(
        setup, action.img_h
    )


def solve_conjugator(setup: TautSetup, action: GroupAction) -> Conjugator:
    kernel = bareiss_kernel(conjugation_system(setup, action))
    if not kernel:
        raise NoSolution(f"action {action.name} does not induce an algebra automorphism")
    if len(kernel) > 1:
        raise NonUniqueSolution(
            f"conjugator space for {action.name} has dimension {len(kernel)}", len(kernel)
        )
    c = setup.algebra.elem(*_normalize(kernel[0]))
    return Conjugator(c)


def nrd_of_conjugator(setup: TautSetup, conj: Conjugator) -> FFElem:
    return q_nrd(conj.c)


def conjugator_squares_to_scalar(conj: Conjugator) -> bool:
    return q_is_central(conj.c * conj.c)


def scalar_multiple(p: QuatElem, q: QuatElem):
    """Return ``s`` with ``p == s * q``, or None if p is not an F-multiple of q."""
    pivot = next((k for k, v in enumerate(q.coeffs) if v != 0), None)
    if pivot is None:
        return None
    s = p.coeffs[pivot] / q.coeffs[pivot]
    return s if q * s == p else None


def k_orientations(setup: TautSetup, action: GroupAction, c0, c1, c2, k_coeff) -> dict[str, bool]:
    """For an element written ``c0 + c1 i + c2 j + k_coeff k``, report whether it
    solves the system under each reading ``k = ij`` and ``k = -ij``."""
    alg = setup.algebra
    return {
        "ij": satisfies_system(setup, action, alg.elem(c0, c1, c2, k_coeff)),
        "-ij": satisfies_system(setup, action, alg.elem(c0, c1, c2, -k_coeff)),
    }
