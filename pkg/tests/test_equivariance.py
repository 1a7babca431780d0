import random
from fractions import Fraction

import pytest
import sympy

from azext.equivariance import (
    GroupAction,
    bareiss_kernel,
    check_character_trivial,
    check_order_two,
    compose_actions,
    conjugation_system,
    conjugator_squares_to_scalar,
    k_orientations,
    satisfies_system,
    scalar_multiple,
    solve_conjugator,
)
from azext.errors import NoSolution
from azext.quaternion import q_nrd
from azext.tautological import Word, parse_word


def test_preconditions(setup, rho, sigma, rho_sigma):
    for action in (rho, sigma, rho_sigma):
        assert check_character_trivial(setup, action)
        assert check_order_two(setup, action)


def test_character_triviality(setup):
    # g <-> h preserves all three traces; g -> g^2 does not
    swap = GroupAction("swap", Word.gen("h"), Word.gen("g"))
    assert check_character_trivial(setup, swap)
    square = GroupAction("sq", parse_word("g^2"), Word.gen("h"))
    assert not check_character_trivial(setup, square)


def test_composition_on_generators(rho, sigma, rho_sigma):
    # sigma(g) = g^-1, then rho(g^-1) = (g^-1 h g)^-1
    assert rho_sigma.img_g == parse_word("g^-1 h^-1 g")
    assert rho_sigma.img_h == rho.apply(sigma.img_h)
    assert compose_actions(rho, GroupAction.identity()) == GroupAction("rhoid", rho.img_g, rho.img_h)


def test_system_shape(setup, rho):
    m = conjugation_system(setup, rho)
    assert len(m) == 8 and all(len(row) == 4 for row in m)


def test_reference_conjugators_solve(setup, rho, sigma, ref_c_rho, ref_c_sigma, conjugators):
    assert satisfies_system(setup, rho, ref_c_rho)
    assert satisfies_system(setup, sigma, ref_c_sigma)
    assert scalar_multiple(ref_c_rho, conjugators["rho"].c) is not None
    assert scalar_multiple(ref_c_sigma, conjugators["sigma"].c) is not None


def test_k_orientation(setup, rho, sigma, ref_c_rho, ref_c_sigma):
    for action, c in ((rho, ref_c_rho), (sigma, ref_c_sigma)):
        assert k_orientations(setup, action, c.c0, c.c1, c.c2, c.c3) == {"ij": True, "-ij": False}


def test_solver_output(setup, conjugators, X, Y):
    c = conjugators["rho"].c
    assert c.coeffs == (0, (-4 * Y + 8) / (X * X - 2), (-(X**3) + 4 * X) / (X * X - 2), 1)
    c = conjugators["sigma"].c
    assert c.coeffs == (0, 0, (-(X * X) + 2) / X, 1)
    for conj in conjugators.values():
        assert conj.c.c3 == 1
        assert conjugator_squares_to_scalar(conj)


def test_composite_conjugator(setup, rho_sigma, conjugators):
    prod = conjugators["sigma"].c * conjugators["rho"].c
    assert satisfies_system(setup, rho_sigma, prod)
    assert scalar_multiple(prod, conjugators["rho_sigma"].c) is not None
    # rho and sigma commute up to inner automorphism: the other order agrees up to scalar
    assert scalar_multiple(conjugators["rho"].c * conjugators["sigma"].c, prod) is not None


def test_identity_action_gives_scalar(setup):
    # the commutant of a generating pair is the centre, so the kernel is one-dimensional
    assert solve_conjugator(setup, GroupAction.identity()).c == setup.algebra.one()


def test_kernel_dimension_of_zero_system():
    assert len(bareiss_kernel([[Fraction(0)] * 4] * 8)) == 4


def test_non_automorphism_has_no_solution(setup):
    with pytest.raises(NoSolution):
        solve_conjugator(setup, GroupAction("bad", parse_word("g^2"), Word.gen("h")))


def test_parity_invariant_under_scalars(setup, conjugators, P):
    from azext.local import ff_valuation

    rng = random.Random(3)
    X, Y = setup.curve.x(), setup.curve.y()
    c = conjugators["sigma"].c
    base = ff_valuation(q_nrd(c), P)
    for _ in range(6):
        s = rng.randint(1, 4) * X ** rng.randint(0, 2) + rng.randint(-3, 3) * Y - 3 * rng.randint(0, 1)
        if not s:
            continue
        v = ff_valuation(q_nrd(c * s), P)
        assert (v - base) % 2 == 0


def _random_matrix(rng, rows, cols, rank):
    basis = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rank)]
    out = []
    for _ in range(rows):
        w = [rng.randint(-2, 2) for _ in range(rank)]
        out.append([sum(w[k] * basis[k][j] for k in range(rank)) for j in range(cols)])
    return out


def test_bareiss_against_sympy_nullspace():
    rng = random.Random(2024)
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols, rng.randint(0, min(rows, cols)))
        kernel = bareiss_kernel(m)
        oracle = sympy.Matrix(m).nullspace()
        assert len(kernel) == len(oracle)
        for v in kernel:
            assert all(sum(row[j] * v[j] for j in range(cols)) == 0 for row in m)
        if kernel:
            k = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in kernel])
            assert k.rank() == len(kernel)
