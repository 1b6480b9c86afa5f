import random

import pytest
import sympy

from ebring import make_gf
from ebring import gfpoly


def _random_poly(rng, q, max_deg):
    return gfpoly.trim(make_gf(q), tuple(rng.randrange(q) for _ in range(max_deg + 1)))


def test_divmod_reconstructs_dividend():
    rng = random.Random(7)
    for q in (2, 3, 5):
        field = make_gf(q)
        for _ in range(200):
            a = _random_poly(rng, q, 6)
            b = ()
            while not b:
                b = _random_poly(rng, q, 3)
            quo, rem = gfpoly.divmod_poly(field, a, b)
            back = gfpoly.add(field, gfpoly.mul(field, quo, b), rem)
            assert back == a
            assert gfpoly.degree(rem) < gfpoly.degree(b)


def test_monic_enumeration_order_and_count():
    field = make_gf(2)
    polys = list(gfpoly.monic_polys(field, 2))
    assert polys == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]


def test_find_irreducible_degree_two_over_gf2():
    field = make_gf(2)
    assert gfpoly.find_irreducible(field, 2) == (1, 1, 1)  # x^2+x+1


def test_find_irreducible_degree_two_over_gf3():
    field = make_gf(3)
    assert gfpoly.find_irreducible(field, 2) == (1, 0, 1)  # x^2+1


def test_irreducibles_have_no_roots():
    for q, deg in ((2, 3), (3, 3), (5, 2)):
        field = make_gf(q)
        f = gfpoly.find_irreducible(field, deg)
        for a in range(q):
            acc = field.zero
            for c in reversed(f):
                acc = field.add(field.mul(acc, a), c)
            assert acc != field.zero


def _sympy_factor_signature(q, coeffs):
    x = sympy.symbols("x")
    expr = sum(int(c) * x**e for e, c in enumerate(coeffs))
    _, factors = sympy.Poly(expr, x, modulus=q).factor_list()
    return sorted((sympy.Poly(g, x).degree(), k) for g, k in factors)


@pytest.mark.parametrize("q", [2, 3])
def test_factor_monic_matches_sympy_over_prime_fields(q):
    field = make_gf(q)
    for deg in (1, 2, 3, 4):
        for f in gfpoly.monic_polys(field, deg):
            ours = sorted((gfpoly.degree(g), k) for g, k in gfpoly.factor_monic(field, f))
            assert ours == _sympy_factor_signature(q, f), f
            total = sum(gfpoly.degree(g) * k for g, k in gfpoly.factor_monic(field, f))
            assert total == deg


def test_factor_monic_reassembles_product():
    field = make_gf(3)
    rng = random.Random(21)
    for _ in range(50):
        f = gfpoly.trim(field, tuple(rng.randrange(3) for _ in range(5)))
        if not gfpoly.is_monic(field, f) or gfpoly.degree(f) < 1:
            continue
        prod = (field.one,)
        for g, k in gfpoly.factor_monic(field, f):
            for _ in range(k):
                prod = gfpoly.mul(field, prod, g)
        assert prod == f


def test_render_sparse_descending():
    field = make_gf(3)
    assert gfpoly.render(field, (1, 0, 2, 1)) == "x^3+2x^2+1"
    assert gfpoly.render(field, (0, 1)) == "x"
    assert gfpoly.render(field, ()) == "0"


def test_from_int_coeffs_reduces_mod_char():
    field = make_gf(2)
    assert gfpoly.from_int_coeffs(field, (3, 2, 1)) == (1, 0, 1)
