"""Polynomial arithmetic, gcd, squarefree decomposition and roots."""

import random
from fractions import Fraction

import pytest

from kresolve.polyring import (
    MPoly,
    PolyError,
    default_ring,
    equal_up_to_unit,
    exact_div,
    kth_root,
    multidegree,
    multivariate_gcd,
    parse_poly,
    poly_to_text,
    squarefree_decompose,
    unit_normalize,
)

R2 = default_ring(2)  # u, v, w with pairs (x0,y0), (x1,y1), (x2,y2)


def P(text):
    return parse_poly(text, R2)


def random_poly(rng, ring, max_deg=2, max_terms=4, vars_limit=None):
    nv = ring.num_vars if vars_limit is None else vars_limit
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.num_vars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(nv)] += 1
        c = rng.randint(-5, 5)
        if c:
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c
    return MPoly(ring, {e: c for e, c in terms.items() if c})


# -- parsing ---------------------------------------------------------------


def test_parse_two_term_form():
    p = P("x0*v - y0*u")
    assert len(p.terms) == 2
    assert p == R2.var("x0") * R2.var("v") - R2.var("y0") * R2.var("u")


def test_parse_zero():
    assert P("0").is_zero()
    assert P("0").terms == {}


def test_parse_expansion_cancels():
    assert P("(u+v)^2 - u^2 - 2*u*v") == P("v^2")


def test_parse_rational_literal():
    assert P("1/2*u + 1/2*u") == P("u")


def test_parse_errors():
    with pytest.raises(PolyError):
        P("q + 1")  # unknown variable
    with pytest.raises(PolyError):
        P("u + ")
    with pytest.raises(PolyError):
        P("u^-2")


def test_print_round_trip():
    p = P("3*u^2*v - 2*x0*y0 + 1/3*w")
    assert parse_poly(poly_to_text(p), R2) == p


# -- products and evaluation -------------------------------------------------


def test_product_difference_of_squares():
    assert P("u+v") * P("u-v") == P("u^2 - v^2")


def test_product_square_of_linear_form():
    # (-2u+v)^2 expanded by hand: 4u^2 - 4uv + v^2
    assert P("-2*u+v") ** 2 == P("4*u^2 - 4*u*v + v^2")


def test_product_identity():
    f = P("u^2*x1 - 3*v*w*y2")
    assert f * R2.one() == f


def test_ring_mismatch_rejected():
    other = default_ring(1)
    with pytest.raises(PolyError):
        P("u") * parse_poly("u", other)


def test_evaluate_pair_form_at_point():
    L2 = P("x2*w^2 - y2*v^2")
    assert L2.substitute({"u": 0, "v": 0, "w": 1}) == P("x2")


def test_evaluate_homogeneous_at_origin():
    p = P("u^2*v + w^3")
    assert p.substitute({"u": 0, "v": 0, "w": 0}).is_zero()


def test_evaluate_vanishing_on_image():
    # H = x0^2*y1 - x1*y0^2 composed with x0=u, y0=v, x1=u^2, y1=v^2
    H = P("x0^2*y1 - x1*y0^2")
    sub = H.substitute({"x0": P("u"), "y0": P("v"), "x1": P("u^2"), "y1": P("v^2")})
    assert sub.is_zero()
    assert H.substitute(
        {"x0": P("u"), "y0": P("v"), "x1": P("u^2"), "y1": P("v^2"), "u": 1, "v": 2, "w": 3}
    ).is_zero()


# -- multidegree -------------------------------------------------------------


def test_multidegree_bilinear_form():
    d = multidegree(P("x0*v - y0*u"))
    assert d.t_deg == 1
    assert d.pair_degs == (1, 0, 0)


def test_multidegree_constant():
    d = multidegree(P("5"))
    assert d.t_deg == 0 and d.pair_degs == (0, 0, 0)


def test_multidegree_inhomogeneous():
    assert multidegree(P("u + v^2")).t_deg is None


def test_multidegree_additive_on_products():
    rng = random.Random(7)
    for _ in range(30):
        # random homogeneous pieces: monomial scale keeps each block homogeneous
        a = random_poly(rng, R2, max_deg=2, max_terms=1)
        b = random_poly(rng, R2, max_deg=3, max_terms=1)
        if a.is_zero() or b.is_zero():
            continue
        da, db, dab = multidegree(a), multidegree(b), multidegree(a * b)
        assert dab.t_deg == da.t_deg + db.t_deg
        assert dab.pair_degs == tuple(x + y for x, y in zip(da.pair_degs, db.pair_degs))


# -- ring axioms (randomized) -------------------------------------------------


def test_distributivity_100_random():
    rng = random.Random(2024)
    for _ in range(100):
        a = random_poly(rng, R2)
        b = random_poly(rng, R2)
        c = random_poly(rng, R2)
        assert (a + b) * c == a * c + b * c


# -- gcd ----------------------------------------------------------------------


def test_gcd_monomials():
    assert multivariate_gcd(P("u^2*v"), P("u*v^2")) == P("u*v")


def test_gcd_coprime():
    assert multivariate_gcd(P("u"), P("v")) == P("1")


def test_gcd_common_hidden_factor():
    H = P("x0^2*y1 - x1*y0^2")
    assert multivariate_gcd(H * P("x2"), H * P("y2")) == unit_normalize(H)


def test_gcd_both_zero_errors():
    with pytest.raises(PolyError):
        multivariate_gcd(R2.zero(), R2.zero())


def test_gcd_multiplicative():
    rng = random.Random(11)
    done = 0
    while done < 20:
        a = random_poly(rng, R2, max_deg=2, max_terms=2, vars_limit=3)
        b = random_poly(rng, R2, max_deg=2, max_terms=2, vars_limit=3)
        c = random_poly(rng, R2, max_deg=2, max_terms=2, vars_limit=3)
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = multivariate_gcd(a, b)
        lhs = multivariate_gcd(a * c, b * c)
        assert equal_up_to_unit(lhs, g * c)
        done += 1


# -- squarefree decomposition ---------------------------------------------------


def test_squarefree_square_times_linear():
    p = P("(u-v)^2*(u+v)")
    decomp = squarefree_decompose(p)
    assert [(poly_to_text(q), m) for q, m in decomp.parts] == [("u + v", 1), ("u - v", 2)]


def test_squarefree_already_squarefree():
    decomp = squarefree_decompose(P("u+v"))
    assert [(poly_to_text(q), m) for q, m in decomp.parts] == [("u + v", 1)]


def test_squarefree_merges_equal_multiplicities():
    H = P("x0^2*y1 - x1*y0^2")
    decomp = squarefree_decompose(P("x2^2") * H ** 2)
    assert len(decomp.parts) == 1
    q, m = decomp.parts[0]
    assert m == 2
    assert equal_up_to_unit(q, P("x2") * H)


def test_squarefree_reconstruction_random():
    rng = random.Random(5)
    done = 0
    while done < 15:
        a = random_poly(rng, R2, max_deg=2, max_terms=2, vars_limit=3)
        b = random_poly(rng, R2, max_deg=1, max_terms=2, vars_limit=3)
        if a.is_zero() or b.is_zero() or a.is_constant() or b.is_constant():
            continue
        p = a * a * b
        decomp = squarefree_decompose(p)
        assert equal_up_to_unit(decomp.reconstruct(), p)
        done += 1


def test_squarefree_zero_errors():
    with pytest.raises(PolyError):
        squarefree_decompose(R2.zero())


# -- k-th roots -------------------------------------------------------------------


def test_kth_root_square():
    H = P("x0^2*y1 - x1*y0^2")
    assert equal_up_to_unit(kth_root(H * H, 2), H)


def test_kth_root_identity():
    f = P("u^2 - v*w")
    assert equal_up_to_unit(kth_root(f, 1), f)


def test_kth_root_not_a_cube():
    with pytest.raises(PolyError):
        kth_root(P("x0^2*y1 - x1*y0^2"), 3)


def test_kth_root_round_trip_random():
    rng = random.Random(13)
    done = 0
    while done < 10:
        p = random_poly(rng, R2, max_deg=2, max_terms=2, vars_limit=4)
        if p.is_zero() or p.is_constant():
            continue
        for k in (2, 3):
            assert equal_up_to_unit(kth_root(p ** k, k), p)
        done += 1


# -- normalization ------------------------------------------------------------------


def test_unit_normalize_primitive_positive():
    p = P("-2/3*u^2 + 4/3*u*v")
    q = unit_normalize(p)
    assert poly_to_text(q) == "u^2 - 2*u*v"


def test_exact_division():
    a = P("u^2 - v^2")
    assert exact_div(a, P("u+v")) == P("u-v")
    with pytest.raises(PolyError):
        exact_div(P("u^2 + v"), P("u+v"))
