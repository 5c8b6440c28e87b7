"""Determinant backends: Cayley minors and evaluation-interpolation."""

import random
from fractions import Fraction

import pytest

from kresolve.config import seeded_rng
from kresolve.polyring import (
    MPoly,
    PolyError,
    default_ring,
    equal_up_to_unit,
    multidegree,
    parse_poly,
    poly_to_text,
)
from kresolve.koszul import MapSpec, koszul_strand, linear_forms
from kresolve.detcx import (
    NotGenericallyExact,
    det_cayley,
    det_interpolate,
    macaulay_resultant,
)

from oracles import sylvester_resultant

R1 = default_ring(1)
R2 = default_ring(2)


def P2(text):
    return parse_poly(text, R2)


def P1(text):
    return parse_poly(text, R1)


def spec2(pair_texts, mode="strict"):
    return MapSpec.of(R2, [(P2(f), P2(g)) for f, g in pair_texts], mode=mode)


EX1 = spec2([("u", "v"), ("u^2", "v^2"), ("v^2", "w^2")])
EX2 = spec2([("u*w", "v^2"), ("u^2", "v^2"), ("v^2", "w^2")])
GOLDEN1 = P2("x2^2") * P2("x0^2*y1 - x1*y0^2") ** 2
GOLDEN2 = P2("y1^2") * P2("x2^2") * P2("x2*x0^2*y1 - y2*x1*y0^2") ** 2


def random_binary_form(rng, deg):
    while True:
        terms = {}
        for k in range(deg + 1):
            c = rng.randint(-5, 5)
            if c:
                terms[(deg - k, k) + (0,) * 4] = Fraction(c)
        p = MPoly(R1, terms)
        if not p.is_zero():
            return p


def random_p1_map(rng, d0, d1):
    from kresolve.polyring import multivariate_gcd

    while True:
        f0, g0 = random_binary_form(rng, d0), random_binary_form(rng, d0)
        f1, g1 = random_binary_form(rng, d1), random_binary_form(rng, d1)
        try:
            return MapSpec.of(R1, [(f0, g0), (f1, g1)])
        except PolyError:
            continue


# -- cayley ---------------------------------------------------------------


def test_two_by_two_determinant():
    spec = MapSpec.of(R1, [(P1("u"), P1("v")), (P1("u"), P1("v"))])
    res = det_cayley(koszul_strand(linear_forms(spec)))
    assert equal_up_to_unit(res.poly, P1("x0*y1 - x1*y0"))


def test_cayley_example_one():
    res = det_cayley(koszul_strand(linear_forms(EX1), 3))
    assert equal_up_to_unit(res.poly, GOLDEN1)
    assert res.multidegree == (4, 2, 2)
    assert res.certificate is not None and res.certificate.method == "cayley"


def test_cayley_detects_nonexact_strand():
    triple = MapSpec.of(R2, [(P2("u"), P2("v"))] * 3)
    with pytest.raises(NotGenericallyExact):
        det_cayley(koszul_strand(linear_forms(triple)))


# -- interpolation -----------------------------------------------------------


def test_interpolate_matches_cayley_example_one():
    strand = koszul_strand(linear_forms(EX1), 3)
    a = det_cayley(strand)
    b = det_interpolate(strand)
    assert equal_up_to_unit(a.poly, b.poly)


def test_interpolate_example_two():
    res = det_interpolate(koszul_strand(linear_forms(EX2)))
    assert equal_up_to_unit(res.poly, GOLDEN2)


def test_interpolate_survives_singular_grid_points():
    # Example 2's subsets hit singular minors on some grids; the retry
    # contract says the final result must be unchanged.
    for seed in (1, 2, 3):
        res = det_interpolate(koszul_strand(linear_forms(EX2)), rng=random.Random(seed))
        assert equal_up_to_unit(res.poly, GOLDEN2)


# -- front door ---------------------------------------------------------------


def test_macaulay_resultant_example_one():
    res = macaulay_resultant(EX1, nu=3)
    assert equal_up_to_unit(res.poly, GOLDEN1)


def test_macaulay_resultant_pair_swap_symmetry():
    swapped = spec2([("u", "v"), ("v^2", "w^2"), ("u^2", "v^2")])
    res = macaulay_resultant(swapped)
    relabeled = P2("x1^2") * P2("x0^2*y2 - x2*y0^2") ** 2
    assert equal_up_to_unit(res.poly, relabeled)


def test_macaulay_resultant_methods_agree():
    res = macaulay_resultant(EX2, method="both")
    assert equal_up_to_unit(res.poly, GOLDEN2)


def test_macaulay_resultant_zero_with_diagnostic():
    triple = MapSpec.of(R2, [(P2("u"), P2("v"))] * 3)
    res = macaulay_resultant(triple)
    assert res.is_zero()
    assert res.diagnostic and "zero" in res.diagnostic


def test_strand_degree_independence():
    a = macaulay_resultant(EX1, nu=3)
    b = macaulay_resultant(EX1, nu=4)
    assert equal_up_to_unit(a.poly, b.poly)


# -- sylvester oracle -----------------------------------------------------------


def test_sylvester_oracle_uses_independent_matrix():
    spec = random_p1_map(random.Random(0), 2, 2)
    forms = linear_forms(spec).forms
    oracle = sylvester_resultant(forms[0], forms[1], R1)
    assert not oracle.is_zero()
    d = multidegree(oracle)
    assert d.pair_degs == (2, 2)


def test_strand_matches_sylvester_all_degrees():
    rng = random.Random(314)
    for d0 in (1, 2, 3):
        for d1 in (1, 2, 3):
            for _ in range(5):  # acceptance suite runs the full 50
                spec = random_p1_map(rng, d0, d1)
                forms = linear_forms(spec).forms
                oracle = sylvester_resultant(forms[0], forms[1], R1)
                res = macaulay_resultant(spec)
                assert equal_up_to_unit(res.poly, oracle)


# -- invariants ------------------------------------------------------------------


def test_vanishing_on_image():
    rng = seeded_rng(99)
    res = macaulay_resultant(EX1)
    count = 0
    while count < 20:
        t = {name: Fraction(rng.randint(-20, 20)) for name in R2.t_vars}
        values = EX1.evaluate_pairs([t[n] for n in R2.t_vars])
        if any(f == 0 and g == 0 for f, g in values):
            continue
        assign = {}
        for i, (fv, gv) in enumerate(values):
            xi, yi = R2.pairs[i]
            assign[xi] = fv
            assign[yi] = gv
        assert res.poly.evaluate_all(assign) == 0
        count += 1


def test_multihomogeneity_of_results():
    for spec, expected in ((EX1, (4, 2, 2)), (EX2, (4, 4, 4))):
        res = macaulay_resultant(spec)
        d = multidegree(res.poly)
        assert d.t_deg == 0
        assert d.pair_degs == expected
