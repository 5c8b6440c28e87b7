"""Groebner engine: bases, normal forms, codimension, zero loci."""

import itertools
import random
from fractions import Fraction

import pytest

from kresolve.polyring import MPoly, PolyError, default_ring, parse_poly
from kresolve.groebner import (
    ProjPoint,
    TermOrder,
    buchberger,
    ideal_power,
    normal_form,
    projective_codimension,
    rational_zero_locus,
    _leading,
    _s_poly,
)

R2 = default_ring(2)


def P(text):
    return parse_poly(text, R2)


def gens(*texts):
    return [P(t) for t in texts]


# -- buchberger --------------------------------------------------------------


def test_monomial_ideal_is_its_own_basis():
    gb = buchberger(gens("u", "v"))
    assert {str(g) for g in gb.generators} == {"u", "v"}


def test_monomial_ideal_three_gens():
    gb = buchberger(gens("u*w", "v^2", "w^2"))
    assert {str(g) for g in gb.generators} == {"u*w", "v^2", "w^2"}


def test_redundant_generators_reduced():
    gb = buchberger(gens("u", "v", "u^2", "v^2", "w^2"))
    assert {str(g) for g in gb.generators} == {"u", "v", "w^2"}


def test_buchberger_deterministic():
    gs = gens("u^2 - v*w", "u*v - w^2", "v^2 - u*w")
    a = buchberger(gs)
    b = buchberger(gs)
    assert a.generators == b.generators


def test_all_s_polynomials_reduce_to_zero():
    gs = gens("u^2 - v*w", "u*v - w^2", "3*v^3 - u^2*w + w^3")
    gb = buchberger(gs)
    for f, g in itertools.combinations(gb.generators, 2):
        assert normal_form(_s_poly(f, g, gb.order), gb).is_zero()


# -- normal form --------------------------------------------------------------


def test_normal_form_membership():
    gb = buchberger(gens("u", "v"))
    assert normal_form(P("u^2"), gb).is_zero()
    assert normal_form(P("w"), gb) == P("w")


def test_normal_form_partial_reduction():
    gb = buchberger(gens("u"))
    assert normal_form(P("u*v + w^2"), gb) == P("w^2")


def test_normal_form_cofactors_certify_membership():
    rng = random.Random(3)
    for _ in range(15):
        gs = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = [0] * R2.num_vars
                for _ in range(rng.randint(0, 4)):
                    e[rng.randrange(3)] += 1
                terms[tuple(e)] = Fraction(rng.randint(-4, 4))
            p = MPoly(R2, {e: c for e, c in terms.items() if c})
            if not p.is_zero():
                gs.append(p)
        if not gs:
            continue
        gb = buchberger(gs)
        f = gs[0] * gs[-1] + (gs[1] if len(gs) > 1 else R2.zero())
        r, cof = normal_form(f, gb, with_cofactors=True)
        recombined = r
        for q, g in zip(cof, gb.generators):
            recombined = recombined + q * g
        assert recombined == f
        if r.is_zero():
            assert normal_form(f, gb).is_zero()


# -- codimension --------------------------------------------------------------


def brute_force_monomial_codim(lead_exponents, nt):
    """Independent oracle: scan all variable subsets directly."""
    supports = [{i for i in range(nt) if e[i]} for e in lead_exponents]
    best = 0
    for size in range(nt + 1):
        for subset in itertools.combinations(range(nt), size):
            if all(not s <= set(subset) for s in supports):
                best = max(best, size)
    return nt - best


def test_codim_two_linear_forms():
    assert projective_codimension(gens("u", "v")) == 2


def test_codim_irrelevant_power_ideal():
    # initial ideal (u, v, w^2): empty projective locus
    assert projective_codimension(gens("u", "v", "u^2", "v^2", "w^2")) == 3


def test_codim_matches_brute_force_on_monomial_ideals():
    rng = random.Random(9)
    R3 = default_ring(3)
    nt = 4
    for _ in range(40):
        ms = []
        for _ in range(rng.randint(1, 4)):
            e = [0] * R3.num_vars
            for _ in range(rng.randint(1, 3)):
                e[rng.randrange(nt)] += 1
            ms.append(MPoly(R3, {tuple(e): Fraction(1)}))
        got = projective_codimension(ms)
        exps = [next(iter(m.terms)) for m in ms]
        assert got == brute_force_monomial_codim(exps, nt)


def test_codim_rejects_inhomogeneous():
    with pytest.raises(PolyError):
        projective_codimension(gens("u + v^2"))


def test_codim_rejects_pair_variables():
    with pytest.raises(PolyError):
        projective_codimension(gens("x0*u"))


# -- ideal powers --------------------------------------------------------------


def test_ideal_square():
    sq = ideal_power(gens("u", "v"), 2)
    assert {str(p) for p in sq} == {"u^2", "u*v", "v^2"}


def test_ideal_first_power_identity():
    gs = gens("u", "v^2 - u*w")
    assert ideal_power(gs, 1) == gs


def test_ideal_power_zero_errors():
    with pytest.raises(PolyError):
        ideal_power(gens("u"), 0)


def test_membership_in_ideal_square():
    # L1 = x1*v^2 - y1*u^2 lies in (u, v, L2)^2 with L2 = x2*w^2 - y2*v^2
    G = gens("u", "v", "x2*w^2 - y2*v^2")
    L1 = P("x1*v^2 - y1*u^2")
    gb2 = buchberger(ideal_power(G, 2))
    assert normal_form(L1, gb2).is_zero()
    gb3 = buchberger(ideal_power(G, 3))
    assert not normal_form(L1, gb3).is_zero()


# -- rational zero locus ----------------------------------------------------------


def test_zero_locus_single_point():
    locus = rational_zero_locus(gens("u", "v"))
    assert [str(p) for p in locus.points] == ["(0:0:1)"]
    assert locus.unresolved == 0


def test_zero_locus_monomial_system():
    locus = rational_zero_locus(gens("u*w", "v^2", "w^2"))
    assert [str(p) for p in locus.points] == ["(1:0:0)"]


def test_zero_locus_shifted_point():
    # forms vanishing exactly at (1:2:3)
    locus = rational_zero_locus(gens("2*u - v", "3*v - 2*w"))
    assert [str(p) for p in locus.points] == ["(1:2:3)"]


def test_zero_locus_counts_irrational_points():
    # u^2 = 2 w^2 has no rational solutions; v = 0 keeps it 0-dimensional
    locus = rational_zero_locus(gens("u^2 - 2*w^2", "v"))
    assert locus.points == ()
    assert locus.unresolved == 2


def test_zero_locus_requires_dimension_zero():
    with pytest.raises(PolyError):
        rational_zero_locus(gens("u"))


def test_points_satisfy_generators():
    gs = gens("u*w", "v^2", "w^2")
    locus = rational_zero_locus(gs)
    for pt in locus.points:
        assign = dict(zip(R2.t_vars, pt.coords))
        for g in gs:
            assert g.evaluate_all(assign) == 0


# -- projective points ------------------------------------------------------------


def test_projpoint_normalization():
    p = ProjPoint.of((2, 4, 6))
    assert p.coords == (Fraction(1, 3), Fraction(2, 3), Fraction(1))
    assert str(p) == "(1:2:3)"


def test_projpoint_negative_display():
    assert str(ProjPoint.of((1, 1, -1))) == "(1:1:-1)"


def test_projpoint_zero_rejected():
    with pytest.raises(PolyError):
        ProjPoint.of((0, 0, 0))
