"""Bilinear forms and Koszul strand assembly."""

import math
import itertools
import random
from fractions import Fraction

import pytest

from kresolve.polyring import MPoly, PolyError, default_ring, parse_poly
from kresolve.koszul import (
    MapSpec,
    MapSpecError,
    eta,
    koszul_strand,
    linear_forms,
    monomials_of_degree,
    strand_sanity,
)

R2 = default_ring(2)


def P(text):
    return parse_poly(text, R2)


def mkspec(pair_texts, mode="strict"):
    return MapSpec.of(R2, [(P(f), P(g)) for f, g in pair_texts], mode=mode)


EX1 = [("u", "v"), ("u^2", "v^2"), ("v^2", "w^2")]


def expected_rank(degrees, nu, k):
    """Independent count: sum over k-subsets of C(nu - sum d + n, n)."""
    n = len(degrees) - 1
    total = 0
    for S in itertools.combinations(range(len(degrees)), k):
        d = nu - sum(degrees[i] for i in S)
        if d >= 0:
            total += math.comb(d + n, n)
    return total


# -- MapSpec -----------------------------------------------------------------


def test_mapspec_degrees():
    spec = mkspec(EX1)
    assert spec.degrees == (1, 2, 2)
    assert spec.eta() == 2
    assert spec.resultant_multidegree() == (4, 2, 2)


def test_mapspec_rejects_degree_mismatch():
    with pytest.raises(MapSpecError):
        mkspec([("u", "v^2"), ("u", "v"), ("u", "v")])


def test_mapspec_rejects_zero_pair():
    with pytest.raises(MapSpecError):
        mkspec([("0", "0"), ("u", "v"), ("u", "v")])


def test_mapspec_common_factor_strict_vs_permissive():
    pairs = [("u*v", "u*w"), ("u^2+v^2", "v^2"), ("v^2", "w^2")]
    with pytest.raises(MapSpecError):
        mkspec(pairs, mode="strict")
    spec = mkspec(pairs, mode="permissive")
    assert len(spec.warnings) == 1
    assert "pair 0" in spec.warnings[0]


# -- linear forms -------------------------------------------------------------


def test_linear_forms_of_example_map():
    forms = linear_forms(mkspec(EX1)).forms
    assert forms[0] == P("x0*v - y0*u")
    assert forms[1] == P("x1*v^2 - y1*u^2")
    assert forms[2] == P("x2*w^2 - y2*v^2")


def test_linear_forms_vanish_on_graph():
    spec = mkspec(EX1)
    forms = linear_forms(spec).forms
    for i, L in enumerate(forms):
        f, g = spec.pairs[i]
        xi, yi = spec.ring.pairs[i]
        assert L.substitute({xi: f, yi: g}).is_zero()


# -- strand assembly -----------------------------------------------------------


def test_monomial_enumeration_order():
    monos = monomials_of_degree(R2, 2)
    assert len(monos) == 6
    # graded-lex descending within fixed degree: u^2 first, w^2 last
    assert monos[0][:3] == (2, 0, 0)
    assert monos[-1][:3] == (0, 0, 2)


def test_strand_ranks_example_map():
    strand = koszul_strand(linear_forms(mkspec(EX1)), 3)
    assert strand.ranks == [10, 12, 2, 0]
    assert strand.euler_sum() == 0


def test_strand_ranks_all_quadrics():
    spec = mkspec([("u^2", "v^2"), ("u*v", "w^2"), ("v^2", "u*w")])
    strand = koszul_strand(linear_forms(spec), 4)
    assert strand.ranks == [15, 18, 3, 0]


def test_strand_ranks_all_linear():
    spec = mkspec([("u", "v"), ("v", "w"), ("u", "w")])
    strand = koszul_strand(linear_forms(spec), 1)
    assert strand.ranks == [3, 3, 0, 0]


def test_strand_rank_bookkeeping_random():
    rng = random.Random(17)
    for _ in range(10):
        degs = tuple(rng.randint(1, 3) for _ in range(3))
        pairs = []
        for d in degs:
            mono = [0] * R2.num_vars
            mono[0] = d
            f = MPoly(R2, {tuple(mono): Fraction(1)})
            mono2 = [0] * R2.num_vars
            mono2[1] = d
            g = MPoly(R2, {tuple(mono2): Fraction(1)})
            pairs.append((f, g))
        spec = MapSpec.of(R2, pairs)
        nu = eta(degs) + rng.randint(1, 2)
        strand = koszul_strand(linear_forms(spec), nu)
        for k, r in enumerate(strand.ranks):
            assert r == expected_rank(degs, nu, k)


def test_strand_rejects_low_degree():
    forms = linear_forms(mkspec(EX1))
    with pytest.raises(PolyError):
        koszul_strand(forms, 2)
    strand = koszul_strand(forms, 2, override=True)
    assert strand.nu == 2


def test_entries_live_in_single_pair():
    strand = koszul_strand(linear_forms(mkspec(EX1)), 3)
    for k in (1, 2):
        for col, (S, _) in enumerate(strand.bases[k]):
            for row, (T, _) in enumerate(strand.bases[k - 1]):
                entry = strand.mats[k][row][col]
                if entry.is_zero():
                    continue
                (removed,) = set(S) - set(T)
                from kresolve.polyring import pair_degree

                for i in range(3):
                    assert pair_degree(entry, i) == (1 if i == removed else 0)


# -- sanity checks ----------------------------------------------------------------


def test_strand_is_a_complex():
    report = strand_sanity(koszul_strand(linear_forms(mkspec(EX1)), 3))
    assert report.ok and report.dd_zero_ok and report.euler_ok


def test_strand_quadrics_is_a_complex():
    spec = mkspec([("u^2", "v^2"), ("u*v", "w^2"), ("v^2", "u*w")])
    report = strand_sanity(koszul_strand(linear_forms(spec), 4))
    assert report.ok and report.euler_ok


def test_sign_flip_detected():
    strand = koszul_strand(linear_forms(mkspec(EX1)), 3)
    # corrupt one nonzero entry of the second differential
    for r in range(len(strand.bases[1])):
        for c in range(len(strand.bases[2])):
            if not strand.mats[2][r][c].is_zero():
                strand.mats[2][r][c] = -strand.mats[2][r][c]
                report = strand_sanity(strand)
                assert not report.ok and report.first_offending is not None
                return
    raise AssertionError("no nonzero entry found")


def test_columns_specialize_to_syzygies():
    spec = mkspec(EX1)
    strand = koszul_strand(linear_forms(spec), 3)
    rng = random.Random(23)
    graph = {}
    for i, (f, g) in enumerate(spec.pairs):
        xi, yi = spec.ring.pairs[i]
        graph[xi] = f
        graph[yi] = g
    for col, (S, mono) in enumerate(strand.bases[1]):
        # reconstruct the column as a polynomial and specialize x=f, y=g
        total = R2.zero()
        for row, (_, m) in enumerate(strand.bases[0]):
            entry = strand.mats[1][row][col]
            if entry.is_zero():
                continue
            total = total + entry * MPoly(R2, {m: Fraction(1)})
        specialized = total.substitute(graph)
        assert specialized.is_zero()
        pt = {name: Fraction(rng.randint(-9, 9)) for name in R2.t_vars}
        assert specialized.substitute(pt).is_zero()
