"""Buchberger Groebner engine over Q.

Supplies reduced Groebner bases, normal forms, ideal codimension in the
t-variable subring, ideal powers and the rational points of projective
zero-dimensional loci.  Everything is deterministic: the pair selection
is the normal strategy (lowest lcm degree, ties by input index) and
bases are auto-reduced and sorted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import (
    Exponent,
    MPoly,
    PolyError,
    RingSpec,
    multidegree,
    unit_normalize,
)


@dataclass(frozen=True)
class TermOrder:
    """Total monomial order: degrevlex or lex over a variable permutation."""

    kind: str = "degrevlex"  # or "lex"
    var_order: tuple[int, ...] | None = None  # permutation of variable indices

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise PolyError(f"unknown term order {self.kind!r}")

    def key(self, e: Exponent):
        perm = self.var_order if self.var_order is not None else range(len(e))
        if self.kind == "lex":
            return tuple(e[i] for i in perm)
        perm = list(perm)
        return (sum(e), tuple(-e[i] for i in reversed(perm)))


def _leading(p: MPoly, order: TermOrder) -> tuple[Exponent, Fraction]:
    e = max(p.terms, key=order.key)
    return e, p.terms[e]


def _mono_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _primitive(p: MPoly) -> MPoly:
    """Integer-primitive rescale; keeps reduction coefficients small."""
    if p.is_zero():
        return p
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    num = 0
    for c in p.terms.values():
        num = math.gcd(num, abs(c.numerator * (denom // c.denominator)))
    return p.scale(Fraction(denom, num))


def normal_form(
    f: MPoly,
    basis: "GroebnerBasis | list[MPoly]",
    order: TermOrder | None = None,
    with_cofactors: bool = False,
):
    """Remainder of full multivariate division of f by the basis.

    Zero remainder certifies ideal membership; with_cofactors=True also
    returns the quotients q_i with f = sum(q_i * g_i) + remainder.
    """
    if isinstance(basis, GroebnerBasis):
        gens = list(basis.generators)
        order = basis.order
    else:
        gens = list(basis)
        if order is None:
            order = TermOrder()
    ring = f.ring
    leads = [_leading(g, order) for g in gens]
    cofactors = [ring.zero() for _ in gens]
    remainder = ring.zero()
    work = f
    while not work.is_zero():
        e, c = _leading(work, order)
        for i, (le, lc) in enumerate(leads):
            if _mono_divides(le, e):
                q = MPoly(ring, {_mono_div(e, le): c / lc})
                work = work - q * gens[i]
                if with_cofactors:
                    cofactors[i] = cofactors[i] + q
                break
        else:
            t = MPoly(ring, {e: c})
            remainder = remainder + t
            work = work - t
    if with_cofactors:
        return remainder, cofactors
    return remainder


def _s_poly(f: MPoly, g: MPoly, order: TermOrder) -> MPoly:
    ring = f.ring
    (ef, cf), (eg, cg) = _leading(f, order), _leading(g, order)
    lcm = _mono_lcm(ef, eg)
    mf = MPoly(ring, {_mono_div(lcm, ef): Fraction(1, 1) / cf})
    mg = MPoly(ring, {_mono_div(lcm, eg): Fraction(1, 1) / cg})
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced (auto-reduced, monic) Groebner basis with its order."""

    order: TermOrder
    generators: tuple[MPoly, ...]
    source: tuple[MPoly, ...] = field(default=(), compare=False)

    @property
    def ring(self) -> RingSpec:
        return self.generators[0].ring

    def leading_exponents(self) -> list[Exponent]:
        return [_leading(g, self.order)[0] for g in self.generators]

    def contains_one(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)


def buchberger(gens: list[MPoly], order: TermOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger with the normal strategy.

    Pairs are selected by lowest lcm total degree, ties broken by input
    index; the coprime leading-term and chain criteria prune pairs.
    """
    if not gens:
        raise PolyError("empty generator list")
    order = order or TermOrder()
    ring = gens[0].ring
    basis = [
        _primitive(g) for g in gens if not g.is_zero()
    ]
    if not basis:
        raise PolyError("all generators are zero")
    leads = [_leading(g, order)[0] for g in basis]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done: set[tuple[int, int]] = set()

    def pair_key(p):
        i, j = p
        return (sum(_mono_lcm(leads[i], leads[j])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.remove((i, j))
        done.add((i, j))
        li, lj = leads[i], leads[j]
        lcm = _mono_lcm(li, lj)
        # coprime criterion
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _mono_divides(leads[k], lcm):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        r = normal_form(_s_poly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            r = _primitive(r)
            basis.append(r)
            leads.append(_leading(r, order)[0])
            new = len(basis) - 1
            pairs |= {(k, new) for k in range(new)}

    # minimalize: drop generators whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(basis):
        li = leads[i]
        if any(
            j != i and _mono_divides(leads[j], li) and (leads[j] != li or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # interreduce and make monic
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            _, lc = _leading(r, order)
            reduced.append(r.scale(Fraction(1, 1) / lc))
    reduced.sort(key=lambda g: order.key(_leading(g, order)[0]), reverse=True)
    return GroebnerBasis(order, tuple(reduced), tuple(gens))


def ideal_power(gens: list[MPoly], e: int) -> list[MPoly]:
    """All e-fold products of the generators (generates the e-th power)."""
    if e <= 0:
        raise PolyError("power must be positive")
    if not gens:
        raise PolyError("empty generator list")
    out = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), e):
        p = gens[combo[0]]
        for k in combo[1:]:
            p = p * gens[k]
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# dimension


def _check_t_homogeneous(gens: list[MPoly]) -> RingSpec:
    ring = gens[0].ring
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_t_polynomial():
            raise PolyError("generator involves pair variables")
        if multidegree(g).t_deg is None:
            raise PolyError("generator is not homogeneous in t")
    return ring


def projective_codimension(gens: list[MPoly]) -> int:
    """Codimension in k[t_0..t_n] of a homogeneous t-ideal.

    Computed as (n+1) minus the maximal size of a variable subset
    independent modulo the initial ideal.  The irrelevant ideal yields
    n+1 (empty projective locus); the zero ideal yields 0.
    """
    ring = _check_t_homogeneous(gens)
    nt = len(ring.t_vars)
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return 0
    gb = buchberger(nonzero, TermOrder("degrevlex"))
    if gb.contains_one():
        # V = empty even as a cone: cannot happen for proper homogeneous ideals
        return nt
    lead_supports = [
        {i for i in range(nt) if e[i]} for e in gb.leading_exponents()
    ]
    best = 0
    for size in range(nt, 0, -1):
        for subset in itertools.combinations(range(nt), size):
            s = set(subset)
            if all(not supp <= s for supp in lead_supports):
                best = size
                break
        if best:
            break
    return nt - best


# ---------------------------------------------------------------------------
# projective points


@dataclass(frozen=True)
class ProjPoint:
    """Projective point, normalized so the last nonzero coordinate is 1."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def of(values) -> "ProjPoint":
        coords = tuple(Fraction(v) for v in values)
        last = None
        for i in range(len(coords) - 1, -1, -1):
            if coords[i] != 0:
                last = i
                break
        if last is None:
            raise PolyError("projective point needs a nonzero coordinate")
        scale = coords[last]
        return ProjPoint(tuple(c / scale for c in coords))

    def integer_rep(self) -> tuple[int, ...]:
        """Primitive integer coordinates with the first nonzero one positive."""
        denom = 1
        for c in self.coords:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        ints = [int(c * denom) for c in self.coords]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        ints = [v // g for v in ints]
        first = next(v for v in ints if v)
        if first < 0:
            ints = [-v for v in ints]
        return tuple(ints)

    def __str__(self) -> str:
        return "(" + ":".join(str(v) for v in self.integer_rep()) + ")"


@dataclass(frozen=True)
class ZeroLocus:
    """Rational points found, plus a count of irrational ones not listed."""

    points: tuple[ProjPoint, ...]
    unresolved: int


def _rational_roots(coeffs: dict[int, Fraction]) -> tuple[list[Fraction], int]:
    """Rational roots of a univariate polynomial and the leftover degree.

    coeffs maps degree -> coefficient.  Roots are returned without
    multiplicity; the leftover degree counts non-rational roots (with
    multiplicity) for the unresolved flag.
    """
    degs = sorted(d for d, c in coeffs.items() if c != 0)
    if not degs:
        raise PolyError("zero polynomial has every root")
    roots: list[Fraction] = []
    low = degs[0]
    if low > 0:
        roots.append(Fraction(0))
    dense = [Fraction(0)] * (degs[-1] - low + 1)
    for d, c in coeffs.items():
        if c:
            dense[d - low] = c
    # clear to primitive integer coefficients
    denom = 1
    for c in dense:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in dense]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]

    def divisors(m: int) -> list[int]:
        m = abs(m)
        out = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                out.append(d)
                out.append(m // d)
            d += 1
        return sorted(set(out))

    def eval_at(r: Fraction) -> Fraction:
        total = Fraction(0)
        for i in range(len(ints) - 1, -1, -1):
            total = total * r + ints[i]
        return total

    if len(ints) > 1:
        for p in divisors(ints[0]):
            for q in divisors(ints[-1]):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if r not in roots and eval_at(r) == 0:
                        roots.append(r)
    # deflate by each rational root to count what is left
    work = list(ints)
    for r in roots:
        if r == 0:
            continue
        while True:
            # synthetic division by (x - r)
            quo = [Fraction(0)] * (len(work) - 1)
            carry = Fraction(0)
            for i in range(len(work) - 1, 0, -1):
                carry = Fraction(work[i]) + carry * r
                quo[i - 1] = carry
            rem = Fraction(work[0]) + carry * r
            if rem != 0 or len(work) == 1:
                break
            work = quo
            if len(work) == 1:
                break
    leftover = len(work) - 1
    return roots, leftover


def _affine_solutions(
    gens: list[MPoly], var_indices: list[int]
) -> tuple[list[tuple[Fraction, ...]], int]:
    """All rational solutions of a finite affine system, by lex triangulation."""
    live = [g for g in gens if not g.is_zero()]
    for g in live:
        if g.is_constant():
            return [], 0
    if not var_indices:
        return [()], 0
    order = TermOrder("lex", tuple(var_indices) + tuple(
        i for i in range(gens[0].ring.num_vars) if i not in var_indices
    ))
    if not live:
        # the zero ideal is not finite over any variable: treat as unsolvable here
        raise PolyError("system is not zero-dimensional")
    gb = buchberger(live, order)
    if gb.contains_one():
        return [], 0
    last = var_indices[-1]
    univ = None
    for g in gb.generators:
        if g.used_vars() <= {last}:
            univ = g
            break
    if univ is None:
        raise PolyError("system is not zero-dimensional in this chart")
    coeffs = {d: p.constant_value() for d, p in univ.as_univariate(last).items()}
    roots, leftover = _rational_roots(coeffs)
    solutions = []
    unresolved = leftover
    name = gens[0].ring.variables[last]
    for r in roots:
        sub = [g.substitute({name: r}) for g in live]
        subs, sub_unresolved = _affine_solutions(sub, var_indices[:-1])
        unresolved += sub_unresolved
        solutions.extend(s + (r,) for s in subs)
    return solutions, unresolved


def rational_zero_locus(gens: list[MPoly]) -> ZeroLocus:
    """Rational points of a projectively zero-dimensional t-ideal.

    Works chart by chart (t_j = 1, later variables 0) and triangulates
    with lex Groebner bases; irrational solutions are only counted.
    """
    ring = _check_t_homogeneous(gens)
    nt = len(ring.t_vars)
    codim = projective_codimension(gens)
    if codim != nt - 1:
        raise PolyError(f"ideal is not projectively zero-dimensional (codim {codim})")
    points: list[ProjPoint] = []
    seen: set[tuple[Fraction, ...]] = set()
    unresolved = 0
    for j in range(nt - 1, -1, -1):
        fixed = {ring.t_vars[j]: Fraction(1)}
        for k in range(j + 1, nt):
            fixed[ring.t_vars[k]] = Fraction(0)
        chart = [g.substitute(fixed) for g in gens]
        solutions, chart_unresolved = _affine_solutions(chart, list(range(j)))
        unresolved += chart_unresolved
        for sol in solutions:
            coords = sol + (Fraction(1),) + (Fraction(0),) * (nt - 1 - j)
            pt = ProjPoint.of(coords)
            if pt.coords not in seen:
                seen.add(pt.coords)
                points.append(pt)
    return ZeroLocus(tuple(points), unresolved)
