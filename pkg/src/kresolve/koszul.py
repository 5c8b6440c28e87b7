"""Bilinear forms of a rational map and graded strands of their Koszul complex.

A map P^n --> (P^1)^(n+1) is n+1 pairs (f_i, g_i) of t-homogeneous
polynomials of equal degrees d_i.  Each pair yields the bilinear form
L_i = g_i*x_i - f_i*y_i.  The degree-nu strand of the Koszul complex of
L_0..L_n over k[X] is assembled as explicit matrices between indexed
monomial bases: the index-k module has basis elements (S, m) with S a
k-subset of {0..n} and m a t-monomial of degree nu - sum(d_i, i in S).

Strands are only guaranteed exact above eta = sum(d_i - 1); the builder
enforces nu > eta unless overridden.  The same machinery accepts any
t-homogeneous polynomials with k[X] coefficients, not only the bilinear
forms (needed for resultant certificates of restricted maps).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .polyring import (
    Exponent,
    MPoly,
    PolyError,
    RingSpec,
    grlex_key,
    multidegree,
    multivariate_gcd,
    unit_normalize,
)


class MapSpecError(PolyError):
    """Invalid map data (degree mismatch, zero pair, common factor)."""


@dataclass(frozen=True)
class MapSpec:
    """The map as n+1 pairs (f_i, g_i) of equal t-degree d_i."""

    ring: RingSpec
    pairs: tuple[tuple[MPoly, MPoly], ...]
    degrees: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @staticmethod
    def of(ring: RingSpec, pairs, mode: str = "strict") -> "MapSpec":
        """Validate and build; mode 'permissive' downgrades common factors
        between f_i and g_i to warnings."""
        if mode not in ("strict", "permissive"):
            raise MapSpecError(f"unknown mode {mode!r}")
        if len(pairs) != len(ring.t_vars):
            raise MapSpecError(
                f"need {len(ring.t_vars)} pairs for P^{ring.n}, got {len(pairs)}"
            )
        degrees = []
        warnings = []
        normd = []
        for i, (f, g) in enumerate(pairs):
            if f.is_zero() and g.is_zero():
                raise MapSpecError(f"pair {i} is (0, 0)")
            for name, p in (("f", f), ("g", g)):
                if not p.is_t_polynomial():
                    raise MapSpecError(f"{name}{i} involves pair variables")
                if not p.is_zero() and multidegree(p).t_deg is None:
                    raise MapSpecError(f"{name}{i} is not homogeneous")
            df = multidegree(f).t_deg if not f.is_zero() else None
            dg = multidegree(g).t_deg if not g.is_zero() else None
            if df is not None and dg is not None and df != dg:
                raise MapSpecError(f"pair {i}: deg f = {df} != deg g = {dg}")
            degrees.append(df if df is not None else dg)
            if not f.is_zero() and not g.is_zero():
                common = multivariate_gcd(f, g)
                if not common.is_constant():
                    msg = f"pair {i} has common factor {common}"
                    if mode == "strict":
                        raise MapSpecError(msg)
                    warnings.append(msg)
            normd.append((f, g))
        return MapSpec(ring, tuple(normd), tuple(degrees), tuple(warnings))

    @property
    def n(self) -> int:
        return self.ring.n

    def eta(self) -> int:
        return eta(self.degrees)

    def resultant_multidegree(self) -> tuple[int, ...]:
        """Expected pair degrees of the resultant: e_i = prod of the other d_j."""
        out = []
        for i in range(len(self.degrees)):
            e = 1
            for j, d in enumerate(self.degrees):
                if j != i:
                    e *= d
            out.append(e)
        return tuple(out)

    def evaluate_pairs(self, point) -> list[tuple]:
        """Values (f_i(p), g_i(p)) at a point given as t-coordinates."""
        assign = dict(zip(self.ring.t_vars, point))
        return [
            (f.evaluate_all(assign), g.evaluate_all(assign)) for f, g in self.pairs
        ]


def eta(degrees) -> int:
    """Threshold sum(d_i - 1); strands are taken strictly above it."""
    return sum(d - 1 for d in degrees)


@dataclass(frozen=True)
class LinFormSet:
    """The bilinear forms L_i = g_i*x_i - f_i*y_i of a map."""

    spec: MapSpec
    forms: tuple[MPoly, ...]


def linear_forms(spec: MapSpec) -> LinFormSet:
    """Build the L_i; each is t-homogeneous of degree d_i, linear in pair i."""
    out = []
    for i, (f, g) in enumerate(spec.pairs):
        xi, yi = spec.ring.pairs[i]
        L = g * spec.ring.var(xi) - f * spec.ring.var(yi)
        out.append(L)
    return LinFormSet(spec, tuple(out))


def monomials_of_degree(ring: RingSpec, degree: int) -> list[Exponent]:
    """t-monomial exponent tuples of a given degree, graded-lex descending."""
    if degree < 0:
        return []
    nt = len(ring.t_vars)
    pad = (0,) * (ring.num_vars - nt)
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix) + (remaining,) + pad)
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], degree, nt)
    return out


BasisElement = tuple[tuple[int, ...], Exponent]  # (subset S, t-monomial)


@dataclass
class Strand:
    """Degree-nu piece of the Koszul complex as matrices over k[X].

    bases[k] lists the index-k basis elements; mats[k] (k >= 1) is the
    differential from index k to index k-1, stored row-major with rows
    over bases[k-1] and entries that are polynomials in the pair
    variables only.
    """

    ring: RingSpec
    nu: int
    degrees: tuple[int, ...]
    bases: list[list[BasisElement]]
    mats: list[list[list[MPoly]] | None]  # mats[0] unused
    spec: MapSpec | None = None

    @property
    def ranks(self) -> list[int]:
        return [len(b) for b in self.bases]

    def euler_sum(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


def koszul_strand(
    forms: "LinFormSet | list[MPoly]",
    nu: int | None = None,
    override: bool = False,
) -> Strand:
    """Assemble the degree-nu strand of the Koszul complex of the forms.

    Accepts a LinFormSet or any list of t-homogeneous polynomials with
    coefficients in the pair variables.  Defaults to nu = eta + 1, the
    minimal legal strand; nu <= eta is rejected unless override is set.
    """
    if isinstance(forms, LinFormSet):
        spec = forms.spec
        polys = list(forms.forms)
        ring = spec.ring
        degrees = spec.degrees
    else:
        spec = None
        polys = list(forms)
        if not polys:
            raise PolyError("no forms given")
        ring = polys[0].ring
        degrees = []
        for p in polys:
            d = multidegree(p).t_deg
            if d is None:
                raise PolyError("form is not t-homogeneous")
            degrees.append(d)
        degrees = tuple(degrees)
    bound = eta(degrees)
    if nu is None:
        nu = bound + 1
    if nu <= bound and not override:
        raise PolyError(f"nu = {nu} must exceed eta = {bound}")

    m = len(polys)
    nt = len(ring.t_vars)
    # split each form into t-monomial -> pair-coefficient
    split: list[dict[Exponent, MPoly]] = []
    for p in polys:
        parts: dict[Exponent, dict] = {}
        for e, c in p.terms.items():
            tm = e[:nt] + (0,) * (ring.num_vars - nt)
            xm = (0,) * nt + e[nt:]
            parts.setdefault(tm, {})[xm] = c
        split.append({tm: MPoly(ring, d) for tm, d in parts.items()})

    bases: list[list[BasisElement]] = []
    index: list[dict[BasisElement, int]] = []
    for k in range(m + 1):
        basis_k: list[BasisElement] = []
        for S in itertools.combinations(range(m), k):
            deg = nu - sum(degrees[i] for i in S)
            for mono in monomials_of_degree(ring, deg):
                basis_k.append((S, mono))
        bases.append(basis_k)
        index.append({be: i for i, be in enumerate(basis_k)})

    mats: list[list[list[MPoly]] | None] = [None]
    zero = ring.zero()
    for k in range(1, m + 1):
        rows, cols = len(bases[k - 1]), len(bases[k])
        mat = [[zero] * cols for _ in range(rows)]
        for col, (S, mono) in enumerate(bases[k]):
            for pos, i in enumerate(S):
                sign = -1 if pos % 2 else 1
                target_subset = S[:pos] + S[pos + 1:]
                for tm, coeff in split[i].items():
                    prod = tuple(a + b for a, b in zip(tm, mono))
                    row = index[k - 1].get((target_subset, prod))
                    if row is None:
                        raise PolyError("strand bookkeeping error: missing target")
                    entry = coeff if sign > 0 else -coeff
                    mat[row][col] = mat[row][col] + entry
        mats.append(mat)
    return Strand(ring, nu, degrees, bases, mats, spec)


@dataclass(frozen=True)
class SanityReport:
    """Outcome of the d∘d = 0 and Euler-characteristic checks."""

    ok: bool
    euler_ok: bool
    dd_zero_ok: bool
    first_offending: tuple[int, int, int] | None = None  # (k, row, col)


def strand_sanity(strand: Strand) -> SanityReport:
    """Verify the strand is a complex with alternating rank sum zero."""
    euler_ok = strand.euler_sum() == 0
    ranks = strand.ranks
    for k in range(1, len(strand.mats) - 1):
        a, b = strand.mats[k], strand.mats[k + 1]
        if not a or not b or not ranks[k + 1] or not ranks[k - 1]:
            continue
        for r in range(ranks[k - 1]):
            for c in range(ranks[k + 1]):
                total = strand.ring.zero()
                for j in range(ranks[k]):
                    if a[r][j].is_zero() or b[j][c].is_zero():
                        continue
                    total = total + a[r][j] * b[j][c]
                if not total.is_zero():
                    return SanityReport(False, euler_ok, False, (k, r, c))
    return SanityReport(euler_ok, euler_ok, True, None)
