"""Acyclicity hypotheses, base locus analysis and factor extraction.

The resultant of the bilinear forms equals the implicit equation of the
image to the power deg(phi), times one extra factor per base component
whose dimension plus fibre dimension reaches n.  This module decides the
two equivalent acyclicity views (codimensions of the minor ideals I_r of
the presentation matrix vs. dimensions of intersections of base loci),
the strict codimension hypothesis that rules extra factors out, locates
the factor-producing components, and splits the resultant accordingly.

Codimension only depends on zero sets, so every Groebner call here runs
on generators replaced by their squarefree parts; the minor ideals are
generated through the product identity (each nonzero r x r minor of the
presentation matrix is, by its block sparsity, exactly a signed product
of one member of each of r distinct pairs).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .config import seeded_rng
from .detcx import NotGenericallyExact, ResultantPoly, det_cayley, macaulay_resultant
from .groebner import (
    ProjPoint,
    buchberger,
    ideal_power,
    normal_form,
    projective_codimension,
    rational_zero_locus,
)
from .koszul import MapSpec, LinFormSet, koszul_strand, linear_forms
from .polyring import (
    MPoly,
    PolyError,
    RingSpec,
    SquarefreeDecomp,
    equal_up_to_unit,
    multidegree,
    pair_degree,
    squarefree_decompose,
    try_exact_div,
    unit_normalize,
)

Subset = tuple[int, ...]


# ---------------------------------------------------------------------------
# radical helpers


class _SquarefreeCache:
    """Squarefree parts of the input polynomials, computed once each."""

    def __init__(self):
        self._cache: dict[MPoly, MPoly] = {}

    def part(self, p: MPoly) -> MPoly:
        got = self._cache.get(p)
        if got is None:
            if p.is_constant():
                got = p.ring.one()
            else:
                decomp = squarefree_decompose(p)
                got = p.ring.one()
                for q, _ in decomp.parts:
                    got = got * q
                got = unit_normalize(got)
            self._cache[p] = got
        return got


def _radical_product(cache: _SquarefreeCache, factors: list[MPoly]) -> MPoly:
    distinct = []
    for p in factors:
        if p not in distinct:
            distinct.append(p)
    out = factors[0].ring.one()
    for p in distinct:
        out = out * cache.part(p)
    return unit_normalize(out)


def _sum_ideal_codims(spec: MapSpec, cache: _SquarefreeCache) -> dict[Subset, int]:
    """codim of sum ideals I^alpha = (f_i, g_i : i in alpha), all alpha."""
    out: dict[Subset, int] = {}
    n1 = len(spec.pairs)
    for size in range(1, n1 + 1):
        for alpha in itertools.combinations(range(n1), size):
            gens = []
            for i in alpha:
                f, g = spec.pairs[i]
                for p in (f, g):
                    if not p.is_zero():
                        gens.append(cache.part(p))
            out[alpha] = projective_codimension(gens)
    return out


# ---------------------------------------------------------------------------
# condition reports


@dataclass
class ConditionReport:
    """Acyclicity and codimension findings for one map.

    avramov_codims[r] is codim of the ideal of r x r minors of the
    presentation matrix; geometric_dims[r] the projective dimension of
    its zero locus computed independently through intersections of the
    pairwise base loci (-1 for empty).  The two views are asserted
    equivalent on construction.
    """

    eta: int
    degrees: tuple[int, ...]
    avramov_codims: dict[int, int] | None = None
    avramov_ok: bool | None = None
    geometric_dims: dict[int, int] | None = None
    geometric_ok: bool | None = None
    x_points: tuple[ProjPoint, ...] = ()
    x_dimension: int | None = None  # None when X is empty
    subset_codims: dict[Subset, int] | None = None
    strict_ok: bool | None = None
    strict_witnesses: tuple[Subset, ...] = ()
    weak_ok: bool | None = None
    warnings: tuple[str, ...] = ()

    @property
    def acyclic(self) -> bool:
        return bool(self.avramov_ok)

    def merged_with(self, other: "ConditionReport") -> "ConditionReport":
        merged = ConditionReport(
            eta=self.eta,
            degrees=self.degrees,
            avramov_codims=self.avramov_codims or other.avramov_codims,
            avramov_ok=self.avramov_ok if self.avramov_ok is not None else other.avramov_ok,
            geometric_dims=self.geometric_dims or other.geometric_dims,
            geometric_ok=self.geometric_ok
            if self.geometric_ok is not None
            else other.geometric_ok,
            x_points=self.x_points or other.x_points,
            x_dimension=self.x_dimension if self.x_dimension is not None else other.x_dimension,
            subset_codims=self.subset_codims or other.subset_codims,
            strict_ok=self.strict_ok if self.strict_ok is not None else other.strict_ok,
            strict_witnesses=self.strict_witnesses or other.strict_witnesses,
            weak_ok=self.weak_ok if self.weak_ok is not None else other.weak_ok,
            warnings=tuple(dict.fromkeys(self.warnings + other.warnings)),
        )
        return merged


def _minor_factor_lists(spec: MapSpec, r: int) -> list[list[MPoly]]:
    """Nonzero r x r minors of the presentation matrix, as factor lists.

    The matrix has one nonzero entry per row (-g_i or f_i in column i),
    so a minor is nonzero exactly when the chosen rows pick one member
    from each of r distinct pairs, and then equals the signed product.
    """
    out = []
    for cols in itertools.combinations(range(len(spec.pairs)), r):
        for choice in itertools.product((0, 1), repeat=r):
            factors = []
            ok = True
            for i, c in zip(cols, choice):
                p = spec.pairs[i][c]
                if p.is_zero():
                    ok = False
                    break
                factors.append(p)
            if ok:
                out.append(factors)
    return out


def check_acyclicity(spec: MapSpec) -> ConditionReport:
    """Decide whether the Koszul complex of the forms is a resolution.

    Fills the minor-ideal codimension table, the independent geometric
    dimension view, and rational witness points of X when it is
    nonempty.  Raises RuntimeError if the two views ever disagree.
    """
    cache = _SquarefreeCache()
    n1 = len(spec.pairs)
    n = spec.n

    avramov_codims: dict[int, int] = {}
    for r in range(1, n1 + 1):
        gens = [
            _radical_product(cache, fac) for fac in _minor_factor_lists(spec, r)
        ]
        # dedupe: sign and repetition do not matter for the ideal's zero set
        unique = []
        for g in gens:
            if g not in unique:
                unique.append(g)
        avramov_codims[r] = projective_codimension(unique) if unique else 0
    avramov_ok = all(avramov_codims[r] >= n1 - r + 1 for r in range(1, n1 + 1))

    subset_codims = _sum_ideal_codims(spec, cache)
    geometric_dims: dict[int, int] = {}
    for r in range(1, n1):
        size = n1 + 1 - r
        dim_r = max(
            n - subset_codims[beta]
            for beta in itertools.combinations(range(n1), size)
        )
        geometric_dims[r] = dim_r
    # r = n1: one member of every pair nonzero makes dim <= n-1 automatic
    geometric_dims[n1] = max(n - subset_codims[(i,)] for i in range(n1))
    geometric_ok = all(geometric_dims[r] <= r - 2 for r in range(1, n1))

    for r in range(1, n1):
        if (avramov_codims[r] >= n1 - r + 1) != (geometric_dims[r] <= r - 2):
            raise RuntimeError(
                f"condition views disagree at r={r}: "
                f"codim {avramov_codims[r]} vs dim {geometric_dims[r]}"
            )
    if avramov_ok != (geometric_ok and avramov_codims[n1] >= 1):
        raise RuntimeError("condition views disagree overall")

    x_points: tuple[ProjPoint, ...] = ()
    x_dimension = None
    full = tuple(range(n1))
    if subset_codims[full] <= n:
        x_dimension = n - subset_codims[full]
        if x_dimension == 0:
            gens = []
            for f, g in spec.pairs:
                for p in (f, g):
                    if not p.is_zero():
                        gens.append(cache.part(p))
            x_points = rational_zero_locus(gens).points

    return ConditionReport(
        eta=spec.eta(),
        degrees=spec.degrees,
        avramov_codims=avramov_codims,
        avramov_ok=avramov_ok,
        geometric_dims=geometric_dims,
        geometric_ok=geometric_ok and avramov_codims[n1] >= 1,
        x_points=x_points,
        x_dimension=x_dimension,
        subset_codims=subset_codims,
        warnings=spec.warnings,
    )


def check_strict_codim(spec: MapSpec) -> ConditionReport:
    """Check codim(I^alpha) > |alpha| over nonempty proper subsets.

    Also records the weak inequality codim >= |alpha| over all subsets
    (it must hold whenever the acyclicity conditions do).
    """
    cache = _SquarefreeCache()
    subset_codims = _sum_ideal_codims(spec, cache)
    n1 = len(spec.pairs)
    witnesses = []
    for alpha, codim in subset_codims.items():
        if len(alpha) <= n1 - 1 and codim <= len(alpha):
            witnesses.append(alpha)
    weak_ok = all(codim >= len(alpha) for alpha, codim in subset_codims.items())
    witnesses.sort()
    return ConditionReport(
        eta=spec.eta(),
        degrees=spec.degrees,
        subset_codims=subset_codims,
        strict_ok=not witnesses,
        strict_witnesses=tuple(witnesses),
        weak_ok=weak_ok,
        warnings=spec.warnings,
    )


def check_conditions(spec: MapSpec) -> ConditionReport:
    """Acyclicity plus strict codimension in one report."""
    acyclic = check_acyclicity(spec)
    strict = check_strict_codim(spec)
    report = acyclic.merged_with(strict)
    if report.acyclic and not report.weak_ok:
        raise RuntimeError("weak codimension inequality violated despite acyclicity")
    return report


# ---------------------------------------------------------------------------
# base locus


Parametrization = tuple[tuple[Fraction, ...], ...]  # rows: t_j = sum P[j][k] s_k


@dataclass(frozen=True)
class BaseComponent:
    """A factor-producing piece of the base locus.

    alpha is the set of pairs vanishing identically on the component.
    Zero-dimensional components carry their rational points (plus a
    count of irrational ones not listed); positive-dimensional ones a
    linear parametrization when one was found among coordinate
    subspaces, or nothing but the dimension.
    """

    alpha: Subset
    dimension: int
    points: tuple[ProjPoint, ...] = ()
    subspace: Parametrization | None = None
    unresolved: int = 0


def _pair_vanishes_at(spec: MapSpec, i: int, point: ProjPoint) -> bool:
    f, g = spec.pairs[i]
    assign = dict(zip(spec.ring.t_vars, point.coords))
    return f.evaluate_all(assign) == 0 and g.evaluate_all(assign) == 0


def _coordinate_subspace(spec: MapSpec, zeroed: Subset) -> Parametrization:
    n1 = len(spec.ring.t_vars)
    free = [j for j in range(n1) if j not in zeroed]
    rows = []
    for j in range(n1):
        row = [Fraction(0)] * len(free)
        if j in free:
            row[free.index(j)] = Fraction(1)
        rows.append(tuple(row))
    return tuple(rows)


def base_points(spec: MapSpec) -> list[BaseComponent]:
    """Factor-producing base components: subsets alpha with codim = |alpha|.

    For |alpha| = n the rational points of V(I^alpha) are returned,
    filtered to those where no outside pair vanishes; positive
    dimensional components are located among coordinate subspaces where
    possible and otherwise reported with their dimension only.
    """
    cache = _SquarefreeCache()
    codims = _sum_ideal_codims(spec, cache)
    n = spec.n
    n1 = len(spec.pairs)
    comps: list[BaseComponent] = []
    for alpha, codim in sorted(codims.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if len(alpha) > n or codim != len(alpha):
            continue
        if codim == n:
            gens = []
            for i in alpha:
                for p in spec.pairs[i]:
                    if not p.is_zero():
                        gens.append(cache.part(p))
            locus = rational_zero_locus(gens)
            points = tuple(
                p
                for p in locus.points
                if not any(
                    _pair_vanishes_at(spec, k, p) for k in range(n1) if k not in alpha
                )
            )
            if points or locus.unresolved:
                comps.append(
                    BaseComponent(alpha, 0, points, None, locus.unresolved)
                )
        else:
            dim = n - codim
            found = False
            for zeroed in itertools.combinations(range(n1), codim):
                kill = {spec.ring.t_vars[j]: Fraction(0) for j in zeroed}
                if not all(
                    spec.pairs[i][0].substitute(kill).is_zero()
                    and spec.pairs[i][1].substitute(kill).is_zero()
                    for i in alpha
                ):
                    continue
                outside_vanishes = any(
                    spec.pairs[k][0].substitute(kill).is_zero()
                    and spec.pairs[k][1].substitute(kill).is_zero()
                    for k in range(n1)
                    if k not in alpha
                )
                if outside_vanishes:
                    continue
                comps.append(
                    BaseComponent(alpha, dim, (), _coordinate_subspace(spec, zeroed))
                )
                found = True
            if not found:
                comps.append(BaseComponent(alpha, dim))
    return comps


def fibre_dimension(point: ProjPoint, spec: MapSpec) -> int:
    """Number of pairs vanishing at the point: the fibre dimension there."""
    return sum(
        1 for i in range(len(spec.pairs)) if _pair_vanishes_at(spec, i, point)
    )


def point_factor(point: ProjPoint, i: int, spec: MapSpec) -> MPoly:
    """The linear form cut out over a base point by the surviving pair i."""
    f, g = spec.pairs[i]
    assign = dict(zip(spec.ring.t_vars, point.coords))
    fv, gv = f.evaluate_all(assign), g.evaluate_all(assign)
    if fv == 0 and gv == 0:
        raise PolyError(f"pair {i} vanishes at {point}")
    xi, yi = spec.ring.pairs[i]
    form = spec.ring.var(xi).scale(gv) - spec.ring.var(yi).scale(fv)
    return unit_normalize(form)


# ---------------------------------------------------------------------------
# restricted maps


def _restrict_to_work_ring(
    p: MPoly, spec: MapSpec, P: Parametrization, work: RingSpec
) -> MPoly:
    """Substitute t_j -> sum_k P[j][k] s_k into a t-polynomial."""
    if not p.is_t_polynomial():
        raise PolyError("only t-polynomials restrict to a subspace")
    params = [work.var(name) for name in work.t_vars]
    images = []
    for row in P:
        img = work.zero()
        for coeff, s in zip(row, params):
            if coeff:
                img = img + s.scale(coeff)
        images.append(img)
    nt = len(spec.ring.t_vars)
    out = work.zero()
    for e, c in p.terms.items():
        term = work.const(c)
        for j in range(nt):
            if e[j]:
                term = term * images[j] ** e[j]
        out = out + term
    return out


def _transport(p: MPoly, dst: RingSpec) -> MPoly:
    """Rebuild a polynomial in another ring by matching variable names."""
    src_names = p.ring.variables
    dst_index = {name: i for i, name in enumerate(dst.variables)}
    terms = {}
    for e, c in p.terms.items():
        out = [0] * dst.num_vars
        for i, k in enumerate(e):
            if k:
                name = src_names[i]
                if name not in dst_index:
                    raise PolyError(f"variable {name} missing in target ring")
                out[dst_index[name]] = k
        terms[tuple(out)] = c
    return MPoly(dst, terms)


def _jacobian_rank_is_full(
    pairs: list[tuple[MPoly, MPoly]], work: RingSpec, rng: random.Random
) -> bool:
    """Generic-rank probe: does the restricted map have maximal rank m?

    Uses the numerators of d(f/g) on the chart where the last parameter
    is 1, at random rational points.
    """
    m = len(work.t_vars) - 1
    if m == 0:
        return True
    rows_syms = []
    for f, g in pairs:
        rows_syms.append(
            [
                f.derivative(k) * g - f * g.derivative(k)
                for k in range(m)
            ]
        )
    for _ in range(8):
        point = {name: Fraction(rng.randint(-30, 30)) for name in work.t_vars[:-1]}
        point[work.t_vars[-1]] = Fraction(1)
        matrix = [
            [entry.evaluate_all(point) for entry in row] for row in rows_syms
        ]
        # row echelon rank over Q
        rank = 0
        cols = m
        mat = [row[:] for row in matrix]
        for c in range(cols):
            piv = next((r for r in range(rank, len(mat)) if mat[r][c]), None)
            if piv is None:
                continue
            mat[rank], mat[piv] = mat[piv], mat[rank]
            for r in range(len(mat)):
                if r != rank and mat[r][c]:
                    factor = mat[r][c] / mat[rank][c]
                    mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
            rank += 1
        if rank == m:
            return True
    return False


def implicitize_restricted(
    spec: MapSpec,
    subspace: Parametrization,
    alpha: Subset,
    rng: random.Random | None = None,
) -> MPoly | None:
    """Implicit equation of the map restricted to a linear base component.

    Pairs outside alpha are restricted to the subspace parameters and
    divided by their gcd.  A single constant pair (c:d) contributes the
    hyperplane d*x_i - c*y_i (the remaining pairs must be dominant); no
    constants means a full recursive implicitization one dimension down.
    Returns None when the restricted image has codimension >= 2 and so
    contributes no factor.
    """
    rng = rng or seeded_rng()
    alpha = tuple(sorted(alpha))
    m = len(subspace[0]) - 1
    if any(len(row) != m + 1 for row in subspace):
        raise PolyError("ragged parametrization")
    work = RingSpec(
        tuple(f"s{k}" for k in range(m + 1)),
        tuple((f"_p{k}", f"_q{k}") for k in range(m + 1)),
    )
    for i in alpha:
        for p in spec.pairs[i]:
            if not _restrict_to_work_ring(p, spec, subspace, work).is_zero():
                raise PolyError("subspace is not contained in the base component")
    outside = [i for i in range(len(spec.pairs)) if i not in alpha]
    restricted: list[tuple[int, MPoly, MPoly]] = []
    for i in outside:
        f, g = spec.pairs[i]
        F = _restrict_to_work_ring(f, spec, subspace, work)
        G = _restrict_to_work_ring(g, spec, subspace, work)
        if F.is_zero() and G.is_zero():
            raise PolyError(
                f"pair {i} vanishes identically on the subspace: not a base component"
            )
        if not F.is_zero() and not G.is_zero():
            from .polyring import multivariate_gcd

            c = multivariate_gcd(F, G)
            if not c.is_constant():
                F, G = try_exact_div(F, c), try_exact_div(G, c)
        restricted.append((i, F, G))

    constants = [(i, F, G) for i, F, G in restricted if F.is_constant() and G.is_constant()]
    moving = [(i, F, G) for i, F, G in restricted if not (F.is_constant() and G.is_constant())]

    if len(constants) >= 2:
        return None
    if len(constants) == 1:
        if moving and not _jacobian_rank_is_full(
            [(F, G) for _, F, G in moving], work, rng
        ):
            raise PolyError("restricted map is not generically finite")
        i, F, G = constants[0]
        xi, yi = spec.ring.pairs[i]
        form = spec.ring.var(xi).scale(G.constant_value()) - spec.ring.var(yi).scale(
            F.constant_value()
        )
        return unit_normalize(form)

    # no constants: the image is a hypersurface exactly when the map is
    # generically finite; implicitize recursively one dimension down
    if len(moving) != m + 1:
        return None
    if not _jacobian_rank_is_full([(F, G) for _, F, G in moving], work, rng):
        raise PolyError("restricted map is not generically finite")
    map_ring = RingSpec(
        tuple(f"s{k}" for k in range(m + 1)),
        tuple(spec.ring.pairs[i] for i, _, _ in moving),
    )
    pairs = [
        (_transport(F, map_ring), _transport(G, map_ring)) for _, F, G in moving
    ]
    sub_spec = MapSpec.of(map_ring, pairs, mode="permissive")
    res = macaulay_resultant(sub_spec, rng=rng)
    if res.is_zero():
        raise PolyError("restricted map has a degenerate resultant")
    comps = base_points(sub_spec)
    report = extract_implicit(sub_spec, res, comps, rng=rng)
    if report.H is None:
        raise PolyError("restricted implicit equation could not be isolated")
    return unit_normalize(_transport(report.H, spec.ring))


# ---------------------------------------------------------------------------
# factor extraction


@dataclass(frozen=True)
class FactorAttribution:
    """One extra factor of the resultant, tied to its base component."""

    component: BaseComponent
    factor: MPoly
    exponent: int
    point: ProjPoint | None = None


@dataclass
class ImplicitReport:
    """Resultant split into implicit equation, power and extra factors."""

    res: ResultantPoly
    H: MPoly | None
    deg_phi: int | None
    attributions: tuple[FactorAttribution, ...]
    residual: SquarefreeDecomp | None = None
    conditions: ConditionReport | None = None
    diagnostics: tuple[str, ...] = ()


def _divide_out(quotient: MPoly, factor: MPoly) -> tuple[MPoly, int]:
    count = 0
    while True:
        q = try_exact_div(quotient, factor)
        if q is None:
            return quotient, count
        quotient = q
        count += 1


def extract_implicit(
    spec: MapSpec,
    res: ResultantPoly,
    comps: list[BaseComponent],
    rng: random.Random | None = None,
) -> ImplicitReport:
    """Split the resultant as H^deg_phi times attributed extra factors.

    Point components contribute the linear form of their surviving pair;
    parametrized components the implicit equation of the restricted map.
    Exponents come from exact trial division.  The residual must be a
    perfect power of a squarefree polynomial; otherwise the raw
    decomposition is returned with a diagnostic instead of H.
    """
    if res.is_zero():
        raise PolyError("cannot extract from a zero resultant")
    rng = rng or seeded_rng()
    quotient = res.poly
    attributions: list[FactorAttribution] = []
    diagnostics: list[str] = []
    for comp in comps:
        if comp.points:
            outside = [i for i in range(len(spec.pairs)) if i not in comp.alpha]
            if len(outside) != 1:
                diagnostics.append(
                    f"component alpha={comp.alpha} has {len(outside)} surviving pairs"
                )
                continue
            i = outside[0]
            for p in comp.points:
                factor = point_factor(p, i, spec)
                quotient, count = _divide_out(quotient, factor)
                if count:
                    attributions.append(FactorAttribution(comp, factor, count, p))
                else:
                    diagnostics.append(f"factor {factor} of {p} does not divide")
            if comp.unresolved:
                diagnostics.append(
                    f"{comp.unresolved} irrational base point(s) for alpha={comp.alpha}"
                )
        elif comp.subspace is not None:
            factor = implicitize_restricted(spec, comp.subspace, comp.alpha, rng)
            if factor is None:
                continue
            quotient, count = _divide_out(quotient, factor)
            if count:
                attributions.append(FactorAttribution(comp, factor, count))
            else:
                diagnostics.append(
                    f"restricted equation {factor} (alpha={comp.alpha}) does not divide"
                )
        else:
            diagnostics.append(
                f"unattributed component alpha={comp.alpha} of dimension {comp.dimension}"
            )

    decomp = squarefree_decompose(quotient) if not quotient.is_constant() else None
    H = None
    deg_phi = None
    residual = None
    if decomp is None:
        diagnostics.append("no residual factor left after attribution")
    elif len(decomp.parts) == 1:
        H, deg_phi = decomp.parts[0]
        H = unit_normalize(H)
    else:
        residual = decomp
        diagnostics.append(
            "residual has mixed multiplicities: "
            + ", ".join(f"({q})^{m}" for q, m in decomp.parts)
        )

    if H is not None:
        rebuilt = H ** deg_phi
        for attr in attributions:
            rebuilt = rebuilt * attr.factor ** attr.exponent
        if not equal_up_to_unit(rebuilt, res.poly):
            raise RuntimeError("reconstruction failed: factor split is inconsistent")
        for i in range(len(spec.pairs)):
            got = pair_degree(H, i) * deg_phi + sum(
                pair_degree(a.factor, i) * a.exponent for a in attributions
            )
            if got != res.multidegree[i]:
                diagnostics.append(
                    f"degree identity fails in pair {i}: {got} != {res.multidegree[i]}"
                )
                residual = decomp
                H, deg_phi = None, None
                break

    return ImplicitReport(
        res=res,
        H=H,
        deg_phi=deg_phi,
        attributions=tuple(attributions),
        residual=residual,
        diagnostics=tuple(diagnostics),
    )


# ---------------------------------------------------------------------------
# certified exponent bounds


@dataclass(frozen=True)
class MuCertificate:
    """Membership exponents mu_i and the certificate resultant."""

    mu: dict[int, int]
    resultant: ResultantPoly

    @property
    def product(self) -> int:
        out = 1
        for v in self.mu.values():
            out *= v
        return out


def mu_lower_bound(
    spec: MapSpec,
    alpha: Subset,
    alpha_gens: list[MPoly],
    rng: random.Random | None = None,
    max_power: int = 10,
) -> MuCertificate:
    """Lower bound for an extra factor's exponent over a complete
    intersection component.

    The component's ideal generators together with the forms of the
    pairs outside alpha give a generalized resultant; mu_i is the
    largest e with the form of pair i inside the e-th power of that
    ideal (pairs outside alpha always have mu = 1).
    """
    rng = rng or seeded_rng()
    alpha = tuple(sorted(alpha))
    forms = linear_forms(spec).forms
    G = list(alpha_gens) + [forms[i] for i in range(len(forms)) if i not in alpha]
    power_bases: dict[int, object] = {}

    def member(target: MPoly, e: int) -> bool:
        gb = power_bases.get(e)
        if gb is None:
            gb = buchberger(ideal_power(G, e))
            power_bases[e] = gb
        return normal_form(target, gb).is_zero()

    mu: dict[int, int] = {}
    for i in alpha:
        e = 0
        while e < max_power and member(forms[i], e + 1):
            e += 1
        if e == max_power:
            raise PolyError(f"membership search for pair {i} exceeded e = {max_power}")
        mu[i] = e
    for i in range(len(forms)):
        if i not in alpha:
            mu[i] = 1
    strand = koszul_strand(G)
    certificate = det_cayley(strand, rng=rng)
    return MuCertificate(mu, certificate)
