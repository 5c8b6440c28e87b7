"""Determinant of a generically exact strand: the Macaulay resultant.

Two independent backends compute det of a strand of free modules over
k[X] as an alternating product of nested minors:

* det_cayley works symbolically.  Index subsets are selected greedily at
  a random integer pilot point (a nonzero minor at a point certifies a
  nonzero minor polynomial), then the polynomial minors are computed by
  fraction-free Bareiss elimination and divided out exactly.

* det_interpolate exploits that the resultant is multihomogeneous with
  known pair degrees: it fixes the same subsets at a pilot, evaluates
  the scalar alternating product on a tensor grid with y_i = 1, and
  reconstructs the polynomial by exact tensor interpolation.

Internally both run on integer-coefficient sparse polynomials in the
pair variables only (dict exponent-tuple -> int); strand matrices are
scaled integral per level, which only changes results by a rational
unit, and every reported polynomial is unit-normalized.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .config import seeded_rng
from .koszul import LinFormSet, MapSpec, Strand, koszul_strand, linear_forms
from .polyring import (
    MPoly,
    PolyError,
    RingSpec,
    grlex_key,
    multidegree,
    try_exact_div,
    unit_normalize,
)


class NotGenericallyExact(PolyError):
    """The strand has deficient generic rank, so its determinant is 0."""


# ---------------------------------------------------------------------------
# integer sparse polynomials in the pair variables

XPoly = dict[tuple[int, ...], int]


def _xp_mul(a: XPoly, b: XPoly) -> XPoly:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out: XPoly = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(key, 0) + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def _xp_sub(a: XPoly, b: XPoly) -> XPoly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _xp_div_exact(a: XPoly, b: XPoly) -> XPoly:
    """Quotient in Z[X]; caller guarantees divisibility (Bareiss invariant)."""
    if not b:
        raise PolyError("division by zero")
    if not a:
        return {}
    eb = max(b, key=grlex_key)
    cb = b[eb]
    quo: XPoly = {}
    rem = dict(a)
    while rem:
        ea = max(rem, key=grlex_key)
        ca = rem[ea]
        diff = tuple(x - y for x, y in zip(ea, eb))
        if any(d < 0 for d in diff) or ca % cb:
            raise PolyError("inexact polynomial division")
        q = ca // cb
        quo[diff] = q
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(diff, e2))
            s = rem.get(key, 0) - q * c2
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return quo


def _xp_eval(a: XPoly, values: tuple[int, ...]) -> int:
    total = 0
    for e, c in a.items():
        term = c
        for v, k in zip(values, e):
            if k:
                term *= v ** k
        total += term
    return total


def _strand_to_xmatrices(strand: Strand) -> list[list[list[XPoly]] | None]:
    """Convert each differential to integer XPoly entries (pair exponents only).

    Each level is scaled by the common denominator of its entries, which
    multiplies every minor by a unit.
    """
    ring = strand.ring
    nt = len(ring.t_vars)
    out: list[list[list[XPoly]] | None] = [None]
    for k in range(1, len(strand.mats)):
        mat = strand.mats[k]
        denom = 1
        for row in mat:
            for p in row:
                for c in p.terms.values():
                    denom = denom * c.denominator // math.gcd(denom, c.denominator)
        xmat = []
        for row in mat:
            xrow = []
            for p in row:
                xp: XPoly = {}
                for e, c in p.terms.items():
                    if any(e[:nt]):
                        raise PolyError("strand entry involves t variables")
                    xp[e[nt:]] = int(c * denom)
                xrow.append(xp)
            xmat.append(xrow)
        out.append(xmat)
    return out


def _xp_to_mpoly(xp: XPoly, ring: RingSpec) -> MPoly:
    nt = len(ring.t_vars)
    return MPoly(ring, {(0,) * nt + e: Fraction(c) for e, c in xp.items()})


# ---------------------------------------------------------------------------
# exact determinants

def _det_bareiss_int(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        # pivot: first nonzero in column order, preferring small magnitude
        piv_row = None
        for i in range(k, n):
            if m[i][k]:
                if piv_row is None or abs(m[i][k]) < abs(m[piv_row][k]):
                    piv_row = i
        if piv_row is None:
            return 0
        if piv_row != k:
            m[k], m[piv_row] = m[piv_row], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def _det_bareiss_xp(entries: list[list[XPoly]]) -> XPoly:
    """Fraction-free determinant of a matrix of integer polynomials.

    Full pivoting; pivots prefer entries with the fewest terms to limit
    intermediate growth.
    """
    n = len(entries)
    if n == 0:
        raise PolyError("empty matrix has no Bareiss determinant here")
    width = None
    for row in entries:
        for p in row:
            if p:
                width = len(next(iter(p)))
                break
        if width is not None:
            break
    if width is None:
        return {}
    one: XPoly = {(0,) * width: 1}
    m = [row[:] for row in entries]
    sign = 1
    prev = one
    for k in range(n - 1):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if m[i][j]:
                    if best is None or len(m[i][j]) < len(m[best[0]][best[1]]):
                        best = (i, j)
        if best is None:
            return {}
        bi, bj = best
        if bi != k:
            m[k], m[bi] = m[bi], m[k]
            sign = -sign
        if bj != k:
            for row in m:
                row[k], row[bj] = row[bj], row[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = _xp_sub(_xp_mul(piv, m[i][j]), _xp_mul(mik, m[k][j]))
                m[i][j] = _xp_div_exact(num, prev) if k else num
            m[i][k] = {}
        prev = piv
    last = m[n - 1][n - 1]
    if sign < 0:
        last = {e: -c for e, c in last.items()}
    return last


# ---------------------------------------------------------------------------
# subset selection


def _expected_minor_ranks(ranks: list[int]) -> list[int] | None:
    """Sizes r_k of the level minors forced by generic exactness, or None."""
    m = len(ranks) - 1
    r = [0] * (m + 2)
    for k in range(m, 0, -1):
        r[k] = ranks[k] - r[k + 1]
        if r[k] < 0:
            return None
    if r[1] != ranks[0]:
        return None
    return r[: m + 2]


def _greedy_columns(
    mat: list[list[int]], row_idx: list[int], need: int
) -> list[int] | None:
    """First `need` columns (in order) independent on the given rows."""
    if need == 0:
        return []
    cols = len(mat[0]) if mat else 0
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[int] = []
    for c in range(cols):
        vec = [Fraction(mat[r][c]) for r in row_idx]
        for b, p in zip(basis, pivots):
            if vec[p]:
                factor = vec[p] / b[p]
                vec = [x - factor * y for x, y in zip(vec, b)]
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            continue
        basis.append(vec)
        pivots.append(pivot)
        chosen.append(c)
        if len(chosen) == need:
            return chosen
    return None


@dataclass(frozen=True)
class DetCertificate:
    """Reusable choices: per-level (rows, columns) subsets and the points used."""

    method: str
    levels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    pilot: tuple[int, ...]
    grid: tuple[tuple[int, ...], ...] = ()


def _select_subsets(
    xmats: list[list[list[XPoly]] | None],
    ranks: list[int],
    minor_ranks: list[int],
    rng: random.Random,
    retries: int = 5,
) -> tuple[list[tuple[list[int], list[int]]], tuple[int, ...]]:
    """Greedy row/column subsets validated at a random pilot point."""
    # number of pair variables = exponent width of any entry
    width = None
    for xmat in xmats[1:]:
        for row in xmat or []:
            for p in row:
                if p:
                    width = len(next(iter(p)))
                    break
            if width is not None:
                break
        if width is not None:
            break
    if width is None:
        raise NotGenericallyExact("strand has no nonzero entries")
    m = len(ranks) - 1
    for _ in range(retries):
        pilot = tuple(rng.randint(-1000, 1000) for _ in range(width))
        evaluated = [None] + [
            [[_xp_eval(p, pilot) for p in row] for row in xmats[k]]
            for k in range(1, m + 1)
        ]
        levels: list[tuple[list[int], list[int]]] = []
        prev_cols: list[int] = []
        ok = True
        for k in range(1, m + 1):
            if k == 1:
                rows = list(range(ranks[0]))
            else:
                rows = [i for i in range(ranks[k - 1]) if i not in set(prev_cols)]
            cols = _greedy_columns(evaluated[k], rows, minor_ranks[k]) if ranks[k] else []
            if cols is None:
                ok = False
                break
            levels.append((rows, cols))
            prev_cols = cols
        if ok:
            return levels, pilot
    raise NotGenericallyExact(
        "no valid minor subsets found: the strand is not generically exact"
    )


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class ResultantPoly:
    """Unit-normalized resultant with its pair multidegree.

    A zero polynomial carries a diagnostic instead of erroring: it is a
    meaningful outcome (the forms have a common zero).
    """

    poly: MPoly
    multidegree: tuple[int, ...]
    certificate: DetCertificate | None = None
    diagnostic: str | None = None

    def is_zero(self) -> bool:
        return self.poly.is_zero()


def _finish(strand: Strand, raw: MPoly, cert: DetCertificate) -> ResultantPoly:
    poly = unit_normalize(raw)
    deg = multidegree(poly)
    if deg.t_deg != 0 and not poly.is_zero():
        raise PolyError("resultant unexpectedly involves t variables")
    if strand.spec is not None and not poly.is_zero():
        expected = strand.spec.resultant_multidegree()
        if deg.pair_degs != expected:
            raise PolyError(
                f"resultant multidegree {deg.pair_degs} != expected {expected}"
            )
        md = expected
    else:
        md = tuple(d if d is not None else 0 for d in deg.pair_degs)
    return ResultantPoly(poly, md, cert)


def det_cayley(strand: Strand, rng: random.Random | None = None) -> ResultantPoly:
    """Exact determinant of the strand by nested minors.

    Raises NotGenericallyExact when no valid subsets exist (Res = 0).
    """
    rng = rng or seeded_rng()
    ranks = strand.ranks
    minor_ranks = _expected_minor_ranks(ranks)
    if minor_ranks is None:
        raise NotGenericallyExact("rank bookkeeping fails: Euler sum nonzero")
    xmats = _strand_to_xmatrices(strand)
    levels, pilot = _select_subsets(xmats, ranks, minor_ranks, rng)
    ring = strand.ring
    numerator = ring.one()
    denominator = ring.one()
    for k, (rows, cols) in enumerate(levels, start=1):
        if not cols:
            continue
        sub = [[xmats[k][r][c] for c in cols] for r in rows]
        d = _det_bareiss_xp(sub)
        if not d:
            raise PolyError("pilot-validated minor vanished symbolically")
        p = _xp_to_mpoly(d, ring)
        if k % 2:
            numerator = numerator * p
        else:
            denominator = denominator * p
    quotient = try_exact_div(numerator, denominator)
    if quotient is None:
        raise PolyError("alternating minor product is not a polynomial")
    cert = DetCertificate(
        "cayley", tuple((tuple(r), tuple(c)) for r, c in levels), pilot
    )
    return _finish(strand, quotient, cert)


def _newton_interpolate(nodes: list[int], values: list[Fraction]) -> list[Fraction]:
    """Coefficients (ascending) of the polynomial through (nodes, values)."""
    n = len(nodes)
    coeffs = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - j])
    # expand Newton form into the power basis
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - nodes[i]) + coeffs[i]
        new = [Fraction(0)] * n
        for d in range(n - 1):
            new[d + 1] += poly[d]
            new[d] -= poly[d] * nodes[i]
        new[0] += coeffs[i]
        poly = new
    return poly


def det_interpolate(
    strand: Strand,
    bounds: tuple[int, ...] | None = None,
    rng: random.Random | None = None,
    retries: int = 5,
) -> ResultantPoly:
    """Evaluation-interpolation determinant using multihomogeneous bounds.

    Dehomogenizes y_i = 1, evaluates the alternating minor product at a
    tensor grid of integer points, interpolates with per-variable degree
    bounds e_i, and rehomogenizes each pair back to degree e_i.
    """
    rng = rng or seeded_rng()
    if bounds is None:
        if strand.spec is None:
            raise PolyError("interpolation needs multidegree bounds")
        bounds = strand.spec.resultant_multidegree()
    ranks = strand.ranks
    minor_ranks = _expected_minor_ranks(ranks)
    if minor_ranks is None:
        raise NotGenericallyExact("rank bookkeeping fails: Euler sum nonzero")
    xmats = _strand_to_xmatrices(strand)
    npairs = len(bounds)

    def point_vector(xs: tuple[int, ...]) -> tuple[int, ...]:
        vec = []
        for x in xs:
            vec.extend((x, 1))
        return tuple(vec)

    # pilot with y_i = 1 so the same subsets stay valid on the grid slice
    levels = None
    for _ in range(retries):
        xs = tuple(rng.randint(-1000, 1000) for _ in range(npairs))
        pilot = point_vector(xs)
        evaluated = [None] + [
            [[_xp_eval(p, pilot) for p in row] for row in xmats[k]]
            for k in range(1, len(ranks))
        ]
        trial: list[tuple[list[int], list[int]]] = []
        prev_cols: list[int] = []
        ok = True
        for k in range(1, len(ranks)):
            rows = (
                list(range(ranks[0]))
                if k == 1
                else [i for i in range(ranks[k - 1]) if i not in set(prev_cols)]
            )
            cols = _greedy_columns(evaluated[k], rows, minor_ranks[k]) if ranks[k] else []
            if cols is None:
                ok = False
                break
            trial.append((rows, cols))
            prev_cols = cols
        if ok:
            levels = trial
            pilot_xs = xs
            break
    if levels is None:
        raise NotGenericallyExact(
            "no valid minor subsets found: the strand is not generically exact"
        )

    def value_at(xs: tuple[int, ...]) -> Fraction | None:
        vec = point_vector(xs)
        num = 1
        den = 1
        for k, (rows, cols) in enumerate(levels, start=1):
            sub = [[_xp_eval(xmats[k][r][c], vec) for c in cols] for r in rows]
            d = _det_bareiss_int(sub)
            if k % 2:
                num *= d
            else:
                if d == 0:
                    return None
                den *= d
        return Fraction(num, den)

    grid_axes = None
    values: dict[tuple[int, ...], Fraction] = {}
    for attempt in range(retries):
        base = [0] * npairs if attempt == 0 else [rng.randint(1, 40) for _ in range(npairs)]
        axes = [tuple(base[i] + k for k in range(bounds[i] + 1)) for i in range(npairs)]
        values.clear()
        failed = False
        for point in itertools.product(*axes):
            v = value_at(point)
            if v is None:
                failed = True
                break
            values[point] = v
        if not failed:
            grid_axes = axes
            break
    if grid_axes is None:
        raise PolyError("interpolation grid kept hitting singular minors")

    # tensor interpolation, one axis at a time: grid keys become exponents
    table = values
    for axis in range(npairs):
        nodes = list(grid_axes[axis])
        new_table: dict[tuple[int, ...], Fraction] = {}
        rest_keys = {}
        for key, v in table.items():
            rest = key[:axis] + key[axis + 1:]
            rest_keys.setdefault(rest, {})[key[axis]] = v
        for rest, col in rest_keys.items():
            series = [col[x] for x in nodes]
            coeffs = _newton_interpolate(nodes, series)
            for power, c in enumerate(coeffs):
                if c:
                    full = rest[:axis] + (power,) + rest[axis:]
                    new_table[full] = c
        table = new_table

    ring = strand.ring
    nt = len(ring.t_vars)
    terms = {}
    for exps, c in table.items():
        pair_part = []
        for i, a in enumerate(exps):
            if a > bounds[i]:
                raise PolyError("interpolation exceeded the degree bounds")
            pair_part.extend((a, bounds[i] - a))
        terms[(0,) * nt + tuple(pair_part)] = c
    raw = MPoly(ring, terms)

    # consistency probe at a fresh point
    probe = tuple(rng.randint(41, 90) for _ in range(npairs))
    direct = value_at(probe)
    if direct is not None:
        dehom = {(e[nt::2]): c for e, c in raw.terms.items()}
        got = Fraction(0)
        for exps, c in dehom.items():
            term = c
            for x, k in zip(probe, exps):
                term *= Fraction(x) ** k
            got += term
        if got != direct:
            raise PolyError("inconsistent interpolation: degree bounds look wrong")

    cert = DetCertificate(
        "interpolate",
        tuple((tuple(r), tuple(c)) for r, c in levels),
        point_vector(pilot_xs),
        tuple(tuple(a) for a in grid_axes),
    )
    return _finish(strand, raw, cert)


def macaulay_resultant(
    spec: MapSpec,
    nu: int | None = None,
    method: str = "cayley",
    rng: random.Random | None = None,
) -> ResultantPoly:
    """Resultant of the bilinear forms of a map, via the chosen backend.

    method is one of cayley, interpolate, both; "both" asserts agreement
    up to a rational unit.  A strand that is not generically exact gives
    the zero polynomial with a diagnostic rather than an exception.
    """
    if method not in ("cayley", "interpolate", "both"):
        raise PolyError(f"unknown method {method!r}")
    rng = rng or seeded_rng()
    strand = koszul_strand(linear_forms(spec), nu)
    try:
        if method == "interpolate":
            return det_interpolate(strand, rng=rng)
        result = det_cayley(strand, rng=rng)
        if method == "both":
            other = det_interpolate(strand, rng=rng)
            from .polyring import equal_up_to_unit

            if not equal_up_to_unit(result.poly, other.poly):
                raise PolyError("backends disagree: cayley != interpolate")
        return result
    except NotGenericallyExact as exc:
        return ResultantPoly(
            spec.ring.zero(),
            spec.resultant_multidegree(),
            None,
            f"resultant is identically zero: {exc}",
        )
