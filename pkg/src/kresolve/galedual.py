"""Maps from integer matrices: the Gale-dual route to sparse discriminants.

An m x (n+1) integer matrix B of full column rank with zero column sums
defines m linear forms l_i (rows) in the t variables and n+1 pairs
(columns): f_i multiplies the l_j with positive entry B[j][i] to that
power, g_i the ones with negative entry.  Zero column sums force
deg f_i = deg g_i.  Column operations by a unimodular matrix change the
map without changing the discriminant it computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .koszul import MapSpec
from .polyring import MPoly, PolyError, RingSpec


class GaleMatrixError(PolyError):
    """Matrix violates the Gale construction invariants."""


def _int_rank(rows: list[list[int]]) -> int:
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c]:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _int_det(rows: list[list[int]]) -> int:
    n = len(rows)
    mat = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if mat[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            mat[k], mat[piv] = mat[piv], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class GaleMatrix:
    """Integer matrix whose rows are linear forms and columns exponent splits."""

    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(rows) -> "GaleMatrix":
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        if not entries:
            raise GaleMatrixError("empty matrix")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise GaleMatrixError("ragged rows")
        if width == 0:
            raise GaleMatrixError("no columns")
        for i, row in enumerate(entries):
            if not any(row):
                raise GaleMatrixError(f"row {i} is zero (degenerate linear form)")
        for j in range(width):
            if sum(row[j] for row in entries) != 0:
                raise GaleMatrixError(f"column {j} does not sum to zero")
        if _int_rank([list(r) for r in entries]) != width:
            raise GaleMatrixError("matrix does not have full column rank")
        return GaleMatrix(entries)

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.entries[0])


def parse_gale_matrix(text: str) -> GaleMatrix:
    """One row per line, whitespace-separated integers."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise GaleMatrixError(f"bad matrix line {line!r}") from exc
    return GaleMatrix.of(rows)


def gale_linear_forms(B: GaleMatrix, ring: RingSpec) -> list[MPoly]:
    """The linear forms read off the rows of B."""
    if B.num_cols != len(ring.t_vars):
        raise GaleMatrixError(
            f"matrix has {B.num_cols} columns but the ring has {len(ring.t_vars)} t variables"
        )
    forms = []
    for row in B.entries:
        form = ring.zero()
        for coeff, name in zip(row, ring.t_vars):
            if coeff:
                form = form + ring.var(name).scale(coeff)
        forms.append(form)
    return forms


def gale_map(B: GaleMatrix, ring: RingSpec, mode: str = "strict") -> MapSpec:
    """Pairs (f_i, g_i) from the column exponent splits of B."""
    forms = gale_linear_forms(B, ring)
    pairs = []
    for i in range(B.num_cols):
        f = ring.one()
        g = ring.one()
        for j, row in enumerate(B.entries):
            e = row[i]
            if e > 0:
                f = f * forms[j] ** e
            elif e < 0:
                g = g * forms[j] ** (-e)
        pairs.append((f, g))
    return MapSpec.of(ring, pairs, mode=mode)


def column_transform(B: GaleMatrix, M: list[list[int]]) -> GaleMatrix:
    """Right-multiply by a unimodular integer matrix; invariants recheck."""
    size = B.num_cols
    if len(M) != size or any(len(row) != size for row in M):
        raise GaleMatrixError(f"transform must be {size}x{size}")
    det = _int_det([list(map(int, row)) for row in M])
    if det not in (1, -1):
        raise GaleMatrixError(f"transform determinant {det} is not a unit")
    product = [
        [sum(row[k] * M[k][j] for k in range(size)) for j in range(size)]
        for row in B.entries
    ]
    return GaleMatrix.of(product)
