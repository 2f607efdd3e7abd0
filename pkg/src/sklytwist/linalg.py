"""Exact linear algebra over a field tower: sparse echelon forms, ranks,
kernels and span comparisons.  Rows are dicts column -> TowerScalar."""

from __future__ import annotations

from typing import Iterable, Sequence

from sklytwist.scalars import FieldSpec, TowerScalar

Row = dict[int, TowerScalar]


class Echelon:
    """Incremental reduced echelon structure with max-column pivoting.

    Pivot rows are normalized (pivot coefficient 1) and fully reduced against
    each other, so every stored tail is supported on pivot-free columns only.
    Columns below ``pivot_floor`` are never chosen as pivots; they ride along
    in the tails (used for combination tracking with negative tag columns).
    """

    def __init__(self, pivot_floor: int | None = None) -> None:
        self.pivots: dict[int, Row] = {}  # pivot column -> {col: coeff}, pivot excluded
        self.pivot_floor = pivot_floor

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        """Fully reduce ``row`` against the stored pivots (a fresh dict).

        Stored tails never touch pivot columns, so one pass over the row's
        pivot columns is enough: no new pivot columns can appear.
        """
        work: Row = {}
        hits = []
        for c, v in row.items():
            if v.is_zero():
                continue
            if c in self.pivots:
                hits.append(c)
            work[c] = v
        for col in hits:
            coeff = work.pop(col)
            if coeff.is_zero():
                continue
            for c, v in self.pivots[col].items():
                acc = work.get(c)
                nv = -coeff * v if acc is None else acc - coeff * v
                if nv.is_zero():
                    work.pop(c, None)
                else:
                    work[c] = nv
        return {c: v for c, v in work.items() if not v.is_zero()}

    def insert(self, row: Row) -> int | None:
        """Reduce and add ``row``; returns the new pivot column or None."""
        red = self.reduce(row)
        if not red:
            return None
        if self.pivot_floor is None:
            piv = max(red)
        else:
            eligible = [c for c in red if c >= self.pivot_floor]
            if not eligible:
                return None
            piv = max(eligible)
        inv = red.pop(piv).invert()
        tail = {c: v * inv for c, v in red.items()}
        # keep previously stored rows reduced against the new pivot
        for pcol, prow in self.pivots.items():
            coeff = prow.pop(piv, None)
            if coeff is None or coeff.is_zero():
                continue
            for c, v in tail.items():
                acc = prow.get(c)
                nv = -coeff * v if acc is None else acc - coeff * v
                if nv.is_zero():
                    prow.pop(c, None)
                else:
                    prow[c] = nv
        self.pivots[piv] = tail
        return piv

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)


def rank_of_rows(rows: Iterable[Row]) -> int:
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    return ech.rank


def span_equal(rows_a: Sequence[Row], rows_b: Sequence[Row]) -> bool:
    """Row spans coincide: every row of each side reduces to zero in the other."""
    ech_a = Echelon()
    for row in rows_a:
        ech_a.insert(row)
    ech_b = Echelon()
    for row in rows_b:
        ech_b.insert(row)
    if ech_a.rank != ech_b.rank:
        return False
    return all(ech_a.contains(r) for r in rows_b) and all(ech_b.contains(r) for r in rows_a)


# -- small dense routines -----------------------------------------------------


def dense_rref(matrix: Sequence[Sequence[TowerScalar]]) -> tuple[list[list[TowerScalar]], list[int]]:
    """Reduced row echelon form of a dense matrix; returns (rref, pivot columns)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if not rows[k][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].invert()
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [vk - f * vr for vk, vr in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def dense_rank(matrix: Sequence[Sequence[TowerScalar]]) -> int:
    return len(dense_rref(matrix)[1])


def dense_kernel(matrix: Sequence[Sequence[TowerScalar]], spec: FieldSpec) -> list[list[TowerScalar]]:
    """Basis of the right kernel {x : M x = 0} of a dense matrix."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rref, pivots = dense_rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [spec.zero()] * ncols
        vec[fc] = spec.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def dense_solve(
    matrix: Sequence[Sequence[TowerScalar]],
    rhs: Sequence[TowerScalar],
    spec: FieldSpec,
) -> list[TowerScalar] | None:
    """One solution x of M x = rhs, or None when inconsistent."""
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    if not rows:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(matrix[0])
    rref, pivots = dense_rref(rows)
    sol = [spec.zero()] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:  # pivot in the augmented column: inconsistent
            return None
        sol[pc] = rref[r][ncols]
    return sol
