"""Exact sparse Gaussian elimination over the rationals.

Rows are sparse vectors in Q^ncols.  Two interchangeable elimination paths:

* ``fraction_free`` (default): rows kept as content-reduced integer vectors,
  elimination by cross-multiplication.  Fast, no Fraction objects in the hot
  loop.
* ``rational``: rows of Fractions, pivot = first nonzero column.

Both are exact and must agree on ranks (enforced by a property test).
Rank computations short-circuit once the pivot count reaches ncols; at that
point the rank is exactly ncols and the remaining rows are dependent.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import gcd
from typing import Iterable

# A sparse integer row: list of (column, value), sorted by column, no zeros.
IntRow = list[tuple[int, int]]
# A sparse rational vector: {column: Fraction}, no zero values.
FracVec = dict[int, Fraction]


def to_int_row(vec) -> IntRow:
    """Normalize a {col: value} mapping or (col, value) iterable to an IntRow.

    Rational values are cleared to integers by the denominator lcm; the row
    is then content-reduced with positive leading value.
    """
    items = sorted(vec.items() if isinstance(vec, dict) else vec)
    items = [(c, v) for c, v in items if v]
    if not items:
        return []
    den = 1
    for _, v in items:
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // gcd(den, v.denominator)
    if den != 1:
        items = [(c, int(v * den)) for c, v in items]
    else:
        items = [(c, int(v)) for c, v in items]
    return _content_reduce(items)


def _content_reduce(items: IntRow) -> IntRow:
    g = 0
    for _, v in items:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        items = [(c, v // g) for c, v in items]
    if items and items[0][1] < 0:
        items = [(c, -v) for c, v in items]
    return items


def _axpy(b: int, row: IntRow, a: int, piv: IntRow, skip_col: int) -> IntRow:
    """b*row + a*piv, merged by column; skip_col is known to cancel."""
    out: IntRow = []
    i = j = 0
    li, lj = len(row), len(piv)
    while i < li and j < lj:
        ci, cj = row[i][0], piv[j][0]
        if ci < cj:
            out.append((ci, b * row[i][1]))
            i += 1
        elif cj < ci:
            out.append((cj, a * piv[j][1]))
            j += 1
        else:
            if ci != skip_col:
                v = b * row[i][1] + a * piv[j][1]
                if v:
                    out.append((ci, v))
            i += 1
            j += 1
    while i < li:
        out.append((row[i][0], b * row[i][1]))
        i += 1
    while j < lj:
        out.append((piv[j][0], a * piv[j][1]))
        j += 1
    return out


class IntEliminator:
    """Incremental fraction-free row echelon; pivots indexed by leading column."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: IntRow) -> IntRow:
        pivots = self.pivots
        while row:
            c, a = row[0]
            piv = pivots.get(c)
            if piv is None:
                return row
            b = piv[0][1]
            g = gcd(a, b)
            row = _content_reduce(_axpy(b // g, row, -(a // g), piv, c))
        return row

    def add(self, row: IntRow) -> bool:
        """Reduce row against current pivots; register as new pivot if nonzero."""
        row = self.reduce(row)
        if row:
            self.pivots[row[0][0]] = _content_reduce(row)
            return True
        return False

    def add_all_for_rank(self, rows: Iterable[IntRow]) -> int:
        for row in rows:
            if self.rank == self.ncols:
                break
            self.add(row)
        return self.rank

    def rref(self) -> list[FracVec]:
        """Back-eliminate and normalize pivots to 1; rows sorted by pivot column."""
        cols = sorted(self.pivots)
        reduced: dict[int, IntRow] = {c: self.pivots[c] for c in cols}
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            piv = reduced[c]
            b = piv[0][1]
            for c2 in cols[:idx]:
                row = reduced[c2]
                pos = bisect_left(row, (c, -(1 << 300)))
                if pos < len(row) and row[pos][0] == c:
                    a = row[pos][1]
                    g = gcd(a, b)
                    reduced[c2] = _content_reduce(
                        _axpy(b // g, row, -(a // g), piv, c)
                    )
        out = []
        for c in cols:
            row = reduced[c]
            lead = row[0][1]
            out.append({col: Fraction(v, lead) for col, v in row})
        return out


class FracEliminator:
    """Rational-arithmetic elimination, first-nonzero (smallest column) pivot."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, FracVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec: FracVec) -> bool:
        row = {c: Fraction(v) for c, v in vec.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                self.pivots[c] = {k: v * inv for k, v in row.items()}
                return True
            factor = row[c]
            for k, v in piv.items():
                s = row.get(k, Fraction(0)) - factor * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return False


def rank(rows: Iterable, ncols: int, method: str = "fraction_free") -> int:
    """Rank of the span of the given sparse rows inside Q^ncols."""
    if method == "fraction_free":
        el = IntEliminator(ncols)
        return el.add_all_for_rank(to_int_row(r) if not isinstance(r, list) else r
                                   for r in rows)
    if method == "rational":
        fel = FracEliminator(ncols)
        for r in rows:
            if fel.rank == ncols:
                break
            fel.add(dict(r) if not isinstance(r, dict) else r)
        return fel.rank
    raise ValueError(f"unknown elimination method {method!r}")


def rref(rows: Iterable, ncols: int) -> list[FracVec]:
    """Canonical reduced row echelon form of the row span (pivot entries 1)."""
    el = IntEliminator(ncols)
    for r in rows:
        if el.rank == ncols:
            break
        el.add(to_int_row(r) if not isinstance(r, list) else r)
    return el.rref()


def nullspace(rows: Iterable, ncols: int) -> list[FracVec]:
    """Basis of {x in Q^ncols : row . x = 0 for every row}.

    One basis vector per free column, in increasing column order.
    """
    rr = rref(rows, ncols)
    pivot_cols = [min(r) for r in rr]
    by_pivot = dict(zip(pivot_cols, rr))
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec: FracVec = {f: Fraction(1)}
        for c, row in by_pivot.items():
            a = row.get(f)
            if a:
                vec[c] = -a
        basis.append(vec)
    return basis


def residual(rref_rows: list[FracVec], vec: FracVec) -> FracVec:
    """Reduce vec against an RREF family; empty result means membership."""
    work = {c: Fraction(v) for c, v in vec.items() if v}
    for row in rref_rows:
        c = min(row)
        a = work.get(c)
        if a:
            for k, v in row.items():
                s = work.get(k, Fraction(0)) - a * v
                if s:
                    work[k] = s
                else:
                    work.pop(k, None)
    return work


def spans_equal(rref_a: list[FracVec], rref_b: list[FracVec]) -> bool:
    """RREF is canonical, so span equality is literal equality."""
    return rref_a == rref_b
