"""Determinants over commutative polynomial rings and row-ordered operator determinants."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .laurent import Lp2
from .rings import CMat, commutator_norm, is_zero

MAX_ROW_ORDERED = 6


def _perm_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    order = {v: i for i, v in enumerate(sorted(seq))}
    idx = [order[v] for v in seq]
    for i in range(len(idx)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = idx[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _as_lp2(x) -> Lp2:
    return x if isinstance(x, Lp2) else Lp2.const(x)


def det_cofactor(m) -> Lp2:
    """Division-free Laplace expansion along the first row (exponential; oracle use)."""
    n = len(m)
    if n == 0:
        return Lp2.const(Fraction(1))
    rows = [[_as_lp2(x) for x in row] for row in m]
    return _laplace(rows, list(range(n)))


def _laplace(rows, cols) -> Lp2:
    if len(rows) == 1:
        return rows[0][cols[0]]
    total = Lp2.zero()
    head, rest = rows[0], rows[1:]
    for k, c in enumerate(cols):
        e = head[c]
        if e.is_zero():
            continue
        minor = _laplace(rest, cols[:k] + cols[k + 1 :])
        term = e * minor
        total = total + term if k % 2 == 0 else total - term
    return total


def det_poly(m, method: str = "auto") -> Lp2:
    """Exact determinant of a square matrix of :class:`Lp2` over a commutative field.

    ``method="bareiss"`` runs fraction-free elimination with sparse rows and
    full pivoting (smallest pivot first).  Every Bareiss division is checked
    to be exact.  ``"cofactor"`` is the division-free Laplace expansion;
    ``"auto"`` uses Bareiss and falls back to cofactors for dimension <= 4 if
    an exact division fails (e.g. floating coefficients).
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det_poly needs a square matrix")
    if method == "cofactor":
        return det_cofactor(m)
    if method not in ("auto", "bareiss"):
        raise ValueError(f"unknown method {method!r}")
    try:
        return _bareiss(m)
    except ArithmeticError:
        if method == "auto" and n <= 4:
            return det_cofactor(m)
        raise


def _bareiss(m) -> Lp2:
    n = len(m)
    if n == 0:
        return Lp2.const(Fraction(1))
    rows = {}
    for i, row in enumerate(m):
        d = {}
        for j, x in enumerate(row):
            x = _as_lp2(x)
            if not x.is_zero():
                d[j] = x
        rows[i] = d
    prev = None
    row_order, col_order = [], []
    pivot = None
    for _ in range(n):
        # Markowitz-style choice: fewest terms, then sparsest row/column
        col_count = {}
        for d in rows.values():
            for j in d:
                col_count[j] = col_count.get(j, 0) + 1
        best = None
        for i, d in rows.items():
            for j, x in d.items():
                key = (len(x), (len(d) - 1) * (col_count[j] - 1), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            return Lp2.zero()
        _, pi, pj = best
        prow = rows.pop(pi)
        pivot = prow[pj]
        row_order.append(pi)
        col_order.append(pj)
        for i, d in rows.items():
            a = d.pop(pj, None)
            new = {}
            for j in set(d) | (set(prow) - {pj} if a is not None else set()):
                x = d.get(j)
                val = pivot * x if x is not None else None
                if a is not None and j in prow:
                    t = a * prow[j]
                    val = -t if val is None else val - t
                if val is None or val.is_zero():
                    continue
                if prev is not None:
                    val = val.divexact(prev)
                new[j] = val
            rows[i] = new
        prev = pivot
    sign = _perm_sign(row_order) * _perm_sign(col_order)
    return pivot if sign > 0 else -pivot


def _entries_commute(x, y, tol: float) -> bool:
    if isinstance(x, Lp2) or isinstance(y, Lp2):
        xs = x.terms.values() if isinstance(x, Lp2) else [x]
        ys = y.terms.values() if isinstance(y, Lp2) else [y]
        return all(commutator_norm(a, b) <= tol for a in xs for b in ys)
    return commutator_norm(x, y) <= tol


def det_row_ordered(m, check_tol: float = 1e-8):
    """Leibniz determinant with factors multiplied in increasing row order.

    Entries may be :class:`CMat` or :class:`Lp2` with CMat coefficients.  The
    expansion is only meaningful when entries from different rows commute;
    that is checked pairwise and a violation raises ``ValueError``.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det_row_ordered needs a square matrix")
    if n > MAX_ROW_ORDERED:
        raise ValueError(f"dimension {n} > {MAX_ROW_ORDERED}: factorial expansion refused")
    nonzero = [[(j, x) for j, x in enumerate(row) if not is_zero(x)] for row in m]
    for r1, r2 in itertools.combinations(range(n), 2):
        for _, x in nonzero[r1]:
            for _, y in nonzero[r2]:
                if not _entries_commute(x, y, check_tol):
                    raise ValueError(f"entries of rows {r1} and {r2} do not commute")
    total = None
    for perm in itertools.permutations(range(n)):
        prod = None
        for r, c in enumerate(perm):
            e = m[r][c]
            if is_zero(e):
                prod = None
                break
            prod = e if prod is None else prod * e
        else:
            if prod is None:
                continue
            if _perm_sign(perm) < 0:
                prod = -prod
            total = prod if total is None else total + prod
    if total is None:
        return _zero_for(m)
    return total


def _zero_for(m):
    for row in m:
        for x in row:
            if isinstance(x, CMat):
                return CMat(0 * x.a)
            if isinstance(x, Lp2):
                return Lp2.zero()
    return 0


def rank_exact(m) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][c]
            if f:
                f /= p[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank
