"""Row-echelon kernels over a FieldCtx.

Vectors are tuples of integer codes, matrices are tuples of such rows.
Everything returns canonical reduced row-echelon data so that equal row
spaces compare equal as plain tuples.
"""

from __future__ import annotations

from .gf import FieldCtx

Row = tuple[int, ...]
Mat = tuple[Row, ...]


def rref(ctx: FieldCtx, rows) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (rows_without_zeros, pivot_columns)."""
    MUL, ADD, INV, NEG = ctx.MUL, ctx.ADD, ctx.INV, ctx.NEG
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = INV[work[r][c]]
        if inv != 1:
            row = work[r]
            for j in range(c, ncols):
                row[j] = MUL[inv, row[j]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = NEG[work[i][c]]
                row = work[i]
                for j in range(c, ncols):
                    row[j] = ADD[row[j], MUL[f, prow[j]]]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = tuple(tuple(row) for row in work[:r])
    return out, tuple(pivots)


def rank(ctx: FieldCtx, rows) -> int:
    return len(rref(ctx, rows)[0])


def row_space_sum(ctx: FieldCtx, a: Mat, b: Mat) -> tuple[Mat, tuple[int, ...]]:
    return rref(ctx, list(a) + list(b))


def intersect(ctx: FieldCtx, a: Mat, b: Mat, ncols: int) -> Mat:
    """Zassenhaus: rows with zero left half of rref([[A A],[B 0]]) span A^B."""
    if not a or not b:
        return ()
    stacked = [list(r) + list(r) for r in a] + [list(r) + [0] * ncols for r in b]
    red, _ = rref(ctx, stacked)
    inter = [r[ncols:] for r in red if all(x == 0 for x in r[:ncols])]
    out, _ = rref(ctx, inter)
    return out


def nullspace(ctx: FieldCtx, rows, ncols: int) -> Mat:
    """Canonical basis of the right kernel {x : rows . x = 0}."""
    red, pivots = rref(ctx, rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    NEG = ctx.NEG
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = int(NEG[red[i][f]])
        basis.append(tuple(vec))
    out, _ = rref(ctx, basis)
    return out


def contains_vector(ctx: FieldCtx, red_rows: Mat, pivots, vec) -> bool:
    """Membership of vec in the row space given by rref data."""
    ADD, MUL, NEG = ctx.ADD, ctx.MUL, ctx.NEG
    v = list(vec)
    for i, pc in enumerate(pivots):
        if v[pc] != 0:
            f = NEG[v[pc]]
            row = red_rows[i]
            for j in range(pc, len(v)):
                v[j] = ADD[v[j], MUL[f, row[j]]]
    return all(x == 0 for x in v)


def echelon_patterns(ncols: int, dim: int):
    """Pivot-column patterns in lexicographic order."""
    import itertools

    return itertools.combinations(range(ncols), dim)


def enumerate_echelon(ctx: FieldCtx, ncols: int, dim: int, scalars=None, row_filter=None):
    """Stream all dim-dimensional row spaces in canonical echelon form.

    Pivot sets run lexicographically, free entries in field enumeration
    order (slowest index varies last), entries drawn from ``scalars``
    (defaults to the whole field).  ``row_filter(rows_so_far)`` may prune
    a partial matrix as soon as its last row is filled; it must be a
    condition on the row span prefix for the enumeration to stay exact.
    """
    import itertools

    if scalars is None:
        scalars = range(ctx.size)
    scalars = list(scalars)
    if dim == 0:
        yield ()
        return
    for pivots in echelon_patterns(ncols, dim):
        pivset = set(pivots)
        base = []
        slots_per_row = []
        for i, pc in enumerate(pivots):
            row = [0] * ncols
            row[pc] = 1
            base.append(row)
            slots_per_row.append([c for c in range(pc + 1, ncols) if c not in pivset])

        def rec(i, rows):
            if i == dim:
                yield tuple(rows)
                return
            for values in itertools.product(scalars, repeat=len(slots_per_row[i])):
                row = base[i][:]
                for c, v in zip(slots_per_row[i], values):
                    row[c] = v
                nxt = rows + (tuple(row),)
                if row_filter is not None and not row_filter(nxt):
                    continue
                yield from rec(i + 1, nxt)

        yield from rec(0, ())


def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den
