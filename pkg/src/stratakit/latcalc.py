"""Truncated hermitian lattice calculus in equal characteristic.

The base ring is R = GF(q^s)[pi]/(pi^(2N)) with the order-2 conjugation
pi -> -pi and the coefficientwise q-power Frobenius sigma (fixing pi);
this is the function-field stand-in for a ramified quadratic extension,
with pi^2 playing the role of the base uniformizer.  Lattices are free
R-submodules of R^n given by a column basis in a Hermite-style normal
form together with a global pi-power rescaling (``vfloor``); a hermitian
Gram matrix H and a sigma-semilinear operator tau(x) = A sigma(x) with
A unitary complete the data.

All arithmetic is exact in R.  The interpretation as lattices over the
untruncated power series ring is valid while every valuation produced
stays below the guard N = half the truncation order; any operation that
would cross the guard raises :class:`GuardError`, and callers treat that
as an inconclusive trial, never a pass.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .gf import FieldCtx
from . import linalg


class GuardError(RuntimeError):
    """A valuation crossed the truncation guard; the run is inconclusive."""


class LatticeError(ValueError):
    pass


class TruncRing:
    """GF(q^s)[pi]/(pi^(2N)) with conjugation and Frobenius."""

    def __init__(self, ctx: FieldCtx, N: int):
        if N < 2:
            raise LatticeError("guard N must be >= 2")
        self.ctx = ctx
        self.N = N
        self.width = 2 * N
        self.zero = (0,) * self.width
        self.one = (1,) + (0,) * (self.width - 1)

    def elem(self, coeffs) -> tuple[int, ...]:
        c = [int(x) for x in coeffs][: self.width]
        c += [0] * (self.width - len(c))
        return tuple(c)

    def const(self, code: int) -> tuple[int, ...]:
        return (code,) + (0,) * (self.width - 1)

    def pi_pow(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.width:
            raise GuardError(f"pi^{j} outside the ring window")
        return (0,) * j + (1,) + (0,) * (self.width - j - 1)

    def add(self, a, b):
        ADD = self.ctx.ADD
        return tuple(int(ADD[x, y]) for x, y in zip(a, b))

    def neg(self, a):
        NEG = self.ctx.NEG
        return tuple(int(NEG[x]) for x in a)

    def mul(self, a, b):
        ADD, MUL = self.ctx.ADD, self.ctx.MUL
        w = self.width
        out = [0] * w
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = MUL[x]
            for j, y in enumerate(b):
                if y and i + j < w:
                    out[i + j] = int(ADD[out[i + j], row[y]])
        return tuple(out)

    def conj(self, a):
        NEG = self.ctx.NEG
        return tuple(int(NEG[x]) if i % 2 else x for i, x in enumerate(a))

    def sigma(self, a):
        FROB = self.ctx.FROB
        return tuple(int(FROB[x]) for x in a)

    def val(self, a) -> int:
        for i, x in enumerate(a):
            if x:
                return i
        return self.width

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def unit_inv(self, a):
        """Inverse of a unit (valuation 0), by power-series recursion."""
        if a[0] == 0:
            raise LatticeError("not a unit")
        ctx = self.ctx
        inv0 = ctx.inv(a[0])
        out = [inv0] + [0] * (self.width - 1)
        # Newton-free forward substitution: (a * out)_j = delta_{0j}
        for j in range(1, self.width):
            s = 0
            for i in range(1, j + 1):
                if a[i] and out[j - i]:
                    s = ctx.add(s, ctx.mul(a[i], out[j - i]))
            out[j] = ctx.mul(ctx.neg(s), inv0)
        return tuple(out)

    def shift(self, a, j: int):
        """Multiply by pi^j (j may be negative: exact division required)."""
        if j == 0:
            return a
        if j > 0:
            if any(a[self.width - j :]):
                raise GuardError("shift pushes support past the truncation order")
            return (0,) * j + a[: self.width - j]
        j = -j
        if any(a[:j]):
            raise LatticeError("inexact division by pi power")
        return a[j:] + (0,) * j

    def divide(self, a, b):
        """a / b when val(a) >= val(b); exact in the window."""
        vb = self.val(b)
        if vb == self.width:
            raise ZeroDivisionError("division by zero in the truncated ring")
        if self.val(a) < vb:
            raise LatticeError("inexact ring division")
        if vb > self.N:
            raise GuardError("divisor valuation beyond the guard")
        a2 = self.shift(a, -vb)
        b2 = self.shift(b, -vb)
        return self.mul(a2, self.unit_inv(b2))


# -- matrices over the ring ------------------------------------------------

def mat_mul(R: TruncRing, A, B):
    n, m = len(A), len(B[0])
    inner = len(B)
    out = [[R.zero] * m for _ in range(n)]
    for i in range(n):
        for k in range(inner):
            a = A[i][k]
            if R.is_zero(a):
                continue
            for j in range(m):
                b = B[k][j]
                if not R.is_zero(b):
                    out[i][j] = R.add(out[i][j], R.mul(a, b))
    return [row[:] for row in out]


def mat_vec(R: TruncRing, A, v):
    out = [R.zero] * len(A)
    for i, row in enumerate(A):
        acc = R.zero
        for a, x in zip(row, v):
            if not (R.is_zero(a) or R.is_zero(x)):
                acc = R.add(acc, R.mul(a, x))
        out[i] = acc
    return out


def mat_identity(R: TruncRing, n: int):
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def mat_conj_T(R: TruncRing, A):
    n, m = len(A), len(A[0])
    return [[R.conj(A[i][j]) for i in range(n)] for j in range(m)]


def mat_sigma(R: TruncRing, A):
    return [[R.sigma(x) for x in row] for row in A]


def _columns(A):
    return [tuple(row[j] for row in A) for j in range(len(A[0]))]


def _from_columns(cols):
    n = len(cols[0])
    return [[col[i] for col in cols] for i in range(n)]


def column_hnf(R: TruncRing, cols, n: int):
    """Hermite-style column normal form.

    Returns (pivot valuations a_0..a_{n-1}, matrix) where the matrix is
    lower triangular with diagonal pi^{a_i}, entries right of the pivot
    eliminated and entries left of it reduced modulo the row pivot.
    Raises on rank deficiency.
    """
    work = [list(c) for c in cols]
    pivs: list[int] = []
    for r in range(n):
        best = None
        bestv = R.width
        for j in range(r, len(work)):
            v = R.val(work[j][r])
            if v < bestv:
                bestv, best = v, j
        if best is None or bestv == R.width:
            raise LatticeError("rank-deficient generating set")
        if bestv > R.N:
            raise GuardError("pivot valuation beyond the guard")
        work[r], work[best] = work[best], work[r]
        # normalize pivot column so the pivot entry is exactly pi^a
        unit = R.shift(work[r][r], -bestv)
        uinv = R.unit_inv(unit)
        work[r] = [R.mul(uinv, x) for x in work[r]]
        piv = work[r]
        for j in range(len(work)):
            if j == r or R.is_zero(work[j][r]):
                continue
            if j > r:
                q = R.shift(work[j][r], -bestv)
            else:
                # reduce modulo pi^a: subtract the exactly-divisible part
                x = work[j][r]
                keep = x[:bestv] + (0,) * (R.width - bestv)
                q = R.shift(R.add(x, R.neg(keep)), -bestv)
            if R.is_zero(q):
                continue
            work[j] = [R.add(work[j][i], R.neg(R.mul(q, piv[i]))) for i in range(n)]
        pivs.append(bestv)
    for j in range(n, len(work)):
        if any(not R.is_zero(x) for x in work[j]):
            raise LatticeError("extra generators outside the span (bug)")
    # later eliminations can disturb earlier reductions; one final pass
    # restores the canonical sub-pivot residues, top row downward
    for j in range(n):
        for i in range(j + 1, n):
            x = work[j][i]
            a = pivs[i]
            if R.val(x) >= a:
                q = R.shift(x, -a)
            else:
                keep = x[:a] + (0,) * (R.width - a)
                q = R.shift(R.add(x, R.neg(keep)), -a)
            if not R.is_zero(q):
                work[j] = [R.add(work[j][t], R.neg(R.mul(q, work[i][t]))) for t in range(n)]
    return pivs, _from_columns([tuple(c) for c in work[:n]])


@dataclass(frozen=True)
class Lattice:
    """pi^vfloor times the column span of a normal-form basis matrix."""

    ring: TruncRing
    n: int
    vfloor: int
    basis: tuple  # rows of the lower-triangular normal form

    @staticmethod
    def from_columns(ring: TruncRing, cols, vfloor: int = 0) -> "Lattice":
        n = len(cols[0])
        pivs, mat = column_hnf(ring, cols, n)
        # pull a common pi power into the floor
        g = min(ring.val(x) for row in mat for x in row if not ring.is_zero(x))
        if g > 0:
            mat = [[ring.shift(x, -g) if not ring.is_zero(x) else x for x in row] for row in mat]
            vfloor += g
        if abs(vfloor) > ring.N:
            raise GuardError("lattice floor beyond the guard")
        return Lattice(ring, n, vfloor, tuple(tuple(row) for row in mat))

    def columns(self):
        return _columns([list(r) for r in self.basis])

    def key(self) -> tuple:
        return (self.vfloor, self.basis)

    def pivot_valuations(self) -> tuple[int, ...]:
        R = self.ring
        return tuple(R.val(self.basis[i][i]) for i in range(self.n))

    def det_valuation(self) -> int:
        return sum(self.pivot_valuations()) + self.n * self.vfloor

    def scale(self, j: int) -> "Lattice":
        if abs(self.vfloor + j) > self.ring.N:
            raise GuardError("scaling beyond the guard")
        return Lattice(self.ring, self.n, self.vfloor + j, self.basis)


def standard_lattice(ring: TruncRing, n: int) -> Lattice:
    return Lattice(ring, n, 0, tuple(tuple(r) for r in mat_identity(ring, n)))


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    R = L1.ring
    v = min(L1.vfloor, L2.vfloor)
    cols = []
    for L in (L1, L2):
        shift = L.vfloor - v
        for c in L.columns():
            cols.append(tuple(R.shift(x, shift) for x in c))
    return Lattice.from_columns(R, cols, v)


def contains(big: Lattice, small: Lattice) -> bool:
    """small subset of big, by forward substitution in the triangular form."""
    R = big.ring
    shift = small.vfloor - big.vfloor
    piv = big.pivot_valuations()
    for col in small.columns():
        try:
            b = [R.shift(x, shift) for x in col]
        except GuardError:
            raise
        except LatticeError:
            return False
        x = [R.zero] * big.n
        ok = True
        for r in range(big.n):
            acc = b[r]
            for j in range(r):
                if not (R.is_zero(big.basis[r][j]) or R.is_zero(x[j])):
                    acc = R.add(acc, R.neg(R.mul(big.basis[r][j], x[j])))
            if R.val(acc) < piv[r]:
                ok = False
                break
            x[r] = R.shift(acc, -piv[r])
        if not ok:
            return False
    return True


def index_in(big: Lattice, small: Lattice) -> int:
    """Length of big/small over the residue field (assumes containment)."""
    return small.det_valuation() - big.det_valuation()


def lattice_eq(L1: Lattice, L2: Lattice) -> bool:
    return L1.key() == L2.key()


def triangular_inverse(R: TruncRing, mat, pivs):
    """(shift, C) with mat^{-1} = pi^{-shift} C, C over the ring."""
    n = len(mat)
    m = max(pivs) if pivs else 0
    if m > R.N:
        raise GuardError("inverse needs a shift beyond the guard")
    # solve mat * X = pi^m * I column by column (mat lower triangular)
    X = [[R.zero] * n for _ in range(n)]
    for col in range(n):
        b = [R.pi_pow(m) if i == col else R.zero for i in range(n)]
        for r in range(n):
            acc = b[r]
            for j in range(r):
                if not (R.is_zero(mat[r][j]) or R.is_zero(X[j][col])):
                    acc = R.add(acc, R.neg(R.mul(mat[r][j], X[j][col])))
            if R.val(acc) < pivs[r]:
                raise GuardError("inverse lost precision at the guard")
            X[r][col] = R.shift(acc, -pivs[r])
    return m, X


@dataclass(frozen=True)
class HermSpace:
    """Ambient hermitian space: Gram H (conj-transpose symmetric, unit
    determinant profile) and the semilinear operator tau = A o sigma."""

    ring: TruncRing
    n: int
    gram: tuple
    tau_matrix: tuple

    @staticmethod
    def build(ring: TruncRing, gram, tau_matrix) -> "HermSpace":
        H = [list(r) for r in gram]
        A = [list(r) for r in tau_matrix]
        n = len(H)
        Hct = mat_conj_T(ring, H)
        if any(H[i][j] != Hct[i][j] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix is not hermitian")
        # unitarity of tau: conj(A)^T H A = sigma(H)
        lhs = mat_mul(ring, mat_conj_T(ring, A), mat_mul(ring, H, A))
        rhs = mat_sigma(ring, H)
        if any(lhs[i][j] != rhs[i][j] for i in range(n) for j in range(n)):
            raise LatticeError("tau matrix is not unitary for this Gram")
        return HermSpace(ring, n, tuple(tuple(r) for r in H),
                         tuple(tuple(r) for r in A))

    def herm(self, x, y):
        """h(x, y), conjugate-linear in the first argument."""
        R = self.ring
        acc = R.zero
        for i, xi in enumerate(x):
            if R.is_zero(xi):
                continue
            s = R.zero
            for j, yj in enumerate(y):
                if not (R.is_zero(self.gram[i][j]) or R.is_zero(yj)):
                    s = R.add(s, R.mul(self.gram[i][j], yj))
            acc = R.add(acc, R.mul(R.conj(xi), s))
        return acc

    def tau_vec(self, v):
        R = self.ring
        return mat_vec(R, [list(r) for r in self.tau_matrix], [R.sigma(x) for x in v])

    def tau(self, L: Lattice) -> Lattice:
        R = self.ring
        cols = [tuple(self.tau_vec(list(c))) for c in L.columns()]
        return Lattice.from_columns(R, cols, L.vfloor)


def dual_sharp(space: HermSpace, L: Lattice) -> Lattice:
    """The hermitian dual {v : h(v, L) integral}."""
    R = space.ring
    pivs = list(L.pivot_valuations())
    HB = mat_mul(R, [list(r) for r in space.gram], [list(r) for r in L.basis])
    hnf_pivs, HBn = column_hnf(R, _columns(HB), L.n)
    shift, C = triangular_inverse(R, HBn, hnf_pivs)
    # dual basis = conj((H B)^{-T}): columns of conj(C)^T / pi^shift
    dual_cols = _columns(mat_conj_T(R, C))
    return Lattice.from_columns(R, dual_cols, -L.vfloor - shift)


def vertex_type(space: HermSpace, L: Lattice):
    """dim(L-dual / L) when pi L-dual <= L <= L-dual, else None."""
    Ls = dual_sharp(space, L)
    if not contains(Ls, L):
        return None
    if not contains(L, Ls.scale(1)):
        return None
    return index_in(Ls, L)


def tau_chain(space: HermSpace, M: Lattice):
    """(c, [T_0(M), ..., T_c(M)]) with unit index steps asserted."""
    chain = [M]
    cur = M
    while True:
        nxt = lattice_sum(cur, space.tau(cur))
        if lattice_eq(nxt, cur):
            return len(chain) - 1, chain
        if index_in(nxt, cur) != 1:
            raise LatticeError("chain step has index > 1 (hypothesis violated)")
        chain.append(nxt)
        cur = nxt
        if len(chain) > 4 * space.n + 4:
            raise LatticeError("chain failed to stabilize (bug)")


def check_hypotheses(space: HermSpace, M: Lattice) -> bool:
    """pi M-sharp <= M <= M-sharp and [M + tau M : M] <= 1."""
    Ms = dual_sharp(space, M)
    if not (contains(Ms, M) and contains(M, Ms.scale(1))):
        return False
    s = lattice_sum(M, space.tau(M))
    return index_in(s, M) <= 1


def crucial_dichotomy(space: HermSpace, M: Lattice) -> dict:
    """Evaluate the four dichotomy clauses and audit the conclusions.

    Returns a dict with the decided case ("Y", "Z" or "Both"), the chain
    lengths c and d, the produced vertex lattice types, and ``verified``
    flags for the full containment chains.  A False flag is a
    counterexample report, the most important possible output.
    """
    R = space.ring
    Ms = dual_sharp(space, M)
    h = index_in(Ms, M)
    cond1 = not contains(M, space.tau(Ms.scale(1)))   # tau(pi M#) not in M
    cond2 = not contains(Ms, space.tau(M))            # tau(M) not in M#
    c, chain_m = tau_chain(space, M)
    d, chain_ms = tau_chain(space, Ms)

    def verify_case_y():
        lam = chain_m[-1]
        lam_s = dual_sharp(space, lam)
        ok = (
            contains(Ms.scale(1), lam_s.scale(1))
            and contains(M, Ms.scale(1))
            and contains(lam, M)
            and contains(lam_s, lam)
            and contains(Ms, lam_s)
        )
        t = vertex_type(space, lam)
        return {"lattice": lam.key(), "type": t,
                "ok": ok and t is not None and t <= h}

    def verify_case_z():
        td = chain_ms[-1]
        lam = dual_sharp(space, td)
        ok = (
            contains(td.scale(1), Ms.scale(1))
            and contains(lam, td.scale(1))
            and contains(M, lam)
            and contains(Ms, M)
            and contains(td, Ms)
        )
        t = vertex_type(space, lam)
        return {"lattice": lam.key(), "type": t,
                "ok": ok and t is not None and t >= h}

    if cond1 and cond2:
        case = "anomalous-both-exclusions"
        audits = {"Y": verify_case_y(), "Z": verify_case_z()}
    elif cond1:
        case = "Y"
        audits = {"Y": verify_case_y()}
    elif cond2:
        case = "Z"
        audits = {"Z": verify_case_z()}
    elif c < d:
        case = "Y"
        audits = {"Y": verify_case_y()}
    elif d < c:
        case = "Z"
        audits = {"Z": verify_case_z()}
    else:
        case = "Both"
        audits = {"Y": verify_case_y(), "Z": verify_case_z()}
    return {
        "case": case,
        "c": c,
        "d": d,
        "h": h,
        "audits": audits,
        "verified": all(a["ok"] for a in audits.values()),
    }


# -- residue quotients and induced forms -----------------------------------

def smith_form(R: TruncRing, X, n: int):
    """Diagonalize X by row and column operations; X = Pinv D (col ops).

    Returns (Pinv, diag valuations) where Pinv accumulates the inverses
    of the row operations, so that the columns of B . Pinv adapted to the
    nonzero divisors give a basis of the quotient (B the ambient basis).
    """
    work = [[x for x in row] for row in X]
    m = len(work[0])
    Pinv = mat_identity(R, n)  # updated by right-multiplication with E^{-1}
    divs = []
    for t in range(min(n, m)):
        best = None
        bestv = R.width
        for i in range(t, n):
            for j in range(t, m):
                v = R.val(work[i][j])
                if v < bestv:
                    bestv, best = v, (i, j)
        if best is None or bestv == R.width:
            divs.extend([R.width] * (min(n, m) - t))
            break
        if bestv > R.N:
            raise GuardError("elementary divisor beyond the guard")
        bi, bj = best
        if bi != t:
            work[t], work[bi] = work[bi], work[t]
            for row in Pinv:  # E = E^{-1} = swap: swap columns t, bi
                row[t], row[bi] = row[bi], row[t]
        for row in work:
            row[t], row[bj] = row[bj], row[t]
        unit = R.shift(work[t][t], -bestv)
        uinv = R.unit_inv(unit)
        # scale row t by uinv; E^{-1} scales column t of Pinv by unit
        work[t] = [R.mul(uinv, x) for x in work[t]]
        for row in Pinv:
            row[t] = R.mul(unit, row[t])
        # clear the pivot column with row ops (E = I - q e_{it});
        # E^{-1} = I + q e_{it} adds q * col_i of Pinv to its col_t
        for i in range(n):
            if i == t:
                continue
            x = work[i][t]
            if R.is_zero(x):
                continue
            q = R.shift(x, -bestv)
            for j in range(m):
                work[i][j] = R.add(work[i][j], R.neg(R.mul(q, work[t][j])))
            for row in Pinv:
                row[t] = R.add(row[t], R.mul(q, row[i]))
        # clear the pivot row with column ops (not tracked)
        for j in range(m):
            if j == t:
                continue
            x = work[t][j]
            if R.is_zero(x):
                continue
            q = R.shift(x, -bestv)
            for i in range(n):
                work[i][j] = R.add(work[i][j], R.neg(R.mul(q, work[i][t])))
        divs.append(bestv)
    return Pinv, divs


def quotient_basis(space: HermSpace, big: Lattice, small: Lattice):
    """(vectors, floor): lifts in ``big`` spanning big/small.

    The actual vectors are pi^floor times the returned coefficient
    vectors; only pi-elementary quotients are supported.
    """
    R = space.ring
    # write small = big * X
    shift = small.vfloor - big.vfloor
    pivs = big.pivot_valuations()
    X = []
    for col in small.columns():
        b = [R.shift(x, shift) for x in col]
        xcol = [R.zero] * big.n
        for r in range(big.n):
            acc = b[r]
            for j in range(r):
                if not (R.is_zero(big.basis[r][j]) or R.is_zero(xcol[j])):
                    acc = R.add(acc, R.neg(R.mul(big.basis[r][j], xcol[j])))
            if R.val(acc) < pivs[r]:
                raise LatticeError("not contained")
            xcol[r] = R.shift(acc, -pivs[r])
        X.append(xcol)
    Xmat = _from_columns(X)
    P, divs = smith_form(R, Xmat, big.n)
    out = []
    Bmat = [list(r) for r in big.basis]
    S = mat_mul(R, Bmat, P)
    for i, dv in enumerate(divs):
        if dv == 0:
            continue
        if dv != 1:
            raise LatticeError("quotient is not pi-elementary")
        out.append(tuple(S[r][i] for r in range(big.n)))
    return out, big.vfloor


def _residue(R: TruncRing, h0, pi_offset: int) -> int:
    """Constant residue of pi^pi_offset * h0 with a conjugation sign.

    ``pi_offset`` already carries the floor bookkeeping; an index outside
    the coefficient window means the value lies in pi * (integers).
    """
    idx = -pi_offset
    if idx < 0:
        return 0
    if idx >= R.width:
        raise GuardError("residue index beyond the window")
    return h0[idx]


def induced_forms(space: HermSpace, lam: Lattice):
    """(alternating Gram on dual/lam, symmetric Gram on lam/pi*dual).

    Residues are elements of the coefficient field; both forms are
    checked non-degenerate, the first alternating, the second symmetric.
    """
    R = space.ring
    ctx = R.ctx
    lam_s = dual_sharp(space, lam)
    if vertex_type(space, lam) is None:
        raise LatticeError("induced forms need a vertex lattice")

    def gram_of(vecs, floor, extra_pi):
        # vectors are pi^floor * v0; h(x, y) = (-1)^floor pi^(2 floor) h(x0, y0)
        sign = 1 if floor % 2 == 0 else -1
        rows = []
        for x in vecs:
            row = []
            for y in vecs:
                h0 = space.herm(list(x), list(y))
                res = _residue(R, h0, extra_pi + 2 * floor)
                if sign < 0:
                    res = ctx.neg(res)
                row.append(int(res))
            rows.append(tuple(row))
        return tuple(rows)

    symp_vecs, f1 = quotient_basis(space, lam_s, lam)
    gram1 = gram_of(symp_vecs, f1, extra_pi=1)  # residue of pi * h
    symm_vecs, f2 = quotient_basis(space, lam, lam_s.scale(1))
    gram2 = gram_of(symm_vecs, f2, extra_pi=0)  # residue of h
    for name, g, want in (("alternating", gram1, -1), ("symmetric", gram2, +1)):
        d = len(g)
        for i in range(d):
            for j in range(d):
                expect = g[j][i] if want == 1 else ctx.neg(g[j][i])
                if g[i][j] != expect:
                    raise LatticeError(f"induced form is not {name}")
            if want == -1 and g[i][i] != 0:
                raise LatticeError("induced form is not alternating")
        if d and linalg.rank(ctx, tuple(tuple(r) for r in g)) != d:
            raise LatticeError("induced form is degenerate")
    return gram1, gram2


# -- enumeration of intermediate lattices ----------------------------------

def enumerate_between(space: HermSpace, bot: Lattice, top: Lattice,
                      predicate=None, budget: int = 10**6):
    """All lattices between bot and top (pi-elementary quotient), filtered.

    Intermediate lattices correspond to subspaces of top/bot over the
    coefficient field.
    """
    R = space.ring
    ctx = R.ctx
    vecs, vfloor = quotient_basis(space, top, bot)
    dim = len(vecs)
    total = sum(linalg.gaussian_binomial(dim, d, ctx.size) for d in range(dim + 1))
    if total > budget:
        raise GuardError(f"{total} intermediate lattices exceeds budget {budget}")
    base = min(bot.vfloor, vfloor)
    bot_cols = [tuple(R.shift(x, bot.vfloor - base) for x in c) for c in bot.columns()]
    for d in range(dim + 1):
        for rows in linalg.enumerate_echelon(ctx, dim, d):
            cols = [tuple(R.shift(x, vfloor - base) for x in _combine_vec(R, vecs, row))
                    for row in rows]
            L = Lattice.from_columns(R, bot_cols + cols, base)
            if predicate is None or predicate(L):
                yield L


def _combine_vec(R: TruncRing, vecs, coeffs):
    out = [R.zero] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            cc = R.const(c)
            for i, x in enumerate(v):
                if not R.is_zero(x):
                    out[i] = R.add(out[i], R.mul(cc, x))
    return out


# -- point sets of the stratification ---------------------------------------

def n_point_conditions(space: HermSpace, M: Lattice, h: int) -> bool:
    """Lattice-model point conditions: pi M# <= M <=(h) M#, the pi-window
    around tau, and the unit index jump."""
    R = space.ring
    Ms = dual_sharp(space, M)
    if not (contains(Ms, M) and contains(M, Ms.scale(1))):
        return False
    if index_in(Ms, M) != h:
        return False
    tM = space.tau(M)
    if not (contains(tM, M.scale(1)) and contains(M, tM.scale(1))):
        return False
    return index_in(lattice_sum(M, tM), M) <= 1


def z_set(space: HermSpace, lam: Lattice, h: int, budget: int = 10**6) -> frozenset:
    """Point set of the closed stratum attached to a vertex lattice of
    type >= h: lattices lam <= M with the point conditions."""
    lam_s = dual_sharp(space, lam)
    keys = set()
    for M in enumerate_between(space, lam, lam_s, budget=budget):
        if n_point_conditions(space, M, h):
            keys.add(M.key())
    return frozenset(keys)


def y_set(space: HermSpace, lam: Lattice, h: int, budget: int = 10**6) -> frozenset:
    """Point set of the dual-side stratum attached to a vertex lattice of
    type <= h: lattices pi lam# <= M <= lam with the point conditions."""
    lam_s = dual_sharp(space, lam)
    keys = set()
    for M in enumerate_between(space, lam_s.scale(1), lam, budget=budget):
        if n_point_conditions(space, M, h):
            keys.add(M.key())
    return frozenset(keys)


def vertex_lattices_in_window(space: HermSpace, budget: int = 10**6):
    """Tau-stable vertex lattices between pi L0 and L0-sharp, L0 standard."""
    L0 = standard_lattice(space.ring, space.n)
    top = dual_sharp(space, L0)
    if not contains(top, L0):
        top = L0
    out = []
    for L in enumerate_between(space, top.scale(1), top, budget=budget):
        if vertex_type(space, L) is None:
            continue
        if not lattice_eq(space.tau(L), L):
            continue
        out.append(L)
    return out


# -- instance generation -----------------------------------------------------

def _orthogonal_constants(ctx: FieldCtx, rng: random.Random, n: int):
    """A few constant orthogonal matrices over the coefficient field."""
    mats = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
    # signed permutations
    for _ in range(3):
        perm = list(range(n))
        rng.shuffle(perm)
        signs = [rng.choice([1, ctx.neg(1)]) for _ in range(n)]
        mats.append([[signs[i] if perm[i] == j else 0 for j in range(n)]
                     for i in range(n)])
    # a rotation block a^2 + b^2 = 1 in the first two coordinates
    if n >= 2:
        pairs = [(a, b) for a in range(ctx.size) for b in range(ctx.size)
                 if ctx.add(ctx.mul(a, a), ctx.mul(b, b)) == 1 and b != 0]
        if pairs:
            a, b = pairs[rng.randrange(len(pairs))]
            rot = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            rot[0][0], rot[0][1] = a, b
            rot[1][0], rot[1][1] = ctx.neg(b), a
            mats.append(rot)
    return mats


def tau_generator_set(ring: TruncRing, n: int, seed: int = 0, gram=None):
    """Seeded unitary matrices for the given Gram (identity by default).

    Candidate constants (signed permutations, plane rotations, unit
    diagonals) are filtered by the unitarity identity; the identity
    matrix always survives.
    """
    rng = random.Random(seed)
    ctx = ring.ctx
    if gram is None:
        gram = identity_gram(ring, n)
    cands = _orthogonal_constants(ctx, rng, n)
    for _ in range(4):
        diag = [rng.randrange(1, ctx.size) for _ in range(n)]
        cands.append([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    # paired unit diagonals matching hyperbolic pi-blocks
    for _ in range(2):
        diag = [1] * n
        for b in range(n // 2):
            u = rng.randrange(1, ctx.size)
            diag[2 * b], diag[2 * b + 1] = u, ctx.inv(u)
        cands.append([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    out = []
    seen = set()
    for A0 in cands:
        A = tuple(tuple(ring.const(x) for x in row) for row in A0)
        if A in seen:
            continue
        try:
            HermSpace.build(ring, gram, A)
        except LatticeError:
            continue
        seen.add(A)
        out.append(A)
    if len(out) < 2:
        raise LatticeError("tau generator set is too thin for this Gram")
    return out


def identity_gram(ring: TruncRing, n: int):
    return tuple(tuple(r) for r in mat_identity(ring, n))


def mixed_gram(ring: TruncRing, n: int, pi_blocks: int):
    """pi_blocks hyperbolic pi-blocks [[0, pi], [-pi, 0]] plus a unit tail;
    the standard lattice then is a vertex lattice of type 2*pi_blocks."""
    if 2 * pi_blocks > n:
        raise LatticeError("too many pi blocks")
    H = mat_identity(ring, n)
    for b in range(pi_blocks):
        i = 2 * b
        H[i][i] = ring.zero
        H[i + 1][i + 1] = ring.zero
        H[i][i + 1] = ring.pi_pow(1)
        H[i + 1][i] = ring.neg(ring.pi_pow(1))
    return tuple(tuple(r) for r in H)


def gram_family(ring: TruncRing, n: int):
    """The ambient Gram matrices used by the instance generators."""
    return [mixed_gram(ring, n, b) for b in range(n // 2 + 1)]


def random_instance(space: HermSpace, rng: random.Random):
    """One random hypothesis-candidate lattice in [pi L0-sharp, L0-sharp]."""
    R = space.ring
    L0 = standard_lattice(R, space.n)
    top = dual_sharp(space, L0)
    bot = top.scale(1)
    vecs, vfloor = quotient_basis(space, top, bot)
    dim = len(vecs)
    d = rng.randrange(0, dim + 1)
    base = min(bot.vfloor, vfloor)
    cols = [tuple(R.shift(x, bot.vfloor - base) for x in c) for c in bot.columns()]
    for _ in range(d):
        coeffs = [rng.randrange(R.ctx.size) for _ in range(dim)]
        cols.append(tuple(R.shift(x, vfloor - base)
                          for x in _combine_vec(R, vecs, coeffs)))
    return Lattice.from_columns(R, cols, base)


def exhaustive_dichotomy(p: int, e: int, s: int, n: int = 2, seed: int = 0,
                         N: int = 8, budget: int = 10**6) -> dict:
    """Audit every lattice between pi L0-sharp and L0-sharp for every tau
    in the generator set.  Instances failing the hypotheses are skipped;
    guard trips count as inconclusive; any failed audit is recorded."""
    ctx = FieldCtx(p, e, s)
    ring = TruncRing(ctx, N)
    stats = {"instances": 0, "hypothesis_rejected": 0, "case_Y": 0, "case_Z": 0,
             "case_Both": 0, "anomalous": 0, "inconclusive": 0,
             "same_index_failures": 0, "counterexamples": []}
    for H in gram_family(ring, n):
        for A in tau_generator_set(ring, n, seed, H):
            space = HermSpace.build(ring, H, A)
            L0 = standard_lattice(ring, n)
            top = dual_sharp(space, L0)
            for M in enumerate_between(space, top.scale(1), top, budget=budget):
                stats["instances"] += 1
                try:
                    if not check_hypotheses(space, M):
                        stats["hypothesis_rejected"] += 1
                        continue
                    if not same_index_lemma_holds(space, M):
                        stats["same_index_failures"] += 1
                    res = crucial_dichotomy(space, M)
                except GuardError:
                    stats["inconclusive"] += 1
                    continue
                key = {"Y": "case_Y", "Z": "case_Z", "Both": "case_Both"}.get(
                    res["case"], "anomalous")
                stats[key] += 1
                if not res["verified"]:
                    stats["counterexamples"].append({
                        "lattice": M.key(), "result": res["case"],
                        "c": res["c"], "d": res["d"],
                    })
    return stats


def same_index_lemma_holds(space: HermSpace, M: Lattice) -> bool:
    """[M + tau M : M] = 1 implies [M# + tau M# : M#] = 1."""
    left = index_in(lattice_sum(M, space.tau(M)), M)
    if left != 1:
        return True
    Ms = dual_sharp(space, M)
    return index_in(lattice_sum(Ms, space.tau(Ms)), Ms) == 1


def inclusion_report(p: int, e: int, s: int, n: int, h: int, seed: int = 0,
                     N: int = 8, budget: int = 10**6) -> dict:
    """Check the five stratum inclusion bullets on an enumerated catalog.

    The catalog holds the tau-stable vertex lattices between pi L0 and
    L0-sharp for the identity Gram; point sets are computed over the
    coefficient field kappa = GF(q^s).
    """
    ctx = FieldCtx(p, e, s)
    ring = TruncRing(ctx, N)
    space = HermSpace.build(ring, identity_gram(ring, n),
                            tau_generator_set(ring, n, seed)[1])
    catalog = vertex_lattices_in_window(space, budget=budget)
    types = {L.key(): vertex_type(space, L) for L in catalog}
    zs = {L.key(): z_set(space, L, h, budget=budget)
          for L in catalog if types[L.key()] >= h}
    ys = {L.key(): y_set(space, L, h, budget=budget)
          for L in catalog if types[L.key()] <= h}
    checks = []

    def bullet(name, ok_pairs, bad_pairs):
        checks.append({
            "name": name,
            "status": "pass" if not bad_pairs else "fail",
            "data": {"pairs": ok_pairs},
            **({"witness": bad_pairs[:3]} if bad_pairs else {}),
        })

    zl = [L for L in catalog if types[L.key()] >= h]
    yl = [L for L in catalog if types[L.key()] <= h]
    bad, okc = [], 0
    for L1 in zl:
        for L2 in zl:
            inc_sets = zs[L1.key()] <= zs[L2.key()]
            inc_lat = contains(L1, L2)
            if inc_sets != inc_lat:
                bad.append((types[L1.key()], types[L2.key()]))
            else:
                okc += 1
    bullet("z_inclusion_iff_reverse_lattice_inclusion", okc, bad)
    bad, okc = [], 0
    for L1 in yl:
        for L2 in yl:
            inc_sets = ys[L1.key()] <= ys[L2.key()]
            inc_lat = contains(L2, L1)
            if inc_sets != inc_lat:
                bad.append((types[L1.key()], types[L2.key()]))
            else:
                okc += 1
    bullet("y_inclusion_iff_lattice_inclusion", okc, bad)
    bad, okc = [], 0
    for L1 in zl:
        for L2 in yl:
            meets = bool(zs[L1.key()] & ys[L2.key()])
            inc_lat = contains(L2, L1)
            if meets != inc_lat:
                bad.append((types[L1.key()], types[L2.key()]))
            else:
                okc += 1
    bullet("z_meets_y_iff_lattice_inclusion", okc, bad)
    # In the lattice model both one-sided containments require the small
    # lattice inside the big one (the printed statements reverse this,
    # which would contradict the intersection bullet).
    bad, okc = [], 0
    for L1 in zl:
        for L2 in yl:
            inc_sets = zs[L1.key()] <= ys[L2.key()]
            pred = types[L1.key()] == h and contains(L2, L1)
            if inc_sets != pred:
                bad.append((types[L1.key()], types[L2.key()]))
            else:
                okc += 1
    bullet("z_in_y_iff_worst_type_and_inclusion", okc, bad)
    bad, okc = [], 0
    for L1 in zl:
        for L2 in yl:
            inc_sets = ys[L2.key()] <= zs[L1.key()]
            pred = types[L2.key()] == h and contains(L2, L1)
            if inc_sets != pred:
                bad.append((types[L1.key()], types[L2.key()]))
            else:
                okc += 1
    bullet("y_in_z_iff_worst_type_and_inclusion", okc, bad)
    singles = [L for L in catalog if types[L.key()] == h]
    bad = [types[L.key()] for L in singles
           if zs[L.key()] != frozenset({L.key()}) or ys[L.key()] != frozenset({L.key()})]
    checks.append({
        "name": "worst_points_are_singletons",
        "status": "pass" if not bad and singles else ("inconclusive" if not singles else "fail"),
        "data": {"worst_points": len(singles)},
    })
    return {
        "config": {"p": p, "e": e, "s": s, "n": n, "h": h, "N": N},
        "counts": [{"label": f"type_{t}", "count": c}
                   for t, c in sorted(Counter(types.values()).items())],
        "checks": checks,
    }


def dichotomy_trials(p: int, e: int, s: int, n: int, trials: int, seed: int = 0,
                     N: int = 8) -> dict:
    """Seeded random dichotomy audit; returns counters and counterexamples."""
    ctx = FieldCtx(p, e, s)
    ring = TruncRing(ctx, N)
    rng = random.Random(seed)
    spaces = []
    for H in gram_family(ring, n):
        for A in tau_generator_set(ring, n, seed, H):
            spaces.append(HermSpace.build(ring, H, A))
    stats = {"trials": 0, "hypothesis_rejected": 0, "case_Y": 0, "case_Z": 0,
             "case_Both": 0, "anomalous": 0, "inconclusive": 0,
             "same_index_failures": 0, "counterexamples": []}
    for _ in range(trials):
        stats["trials"] += 1
        space = spaces[rng.randrange(len(spaces))]
        try:
            M = random_instance(space, rng)
            if not check_hypotheses(space, M):
                stats["hypothesis_rejected"] += 1
                continue
            if not same_index_lemma_holds(space, M):
                stats["same_index_failures"] += 1
            res = crucial_dichotomy(space, M)
        except GuardError:
            stats["inconclusive"] += 1
            continue
        key = {"Y": "case_Y", "Z": "case_Z", "Both": "case_Both"}.get(res["case"], "anomalous")
        stats[key] += 1
        if not res["verified"]:
            stats["counterexamples"].append({
                "tau": [[list(x) for x in row] for row in space.tau_matrix],
                "lattice": [list(map(list, r)) for r in M.basis],
                "vfloor": M.vfloor,
                "result": {k: v for k, v in res.items() if k != "audits"},
            })
    return stats
