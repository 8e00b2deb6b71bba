"""Polynomial-matrix kernel: Smith form with transformers, column reduction,
reversal, Mobius frames, minor enumeration, and the minimal-basis test.

All operations are pure; matrices are immutable value objects. Pivoting rules
are deterministic (minimal degree, then smallest (row, col) lexicographically)
so identical inputs always produce identical transformers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    DegreeMismatch,
    DegreeTooSmall,
    KOutOfRange,
    RankDeficient,
    ZeroMatrix,
)
from .qpoly import NEG_INF, ONE, ZERO, Poly, as_fraction


class PolyMatrix:
    """Dense matrix of Poly entries."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows: Sequence[Sequence[Poly]], n: int | None = None):
        rows = tuple(tuple(e for e in row) for row in rows)
        m = len(rows)
        if m:
            n = len(rows[0])
            if any(len(r) != n for r in rows):
                raise ValueError("ragged rows")
        elif n is None:
            n = 0
        for row in rows:
            for e in row:
                if not isinstance(e, Poly):
                    raise TypeError("entries must be Poly")
        self.m, self.n, self.rows = m, n, rows

    # -- constructors --------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(m: int, n: int) -> "PolyMatrix":
        return PolyMatrix([[ZERO] * n for _ in range(m)], n=n)

    @staticmethod
    def from_scalar_rows(rows) -> "PolyMatrix":
        """Build from rows of ints/Fractions/Polys/coefficient lists."""
        out = []
        for row in rows:
            conv = []
            for e in row:
                if isinstance(e, Poly):
                    conv.append(e)
                elif isinstance(e, (list, tuple)):
                    conv.append(Poly(e))
                else:
                    conv.append(Poly.constant(e))
            out.append(conv)
        return PolyMatrix(out)

    # -- queries ---------------------------------------------------------

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    @property
    def degree(self):
        """Max entry degree; NEG_INF for a zero (or empty) matrix."""
        degs = [e.degree for row in self.rows for e in row]
        return max(degs, default=NEG_INF)

    def col(self, j: int):
        return tuple(self.rows[i][j] for i in range(self.m))

    def col_degree(self, j: int):
        return max((self.rows[i][j].degree for i in range(self.m)), default=NEG_INF)

    def column_degrees(self):
        return tuple(self.col_degree(j) for j in range(self.n))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)],
            n=self.m,
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            [[self.rows[i][j] for j in col_idx] for i in row_idx], n=len(col_idx)
        )

    def eval_at(self, x) -> tuple:
        x = as_fraction(x)
        return tuple(tuple(e(x) for e in row) for row in self.rows)

    def map_entries(self, fn: Callable[[Poly], Poly]) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.rows], n=self.n)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.m)
            ],
            n=self.n,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(Poly.constant(-1))

    def scale(self, p: Poly) -> "PolyMatrix":
        return self.map_entries(lambda e: e * p)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.n != other.m:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.m):
            row = []
            for j in range(other.n):
                acc = ZERO
                for t in range(self.n):
                    a = self.rows[i][t]
                    if a.is_zero:
                        continue
                    b = other.rows[t][j]
                    if b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, n=other.n)

    @staticmethod
    def hstack(a: "PolyMatrix", b: "PolyMatrix") -> "PolyMatrix":
        if a.m != b.m:
            raise ValueError("row count mismatch")
        return PolyMatrix(
            [list(a.rows[i]) + list(b.rows[i]) for i in range(a.m)], n=a.n + b.n
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and (self.m, self.n) == (other.m, other.n)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.m, self.n, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"PolyMatrix({self.m}x{self.n}: [{body}])"


# -- determinants, rank -----------------------------------------------------


def _det_cofactor(rows) -> Poly:
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ZERO
    for i in range(n):
        e = rows[i][0]
        if e.is_zero:
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = e * _det_cofactor(minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def _exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod(a, b)
    assert r.is_zero, "fraction-free elimination produced a nonzero remainder"
    return q


def _bareiss(rows, need_det: bool):
    """Fraction-free elimination; returns (rank, det-or-None).

    Pivot rule: minimal-degree nonzero entry of the trailing block, ties to
    the smallest (row, col).
    """
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    denom = ONE
    sign = 1
    k = 0
    while k < min(m, n):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                e = M[i][j]
                if not e.is_zero and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                M[i][j] = _exact_div(M[i][j] * piv - M[i][k] * M[k][j], denom)
            M[i][k] = ZERO
        denom = piv
        k += 1
    if not need_det:
        return k, None
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    det = M[n - 1][n - 1] if k == n else ZERO
    if sign < 0:
        det = -det
    return k, det


def det(P: PolyMatrix) -> Poly:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss above."""
    if not P.is_square:
        raise ValueError("determinant of a non-square matrix")
    if P.n <= 4:
        return _det_cofactor([list(r) for r in P.rows])
    return _bareiss(P.rows, need_det=True)[1]


def rank(P: PolyMatrix) -> int:
    if P.m == 0 or P.n == 0:
        return 0
    return _bareiss(P.rows, need_det=False)[0]


def is_unimodular(P: PolyMatrix) -> bool:
    """Square with constant nonzero determinant."""
    if not P.is_square:
        return False
    d = det(P)
    return d.degree == 0


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """left @ P @ right equals diag(diag) padded with zeros.

    left_inv and right_inv are the exact inverses of the transformers,
    maintained during elimination.
    """

    left: PolyMatrix
    diag: tuple
    right: PolyMatrix
    rank: int
    left_inv: PolyMatrix
    right_inv: PolyMatrix

    def padded_diag(self, m: int, n: int) -> PolyMatrix:
        rows = [[ZERO] * n for _ in range(m)]
        for i, a in enumerate(self.diag):
            rows[i][i] = a
        return PolyMatrix(rows, n=n)


def _find_pivot(S, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            e = S[i][j]
            if not e.is_zero and (best is None or e.degree < best[0]):
                best = (e.degree, i, j)
    return best


def _content_scale(polys) -> Fraction:
    """Scale factor turning the coefficients into integers with gcd 1.

    Keeps coefficient growth in check during elimination; scaling a row or
    column is a unimodular operation.
    """
    from math import gcd as igcd, lcm as ilcm

    num_gcd = 0
    den_lcm = 1
    for p in polys:
        for co in p.coeffs:
            num_gcd = igcd(num_gcd, abs(co.numerator))
            den_lcm = ilcm(den_lcm, co.denominator)
    if num_gcd in (0, den_lcm):
        return Fraction(1)
    return Fraction(den_lcm, num_gcd)


def _ext_gcd(a: Poly, b: Poly):
    """Monic g with x*a + y*b = g; remainders kept monic to limit growth."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero:
        q, r2 = divmod(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
        if not r1.is_zero and r1.lc != 1:
            inv = 1 / r1.lc
            r1, s1, t1 = r1.scale(inv), s1.scale(inv), t1.scale(inv)
    if r0.lc != 1:
        inv = 1 / r0.lc
        r0, s0, t0 = r0.scale(inv), s0.scale(inv), t0.scale(inv)
    return r0, s0, t0


def smith_form(P: PolyMatrix) -> SmithDecomposition:
    """Smith normal form over Q[s] with unimodular transformers and inverses.

    Entries are cleared with single-shot Bezout block transforms instead of
    iterated remainder steps, and rows/columns are rescaled to primitive
    integer form after every operation, which keeps coefficients tame.
    """
    m, n = P.m, P.n
    S = [list(row) for row in P.rows]
    U = [list(row) for row in PolyMatrix.identity(m).rows]
    Ui = [list(row) for row in PolyMatrix.identity(m).rows]
    V = [list(row) for row in PolyMatrix.identity(n).rows]
    Vi = [list(row) for row in PolyMatrix.identity(n).rows]

    def swap_rows(a, b):
        if a == b:
            return
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]
        for row in Ui:
            row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        if a == b:
            return
        for row in S:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def row_sub(i, t, q):
        # row_i -= q * row_t on S and U; inverse op on Ui columns
        for j in range(n):
            if not S[t][j].is_zero:
                S[i][j] = S[i][j] - q * S[t][j]
        for j in range(m):
            if not U[t][j].is_zero:
                U[i][j] = U[i][j] - q * U[t][j]
        for row in Ui:
            if not row[i].is_zero:
                row[t] = row[t] + q * row[i]

    def block_rows(t, i, xx, yy, u, v):
        # [row_t; row_i] <- [[xx, yy], [-v, u]] @ [row_t; row_i], det 1
        for j in range(n):
            a, b = S[t][j], S[i][j]
            S[t][j] = xx * a + yy * b
            S[i][j] = u * b - v * a
        for j in range(m):
            a, b = U[t][j], U[i][j]
            U[t][j] = xx * a + yy * b
            U[i][j] = u * b - v * a
        for row in Ui:
            a, b = row[t], row[i]
            row[t] = u * a + v * b
            row[i] = xx * b - yy * a

    def col_sub(j, t, q):
        # col_j -= q * col_t on S and V; inverse op on Vi rows
        for i in range(m):
            if not S[i][t].is_zero:
                S[i][j] = S[i][j] - q * S[i][t]
        for i in range(n):
            if not V[i][t].is_zero:
                V[i][j] = V[i][j] - q * V[i][t]
        for jj in range(n):
            if not Vi[j][jj].is_zero:
                Vi[t][jj] = Vi[t][jj] + q * Vi[j][jj]

    def block_cols(t, j, xx, yy, u, v):
        # [col_t, col_j] <- [col_t, col_j] @ [[xx, -v], [yy, u]], det 1
        for i in range(m):
            a, b = S[i][t], S[i][j]
            S[i][t] = a * xx + b * yy
            S[i][j] = b * u - a * v
        for i in range(n):
            a, b = V[i][t], V[i][j]
            V[i][t] = a * xx + b * yy
            V[i][j] = b * u - a * v
        for jj in range(n):
            a, b = Vi[t][jj], Vi[j][jj]
            Vi[t][jj] = u * a + v * b
            Vi[j][jj] = xx * b - yy * a

    def row_add(t, i):
        minus_one = Poly.constant(-1)
        row_sub(t, i, minus_one)

    def scale_row(t, c: Fraction):
        for j in range(n):
            S[t][j] = S[t][j].scale(c)
        for j in range(m):
            U[t][j] = U[t][j].scale(c)
        inv = 1 / c
        for row in Ui:
            row[t] = row[t].scale(inv)

    def scale_col(t, c: Fraction):
        for i in range(m):
            S[i][t] = S[i][t].scale(c)
        for i in range(n):
            V[i][t] = V[i][t].scale(c)
        inv = 1 / c
        for j in range(n):
            Vi[t][j] = Vi[t][j].scale(inv)

    def normalize_row(i):
        c = _content_scale(S[i])
        if c != 1:
            scale_row(i, c)

    def normalize_col(j):
        c = _content_scale([S[i][j] for i in range(m)])
        if c != 1:
            scale_col(j, c)

    def clear_column(t) -> bool:
        touched = False
        for i in range(t + 1, m):
            b = S[i][t]
            if b.is_zero:
                continue
            touched = True
            a = S[t][t]
            q, rem = divmod(b, a)
            if rem.is_zero:
                row_sub(i, t, q)
            else:
                g, xx, yy = _ext_gcd(a, b)
                block_rows(t, i, xx, yy, a // g, b // g)
                normalize_row(t)
            normalize_row(i)
        return touched

    def clear_row(t) -> bool:
        touched = False
        for j in range(t + 1, n):
            b = S[t][j]
            if b.is_zero:
                continue
            touched = True
            a = S[t][t]
            q, rem = divmod(b, a)
            if rem.is_zero:
                col_sub(j, t, q)
            else:
                g, xx, yy = _ext_gcd(a, b)
                block_cols(t, j, xx, yy, a // g, b // g)
                normalize_col(t)
            normalize_col(j)
        return touched

    for i in range(m):
        normalize_row(i)
    for j in range(n):
        normalize_col(j)

    t = 0
    while t < min(m, n):
        piv = _find_pivot(S, t, m, n)
        if piv is None:
            break
        swap_rows(t, piv[1])
        swap_cols(t, piv[2])
        while True:
            clear_column(t)
            clear_row(t)
            if any(not S[i][t].is_zero for i in range(t + 1, m)):
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not (S[i][j] % S[t][t]).is_zero:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad)
            normalize_row(t)
        lc = S[t][t].lc
        if lc != 1:
            scale_row(t, 1 / lc)
        t += 1

    diag = tuple(S[i][i] for i in range(t))
    return SmithDecomposition(
        left=PolyMatrix(U, n=m),
        diag=diag,
        right=PolyMatrix(V, n=n),
        rank=t,
        left_inv=PolyMatrix(Ui, n=m),
        right_inv=PolyMatrix(Vi, n=n),
    )


# -- minors ------------------------------------------------------------------


def _iter_minors(P: PolyMatrix, k: int):
    for rows_idx in itertools.combinations(range(P.m), k):
        for cols_idx in itertools.combinations(range(P.n), k):
            yield det(P.submatrix(rows_idx, cols_idx))


def gcd_minors_oracle(P: PolyMatrix, k: int) -> Poly:
    """Monic gcd of all order-k minors; equals the product of the first k
    invariant factors."""
    from .qpoly import poly_gcd

    r = rank(P)
    if not 1 <= k <= r:
        raise KOutOfRange(f"k={k} outside 1..rank={r}")
    acc = ZERO
    for mnr in _iter_minors(P, k):
        if mnr.is_zero:
            continue
        acc = mnr.monic() if acc.is_zero else poly_gcd(acc, mnr)
        if acc == ONE:
            return ONE
    return acc.monic()


def max_minor_degree(P: PolyMatrix, k: int) -> int:
    """Max degree over all order-k minors, exhaustively enumerated."""
    r = rank(P)
    if not 1 <= k <= r:
        raise KOutOfRange(f"k={k} outside 1..rank={r}")
    best = NEG_INF
    for mnr in _iter_minors(P, k):
        if mnr.degree > best:
            best = mnr.degree
    return best


# -- constant-matrix helpers (over Q) ----------------------------------------


def _frac_rref(rows):
    """Reduced row echelon form over Q; returns (rref rows, pivot cols)."""
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def _frac_rank(rows) -> int:
    return len(_frac_rref(rows)[1])


def _frac_kernel_vectors(rows, n: int):
    """Kernel basis vectors over Q, one per free column, in column order."""
    M, pivots = _frac_rref(rows)
    pivset = set(pivots)
    out = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][free]
        out.append(v)
    return out


def highest_col_coeff_matrix(P: PolyMatrix):
    """Rows of constants: entry (i, j) is the coefficient of s^(col degree j)."""
    degs = P.column_degrees()
    out = []
    for i in range(P.m):
        row = []
        for j in range(P.n):
            d = degs[j]
            row.append(P.rows[i][j].coeff(int(d)) if d != NEG_INF else Fraction(0))
        out.append(row)
    return out, degs


# -- column reduction ---------------------------------------------------------


@dataclass(frozen=True)
class ColumnReduction:
    reduced: PolyMatrix
    right_transform: PolyMatrix
    column_degrees: tuple


def column_reduce(P: PolyMatrix) -> ColumnReduction:
    """Wolovich column reduction of a full-column-rank matrix.

    Repeatedly cancels leading-coefficient dependencies with monomial column
    replacements; ties break toward the rightmost reducible column.
    """
    if P.n == 0:
        return ColumnReduction(P, PolyMatrix.identity(0), ())
    if rank(P) < P.n:
        raise RankDeficient("column reduction requires full column rank")
    cols = [list(P.col(j)) for j in range(P.n)]
    V = [list(row) for row in PolyMatrix.identity(P.n).rows]
    while True:
        degs = [max((e.degree for e in c), default=NEG_INF) for c in cols]
        ph_rows = [
            [cols[j][i].coeff(int(degs[j])) for j in range(P.n)] for i in range(P.m)
        ]
        kernel = _frac_kernel_vectors(ph_rows, P.n)
        if not kernel:
            break
        c = kernel[-1]
        support = [j for j in range(P.n) if c[j] != 0]
        dmax = max(degs[j] for j in support)
        j0 = max(j for j in support if degs[j] == dmax)
        inv = 1 / c[j0]
        new_col = [ZERO] * P.m
        new_vcol = [ZERO] * P.n
        for j in support:
            mono = Poly.monomial(c[j] * inv, int(dmax - degs[j]))
            for i in range(P.m):
                new_col[i] = new_col[i] + mono * cols[j][i]
            for i in range(P.n):
                new_vcol[i] = new_vcol[i] + mono * V[i][j]
        rescale = _content_scale(new_col)
        for i in range(P.m):
            cols[j0][i] = new_col[i].scale(rescale)
        for i in range(P.n):
            V[i][j0] = new_vcol[i].scale(rescale)
    reduced = PolyMatrix(
        [[cols[j][i] for j in range(P.n)] for i in range(P.m)], n=P.n
    )
    degs = reduced.column_degrees()
    return ColumnReduction(reduced, PolyMatrix(V, n=P.n), degs)


def is_column_proper(P: PolyMatrix) -> bool:
    """True when the highest-column-degree coefficient matrix has full rank."""
    if P.n == 0:
        return True
    if any(d == NEG_INF for d in P.column_degrees()):
        return False
    ph, _ = highest_col_coeff_matrix(P)
    return _frac_rank(ph) == min(P.m, P.n)


def is_minimal_basis(K: PolyMatrix):
    """Minimal-basis test: trivial Smith form plus column properness.

    Returns (flag, column_degrees); the degrees are reported regardless of
    the flag.
    """
    degs = K.column_degrees()
    if K.n == 0:
        return True, degs
    if K.m < K.n:
        return False, degs
    sm = smith_form(K)
    if sm.rank != K.n or any(a != ONE for a in sm.diag):
        return False, degs
    return is_column_proper(K), degs


# -- reversal and Mobius frames ----------------------------------------------


def reversal(P: PolyMatrix) -> PolyMatrix:
    """rev P(t) = t^d P(1/t) with d the matrix degree."""
    if P.is_zero:
        raise ZeroMatrix("reversal of the zero matrix")
    d = int(P.degree)

    def rev_entry(e: Poly) -> Poly:
        out = [Fraction(0)] * (d + 1)
        for k, c in enumerate(e.coeffs):
            out[d - k] = c
        return Poly(out)

    return P.map_entries(rev_entry)


def mobius_frame(P: PolyMatrix, a, d: int) -> PolyMatrix:
    """(s - a)^d P(1/(s - a)): writing P = sum P_j s^j, returns
    sum P_j (s - a)^(d - j)."""
    a = as_fraction(a)
    if d < (P.degree if not P.is_zero else 0):
        raise DegreeTooSmall(f"frame degree {d} below matrix degree {P.degree}")
    lin = Poly((-a, 1))
    powers = [ONE]
    for _ in range(d):
        powers.append(powers[-1] * lin)

    def frame_entry(e: Poly) -> Poly:
        acc = ZERO
        for j, c in enumerate(e.coeffs):
            if c:
                acc = acc + powers[d - j].scale(c)
        return acc

    return P.map_entries(frame_entry)


def scale_basis_mobius(K: PolyMatrix, a, degs: Sequence[int]) -> PolyMatrix:
    """Column-wise K(1/s + a) * diag(s^deg): maps a minimal basis to a minimal
    basis with the same column degrees."""
    a = as_fraction(a)
    if len(degs) != K.n:
        raise DegreeMismatch("one degree per column required")
    for j, dj in enumerate(degs):
        if K.col_degree(j) != dj:
            raise DegreeMismatch(
                f"column {j} has degree {K.col_degree(j)}, stated {dj}"
            )
    cols = []
    for j in range(K.n):
        dj = int(degs[j])
        col = []
        for i in range(K.m):
            e = K.rows[i][j]
            if e.is_zero:
                col.append(ZERO)
                continue
            shifted = e.shift(a)  # e in the (s - a) basis
            deg_e = len(e.coeffs) - 1
            rev = [Fraction(0)] * (deg_e + 1)
            for t, c in enumerate(shifted.coeffs):
                rev[deg_e - t] = c
            col.append(Poly(rev) * Poly.monomial(1, dj - deg_e))
        cols.append(col)
    return PolyMatrix(
        [[cols[j][i] for j in range(K.n)] for i in range(K.m)], n=K.n
    )
