"""Structural data of polynomial and rational matrices.

Extracts invariant factors / invariant rational functions, the infinite
structure, and minimal bases plus indices of all four fundamental subspaces.
The index-sum and dual-sum identities are asserted on every extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ShapeMismatch, ZeroMatrix
from .qpoly import ONE, ZERO, RatFn, poly_lcm, root_multiplicity
from .polymat import (
    PolyMatrix,
    column_reduce,
    is_unimodular,
    reversal,
    smith_form,
)

SUBSPACES = ("colspan", "rowspan", "rightnull", "leftnull")


@dataclass(frozen=True)
class PolyStructuralData:
    m: int
    n: int
    rank: int
    degree: int
    invariant_factors: tuple
    inf_partial_mults: tuple  # f_1 <= ... <= f_r, f_1 = 0
    inf_orders: tuple  # q_i = f_i - degree
    colspan_indices: tuple  # descending
    rowspan_indices: tuple
    right_indices: tuple
    left_indices: tuple
    colspan_basis: PolyMatrix  # m x r
    rowspan_basis: PolyMatrix  # n x r (columns span the row space)
    right_null_basis: PolyMatrix  # n x (n - r)
    left_null_basis: PolyMatrix  # m x (m - r)


class RationalMatrix:
    """Dense matrix of rational functions."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows: Sequence[Sequence[RatFn]], n: int | None = None):
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
                if not isinstance(e, RatFn):
                    raise TypeError("entries must be RatFn")
        self.m, self.n, self.rows = m, n, rows

    @staticmethod
    def from_poly_matrix(P: PolyMatrix) -> "RationalMatrix":
        return RationalMatrix(
            [[RatFn.from_poly(e) for e in row] for row in P.rows], n=P.n
        )

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    @property
    def is_polynomial(self) -> bool:
        return all(e.is_polynomial for row in self.rows for e in row)

    def __getitem__(self, ij) -> RatFn:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and (self.m, self.n) == (other.m, other.n)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"RationalMatrix({self.m}x{self.n}: [{body}])"


@dataclass(frozen=True)
class RatStructuralData:
    m: int
    n: int
    rank: int
    numerators: tuple  # eps_1 | ... | eps_r
    denominators: tuple  # psi_r | ... | psi_1
    inf_orders: tuple  # q_1 <= ... <= q_r
    colspan_indices: tuple
    rowspan_indices: tuple
    right_indices: tuple
    left_indices: tuple
    colspan_basis: PolyMatrix
    rowspan_basis: PolyMatrix
    right_null_basis: PolyMatrix
    left_null_basis: PolyMatrix


# -- pieces -------------------------------------------------------------------


def partial_multiplicities(P: PolyMatrix, lam) -> tuple:
    """Valuations of the invariant factors at a rational point, ascending."""
    sm = smith_form(P)
    if sm.rank == 0:
        raise ZeroMatrix("partial multiplicities of the zero matrix")
    return tuple(root_multiplicity(a, lam) for a in sm.diag)


def inf_structure(P: PolyMatrix):
    """(degree, partial multiplicities of infinity, invariant orders)."""
    if P.is_zero:
        raise ZeroMatrix("infinite structure of the zero matrix")
    d = int(P.degree)
    f = partial_multiplicities(reversal(P), 0)
    assert f[0] == 0, "smallest partial multiplicity of infinity must vanish"
    q = tuple(fi - d for fi in f)
    return d, f, q


def _normalize_basis(B: PolyMatrix) -> tuple:
    """Column-reduce, scale leading vectors to a 1 pivot, sort columns.

    Returns (basis, indices descending). Normalization makes golden tests
    deterministic; spans and degrees are what the theory pins down.
    """
    if B.n == 0:
        return B, ()
    red = column_reduce(B).reduced
    cols = []
    for j in range(red.n):
        col = [red.rows[i][j] for i in range(red.m)]
        d = max(e.degree for e in col)
        lead = next(e.coeff(int(d)) for e in col if e.coeff(int(d)) != 0)
        col = [e.scale(1 / lead) for e in col]
        pivot = next(i for i, e in enumerate(col) if not e.is_zero)
        key = tuple(e.coeffs for e in col)
        cols.append((-int(d), pivot, key, col, int(d)))
    cols.sort(key=lambda t: (t[0], t[1], t[2]))
    basis = PolyMatrix(
        [[c[3][i] for c in cols] for i in range(red.m)], n=red.n
    )
    return basis, tuple(c[4] for c in cols)


def subspace_minimal_basis(P: PolyMatrix, which: str):
    """Minimal basis and indices (descending) of one fundamental subspace.

    Routes through the Smith transformers: span bases from the inverse
    transformers, null bases from the trailing transformer columns.
    """
    if which not in SUBSPACES:
        raise ValueError(f"unknown subspace {which!r}")
    if P.is_zero:
        raise ZeroMatrix("subspaces of the zero matrix are not extracted")
    sm = smith_form(P)
    r = sm.rank
    if which == "colspan":
        raw = sm.left_inv.submatrix(range(P.m), range(r))
    elif which == "rowspan":
        raw = sm.right_inv.submatrix(range(r), range(P.n)).transpose()
    elif which == "rightnull":
        raw = sm.right.submatrix(range(P.n), range(r, P.n))
    else:  # leftnull
        raw = sm.left.submatrix(range(r, P.m), range(P.m)).transpose()
    return _normalize_basis(raw)


def extract_poly_structure(P: PolyMatrix) -> PolyStructuralData:
    """Full structural data; every sum identity is asserted before returning."""
    if P.is_zero:
        raise ZeroMatrix("structural data of the zero matrix")
    sm = smith_form(P)
    r = sm.rank
    d, f, q = inf_structure(P)

    col_basis, k_idx = _normalize_basis(sm.left_inv.submatrix(range(P.m), range(r)))
    row_basis, l_idx = _normalize_basis(
        sm.right_inv.submatrix(range(r), range(P.n)).transpose()
    )
    rnull_basis, d_idx = _normalize_basis(
        sm.right.submatrix(range(P.n), range(r, P.n))
    )
    lnull_basis, v_idx = _normalize_basis(
        sm.left.submatrix(range(r, P.m), range(P.m)).transpose()
    )

    deg_alpha = sum(int(a.degree) for a in sm.diag)
    assert sum(v_idx) == sum(k_idx), "left-null/col-span sums must agree"
    assert sum(d_idx) == sum(l_idx), "right-null/row-span sums must agree"
    assert sum(k_idx) + sum(l_idx) + sum(f) + deg_alpha == r * d, (
        "span index sum identity failed"
    )
    assert sum(d_idx) + sum(v_idx) + sum(f) + deg_alpha == r * d, (
        "index sum theorem failed"
    )

    return PolyStructuralData(
        m=P.m,
        n=P.n,
        rank=r,
        degree=d,
        invariant_factors=sm.diag,
        inf_partial_mults=f,
        inf_orders=q,
        colspan_indices=k_idx,
        rowspan_indices=l_idx,
        right_indices=d_idx,
        left_indices=v_idx,
        colspan_basis=col_basis,
        rowspan_basis=row_basis,
        right_null_basis=rnull_basis,
        left_null_basis=lnull_basis,
    )


def clear_denominators(R: RationalMatrix):
    """(psi1, P): monic least common denominator and the polynomial psi1 * R."""
    if R.is_zero:
        raise ZeroMatrix("cannot clear denominators of the zero matrix")
    psi1 = ONE
    for row in R.rows:
        for e in row:
            if not e.is_zero:
                psi1 = poly_lcm(psi1, e.den)
    rows = []
    for row in R.rows:
        out = []
        for e in row:
            if e.is_zero:
                out.append(ZERO)
            else:
                out.append(e.num * (psi1 // e.den))
        rows.append(out)
    return psi1, PolyMatrix(rows, n=R.n)


def extract_rational_structure(R: RationalMatrix) -> RatStructuralData:
    """Structural data of a rational matrix via denominator clearing."""
    if R.is_zero:
        raise ZeroMatrix("structural data of the zero matrix")
    psi1, P = clear_denominators(R)
    data = extract_poly_structure(P)
    eps, psi = [], []
    for a in data.invariant_factors:
        fr = RatFn(a, psi1)
        eps.append(fr.num.monic())
        psi.append(fr.den)
    q1 = int(psi1.degree) - data.degree
    q = tuple(fi + q1 for fi in data.inf_partial_mults)
    assert (
        sum(data.colspan_indices)
        + sum(data.rowspan_indices)
        + sum(int(e.degree) for e in eps)
        - sum(int(p.degree) for p in psi)
        + sum(q)
        == 0
    ), "rational index sum identity failed"
    return RatStructuralData(
        m=R.m,
        n=R.n,
        rank=data.rank,
        numerators=tuple(eps),
        denominators=tuple(psi),
        inf_orders=q,
        colspan_indices=data.colspan_indices,
        rowspan_indices=data.rowspan_indices,
        right_indices=data.right_indices,
        left_indices=data.left_indices,
        colspan_basis=data.colspan_basis,
        rowspan_basis=data.rowspan_basis,
        right_null_basis=data.right_null_basis,
        left_null_basis=data.left_null_basis,
    )


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    mismatches: tuple

    def __bool__(self) -> bool:
        return self.passed


def spans_equal(computed: PolyMatrix, supplied: PolyMatrix) -> bool:
    """Span equality of two minimal bases via a unimodular change of basis."""
    if (computed.m, computed.n) != (supplied.m, supplied.n):
        return False
    if computed.n == 0:
        return True
    sm = smith_form(computed)
    if sm.rank != computed.n or any(a != ONE for a in sm.diag):
        return False
    lifted = sm.left @ supplied
    top = lifted.submatrix(range(computed.n), range(supplied.n))
    change = sm.right @ top
    if computed @ change != supplied:
        return False
    return is_unimodular(change)


def verify(matrix, prescription) -> VerificationReport:
    """Extract the structure of a matrix and compare it field-by-field against
    a prescription; exact equality throughout."""
    from .feasibility import Prescription  # local import to avoid a cycle

    p: Prescription = prescription
    p.validate()
    mismatches = []

    if p.is_rational:
        if isinstance(matrix, PolyMatrix):
            matrix = RationalMatrix.from_poly_matrix(matrix)
        if not isinstance(matrix, RationalMatrix):
            raise ShapeMismatch("rational prescription needs a matrix input")
        if (matrix.m, matrix.n) != (p.m, p.n):
            raise ShapeMismatch(
                f"matrix is {matrix.m}x{matrix.n}, prescription wants {p.m}x{p.n}"
            )
        data = extract_rational_structure(matrix)
        if data.rank != p.r:
            mismatches.append("rank")
        if data.numerators != tuple(p.epsilon):
            mismatches.append("numerators")
        if data.denominators != tuple(p.psi):
            mismatches.append("denominators")
        if data.inf_orders != tuple(p.q):
            mismatches.append("inf_orders")
    else:
        if not isinstance(matrix, PolyMatrix):
            raise ShapeMismatch("polynomial prescription needs a PolyMatrix")
        if (matrix.m, matrix.n) != (p.m, p.n):
            raise ShapeMismatch(
                f"matrix is {matrix.m}x{matrix.n}, prescription wants {p.m}x{p.n}"
            )
        data = extract_poly_structure(matrix)
        if data.rank != p.r:
            mismatches.append("rank")
        if data.degree != p.d:
            mismatches.append("degree")
        if data.invariant_factors != tuple(p.alpha):
            mismatches.append("invariant_factors")
        if data.inf_partial_mults != tuple(p.f):
            mismatches.append("inf_partial_mults")

    k_want, l_want = p.span_degrees()
    if data.colspan_indices != tuple(k_want):
        mismatches.append("colspan_indices")
    if data.rowspan_indices != tuple(l_want):
        mismatches.append("rowspan_indices")

    if p.variant.endswith("spans") and data.rank == p.r:
        if not spans_equal(data.colspan_basis, p.K):
            mismatches.append("colspan_basis")
        if not spans_equal(data.rowspan_basis, p.Lt):
            mismatches.append("rowspan_basis")

    if p.variant.endswith("full"):
        if data.right_indices != tuple(p.right):
            mismatches.append("right_indices")
        if data.left_indices != tuple(p.left):
            mismatches.append("left_indices")

    return VerificationReport(passed=not mismatches, mismatches=tuple(mismatches))
