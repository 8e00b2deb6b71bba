"""Constructive realization of prescribed structural data.

Pipeline: distribute the invariant factors over prescribed diagonal degrees,
realize them in a triangular matrix, shape the off-diagonal degrees with
Euclidean column replacements, assemble between minimal bases, and lift
nonzero infinite structure through a Mobius substitution. Rational targets
wrap the polynomial construction in a denominator clearing.

All searches are deterministic and bounded by the STRUCTURA_MAX_SEARCH node
budget (default 10^6); exhaustion is reported, never silently mis-answered.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    CompletionSearchExhausted,
    FieldNotSplit,
    ImpossibleSquareCase,
    Infeasible,
    LengthMismatch,
    MajorizationFails,
    NonMonicDiagonal,
    PreconditionViolated,
    SearchExhausted,
    SumMismatch,
)
from .qpoly import (
    ONE,
    ZERO,
    FactoredPoly,
    Poly,
    atom_valuation,
    coprime_basis,
    divides,
    mobius_tilde,
    poly_gcd,
    split_over_rationals,
)
from .polymat import (
    PolyMatrix,
    is_minimal_basis,
    mobius_frame,
    scale_basis_mobius,
    smith_form,
)
from .extract import RationalMatrix
from .qpoly import RatFn
from .feasibility import FAIL, Prescription, check_feasibility, majorizes

DEFAULT_SEARCH_BUDGET = 10**6


def _search_budget() -> int:
    raw = os.environ.get("STRUCTURA_MAX_SEARCH", "")
    try:
        return int(raw) if raw else DEFAULT_SEARCH_BUDGET
    except ValueError:
        return DEFAULT_SEARCH_BUDGET


class _Budget:
    __slots__ = ("left", "exc")

    def __init__(self, limit: int, exc):
        self.left = limit
        self.exc = exc

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise self.exc(
                "search budget exhausted; raise STRUCTURA_MAX_SEARCH to retry"
            )


# -- minimal-basis builders ----------------------------------------------------


def build_minimal_basis(degrees: Sequence[int], ambient: int) -> PolyMatrix:
    """Bidiagonal minimal basis with the given column degrees.

    ambient x r with s^d_i on the diagonal and 1 below it; identity in the
    square case, which forces all degrees to zero.
    """
    degs = [int(x) for x in degrees]
    r = len(degs)
    if any(x < 0 for x in degs):
        raise ValueError("column degrees must be nonnegative")
    if ambient < r:
        raise ValueError("ambient dimension below the number of columns")
    if ambient == r:
        if any(x != 0 for x in degs):
            raise ImpossibleSquareCase(
                "a square minimal basis has all column degrees zero"
            )
        return PolyMatrix.identity(r)
    rows = [[ZERO] * r for _ in range(ambient)]
    for i, d in enumerate(degs):
        rows[i][i] = Poly.monomial(1, d)
        rows[i + 1][i] = ONE
    return PolyMatrix(rows, n=r)


def _zigzag_block(cm: Sequence[int], cn: Sequence[int]):
    """One irreducible dual block: columns supported on a shared cut grid.

    Column entries carry the monomial distance to the interval end (left
    factor) or start with alternating signs (right factor), so every
    orthogonality product telescopes to zero.
    """
    acc = [0]
    for a in cm:
        acc.append(acc[-1] + a)
    bcc = [0]
    for b in cn:
        bcc.append(bcc[-1] + b)
    cuts = sorted(set(acc) | set(bcc))
    rowof = {c: i for i, c in enumerate(cuts)}
    rows = len(cuts)
    mcols = []
    for i in range(len(cm)):
        lo, hi = acc[i], acc[i + 1]
        col = [ZERO] * rows
        for c in cuts:
            if lo <= c <= hi:
                col[rowof[c]] = Poly.monomial(1, hi - c)
        mcols.append(col)
    ncols = []
    for j in range(len(cn)):
        lo, hi = bcc[j], bcc[j + 1]
        col = [ZERO] * rows
        for idx, c in enumerate(cuts):
            if lo <= c <= hi:
                col[rowof[c]] = Poly.monomial((-1) ** idx, c - lo)
        ncols.append(col)
    return rows, mcols, ncols


def build_dual_minimal_bases(deg_m: Sequence[int], deg_n: Sequence[int]):
    """Dual minimal bases (M, N) with M^T N = 0 and the prescribed degrees.

    Positive degrees are split into independent zig-zag blocks at common
    partial sums; zero degrees become private constant columns. The result
    is validated before returning.
    """
    dm = [int(x) for x in deg_m]
    dn = [int(x) for x in deg_n]
    if any(x < 0 for x in dm + dn):
        raise ValueError("degrees must be nonnegative")
    if sum(dm) != sum(dn):
        raise SumMismatch("dual bases need equal degree sums")
    pm_list = [d for d in dm if d > 0]
    pn_list = [d for d in dn if d > 0]
    segs = []
    cm: list = []
    cn: list = []
    i = j = sa = sb = 0
    while i < len(pm_list) or j < len(pn_list):
        if sa == sb:
            if cm or cn:
                segs.append((cm, cn))
                cm, cn = [], []
            cm.append(pm_list[i])
            sa += pm_list[i]
            i += 1
            cn.append(pn_list[j])
            sb += pn_list[j]
            j += 1
        elif sa < sb:
            cm.append(pm_list[i])
            sa += pm_list[i]
            i += 1
        else:
            cn.append(pn_list[j])
            sb += pn_list[j]
            j += 1
    if cm or cn:
        segs.append((cm, cn))

    blocks = [_zigzag_block(c_m, c_n) for c_m, c_n in segs]
    blocks += [(1, [[ONE]], []) for d in dm if d == 0]
    blocks += [(1, [], [[ONE]]) for d in dn if d == 0]

    r, q = len(dm), len(dn)
    total_rows = sum(b[0] for b in blocks)
    M_rows = [[ZERO] * r for _ in range(total_rows)]
    N_rows = [[ZERO] * q for _ in range(total_rows)]
    roff = moff = noff = 0
    for rows, mcols, ncols in blocks:
        for ci, col in enumerate(mcols):
            for ri, e in enumerate(col):
                M_rows[roff + ri][moff + ci] = e
        for ci, col in enumerate(ncols):
            for ri, e in enumerate(col):
                N_rows[roff + ri][noff + ci] = e
        roff += rows
        moff += len(mcols)
        noff += len(ncols)
    M = PolyMatrix(M_rows, n=r)
    N = PolyMatrix(N_rows, n=q)

    assert (M.transpose() @ N).is_zero, "dual bases must annihilate each other"
    okM, dM = is_minimal_basis(M)
    okN, dN = is_minimal_basis(N)
    assert okM and okN, "constructed factors must be minimal bases"
    assert sorted(dM, reverse=True) == sorted(dm, reverse=True)
    assert sorted(dN, reverse=True) == sorted(dn, reverse=True)
    return M, N


# -- invariant-factor distribution ----------------------------------------------


def _distribution_candidates(m_desc, quotas, budget):
    """All caps-respecting, majorized ways to spread one root's multiplicity."""
    r = len(quotas)
    total = sum(m_desc)
    prefix_m = []
    acc = 0
    for v in m_desc:
        acc += v
        prefix_m.append(acc)

    out = []

    def rec(pos, remaining, partial):
        if pos == r:
            if remaining == 0:
                vec = tuple(partial)
                top = sorted(vec, reverse=True)
                acc2 = 0
                for kk in range(r):
                    acc2 += top[kk]
                    if acc2 > prefix_m[kk]:
                        return
                out.append(vec)
            return
        cap = min(quotas[pos], remaining)
        for v in range(cap + 1):
            partial.append(v)
            rec(pos + 1, remaining - v, partial)
            partial.pop()

    rec(0, total, [])
    # greedy preference: largest multiplicities onto the largest open quotas
    slots = sorted(range(r), key=lambda idx: (-quotas[idx], idx))
    greedy = [0] * r
    for v, idx in zip(m_desc, slots):
        greedy[idx] = v
    out.sort(key=lambda vec: (sum(abs(a - b) for a, b in zip(vec, greedy)), vec))
    budget.spend(len(out))
    return out


def distribute_invariant_factors(alpha, h: Sequence[int]):
    """Monic delta_i with deg delta_i = h_i whose k-fold product gcds absorb
    the invariant-factor chain and whose product equals the chain's product.

    Requires split (over Q) invariant factors; the decreasing reordering of h
    must be majorized by the reversed degree sequence.
    """
    r = len(alpha)
    if len(h) != r:
        raise LengthMismatch("one target degree per invariant factor")
    facs = []
    for a in alpha:
        fa = a if isinstance(a, FactoredPoly) else split_over_rationals(a)
        if not fa.is_split:
            raise FieldNotSplit(
                "invariant factors do not split into linear factors over Q; "
                "the construction needs an algebraically closed field"
            )
        if fa.leading != 1:
            raise ValueError("invariant factors must be monic")
        facs.append(fa)
    hh = [int(x) for x in h]
    degs = [sum(mlt for _, mlt in fa.factors) for fa in facs]
    for i in range(r - 1):
        if degs[i] > degs[i + 1]:
            raise ValueError("invariant factors must be a divisibility chain")
    if any(x < 0 for x in hh):
        raise MajorizationFails("a target degree is negative")
    g = tuple(sorted(hh, reverse=True))
    if not majorizes(g, tuple(reversed(degs))):
        raise MajorizationFails(
            f"degree reordering {g} is not majorized by {tuple(reversed(degs))}"
        )

    roots = sorted({rt for fa in facs for rt, _ in fa.factors})
    mult = {rt: [0] * r for rt in roots}
    for i, fa in enumerate(facs):
        for rt, mlt in fa.factors:
            mult[rt][i] = mlt
    for rt in roots:
        if any(mult[rt][i] > mult[rt][i + 1] for i in range(r - 1)):
            raise ValueError("invariant factors must be a divisibility chain")

    order = sorted(roots, key=lambda rt: (-sum(mult[rt]), rt))
    budget = _Budget(_search_budget(), SearchExhausted)
    quotas = list(hh)
    assign: dict = {}

    def rec(idx: int) -> bool:
        budget.spend()
        if idx == len(order):
            return all(x == 0 for x in quotas)
        rt = order[idx]
        m_desc = sorted(mult[rt], reverse=True)
        for vec in _distribution_candidates(m_desc, quotas, budget):
            for i in range(r):
                quotas[i] -= vec[i]
            assign[rt] = vec
            if rec(idx + 1):
                return True
            for i in range(r):
                quotas[i] += vec[i]
            del assign[rt]
        return False

    if not rec(0):
        raise SearchExhausted("no distribution found within the explored space")

    delta = []
    for i in range(r):
        p = ONE
        for rt in roots:
            e = assign[rt][i]
            if e:
                p = p * (Poly((-rt, 1)) ** e)
        delta.append(p)

    _check_sa_conditions([fa.expand() for fa in facs], delta)
    return delta


def _check_sa_conditions(alpha, delta):
    """Brute-force validation of the triangular-diagonal compatibility
    conditions: k-fold product gcd divisibility and total product equality."""
    r = len(alpha)
    prod_a = ONE
    for a in alpha:
        prod_a = prod_a * a
    prod_d = ONE
    for dd in delta:
        prod_d = prod_d * dd
    if prod_a != prod_d:
        raise PreconditionViolated("products of the two diagonals differ")
    lead = ONE
    for k in range(1, r):
        lead = lead * alpha[k - 1]
        acc = ZERO
        for subset in itertools.combinations(range(r), k):
            p = ONE
            for idx in subset:
                p = p * delta[idx]
            acc = p.monic() if acc.is_zero else poly_gcd(acc, p)
        if not divides(lead, acc):
            raise PreconditionViolated(
                f"order-{k} product gcd misses the invariant prefix"
            )


# -- triangular realization -----------------------------------------------------


def _beta_candidates(size, total, lows, bots):
    """Ascending exponent chains with bounded prefix sums, lexicographic."""
    out = []

    def rec(prefix, acc):
        kk = len(prefix)
        if kk == size - 1:
            last = total - acc
            if last >= (prefix[-1] if prefix else 0):
                out.append(tuple(prefix) + (last,))
            return
        start = prefix[-1] if prefix else 0
        for v in range(start, total - acc + 1):
            s = acc + v
            if not lows[kk] <= s <= bots[kk]:
                continue
            prefix.append(v)
            rec(prefix, s)
            prefix.pop()

    if size == 0:
        return [()]
    rec([], 0)
    return out


def _gamma_candidates(size, gmax):
    """Bordered-column valuation profiles, sparsest first (None = zero entry)."""
    yield (None,) * size
    for nnz in range(1, size + 1):
        for positions in itertools.combinations(range(size), nnz):
            for vals in itertools.product(range(gmax + 1), repeat=nnz):
                prof = [None] * size
                for p, v in zip(positions, vals):
                    prof[p] = v
                yield tuple(prof)


def _atom_triangular(x, m, atom, budget) -> Optional[PolyMatrix]:
    """Upper triangular matrix with diagonal atom^x_i and invariant-factor
    exponents m (ascending) in the single atom; None when the complete
    candidate space is exhausted."""
    r = len(x)
    if r == 1:
        return PolyMatrix([[atom ** x[0]]])
    if r == 2:
        return PolyMatrix(
            [[atom ** x[0], atom ** m[0]], [ZERO, atom ** x[1]]], n=2
        )
    size = r - 1
    xr = x[-1]
    mtot = []
    acc = 0
    for v in m:
        acc += v
        mtot.append(acc)
    bots = []
    acc = 0
    for v in sorted(x[:-1]):
        acc += v
        bots.append(acc)
    total_b = sum(x[:-1])
    lows = []
    for kk in range(1, size):
        lows.append(max(mtot[kk - 1], mtot[kk] - xr, 0))
    lows.append(total_b)
    bots[-1] = total_b

    target = tuple(atom ** mi for mi in m)
    gmax = sum(m)
    for beta in _beta_candidates(size, total_b, lows, bots):
        budget.spend()
        block = _atom_triangular(x[:-1], beta, atom, budget)
        if block is None:
            continue
        sm = smith_form(block)
        if tuple(sm.diag) != tuple(atom ** b for b in beta):
            continue
        for prof in _gamma_candidates(size, gmax):
            budget.spend()
            z = PolyMatrix(
                [[ZERO if gv is None else atom ** gv] for gv in prof], n=1
            )
            y = sm.left_inv @ z
            rows = []
            for i in range(size):
                rows.append(list(block.rows[i]) + [y.rows[i][0]])
            rows.append([ZERO] * size + [atom ** xr])
            T = PolyMatrix(rows, n=r)
            if tuple(smith_form(T).diag) == target:
                return T
    return None


def triangular_realization(alpha: Sequence[Poly], delta: Sequence[Poly]) -> PolyMatrix:
    """Upper triangular r x r with diagonal delta and invariant factors alpha.

    Works atom-by-atom over a gcd-free basis (one triangular factor per atom,
    multiplied together), so inputs need not split into linear factors. Every
    candidate is validated by exact Smith re-extraction.
    """
    r = len(alpha)
    if len(delta) != r:
        raise LengthMismatch("diagonal and invariant lists differ in length")
    for p in list(alpha) + list(delta):
        if p.is_zero or not p.is_monic:
            raise PreconditionViolated("diagonals and invariants must be monic")
    for i in range(r - 1):
        if not divides(alpha[i], alpha[i + 1]):
            raise PreconditionViolated("invariant factors must form a chain")
    _check_sa_conditions(list(alpha), list(delta))

    if r == 1:
        return PolyMatrix([[delta[0]]])
    if r == 2:
        E = PolyMatrix([[delta[0], alpha[0]], [ZERO, delta[1]]], n=2)
        assert tuple(smith_form(E).diag) == tuple(alpha)
        return E

    atoms = coprime_basis(list(alpha) + list(delta))
    budget = _Budget(_search_budget(), CompletionSearchExhausted)
    E = PolyMatrix.identity(r)
    for atom in atoms:
        x = tuple(atom_valuation(d, atom) for d in delta)
        mvec = tuple(atom_valuation(a, atom) for a in alpha)
        if all(v == 0 for v in x) and all(v == 0 for v in mvec):
            continue
        T = _atom_triangular(x, mvec, atom, budget)
        if T is None:
            raise CompletionSearchExhausted(
                f"no completion found for atom {atom}"
            )
        E = E @ T
    assert tuple(E.rows[i][i] for i in range(r)) == tuple(delta)
    assert tuple(smith_form(E).diag) == tuple(alpha)
    return E


# -- Euclidean degree shaping ----------------------------------------------------


def shape_degrees(Ep: PolyMatrix, bounds: Sequence[int]) -> PolyMatrix:
    """Reduce strict upper entries below their row's diagonal degree by
    Euclidean column replacements (right multiplication by a unit upper
    triangular unimodular matrix); the diagonal and the invariant factors are
    untouched."""
    if not Ep.is_square:
        raise PreconditionViolated("triangular shaping needs a square matrix")
    r = Ep.m
    caps = [int(b) for b in bounds]
    if len(caps) != r:
        raise PreconditionViolated("one degree cap per row required")
    for i in range(r):
        for j in range(i):
            if not Ep.rows[i][j].is_zero:
                raise PreconditionViolated("input must be upper triangular")
        e = Ep.rows[i][i]
        if e.is_zero or not e.is_monic:
            raise NonMonicDiagonal(f"diagonal entry {i} is not monic")
        if e.degree != caps[i]:
            raise PreconditionViolated(
                f"diagonal entry {i} has degree {e.degree}, cap says {caps[i]}"
            )
    cols = [[Ep.rows[i][j] for i in range(r)] for j in range(r)]
    for i in range(r - 2, -1, -1):
        for j in range(i + 1, r):
            q = cols[j][i] // cols[i][i]
            if q.is_zero:
                continue
            for t in range(i + 1):
                cols[j][t] = cols[j][t] - q * cols[i][t]
    return PolyMatrix([[cols[j][i] for j in range(r)] for i in range(r)], n=r)


# -- realization pipeline ---------------------------------------------------------


def _sorted_columns(P: PolyMatrix, ascending: bool) -> PolyMatrix:
    order = sorted(
        range(P.n),
        key=lambda j: (int(P.col_degree(j)), j) if ascending else (-int(P.col_degree(j)), j),
    )
    return P.submatrix(range(P.m), order)


def _realize_zero_inf(alpha, d: int, K: PolyMatrix, Lt: PolyMatrix) -> PolyMatrix:
    r = K.n
    k = sorted((int(x) for x in K.column_degrees()), reverse=True)
    l = sorted((int(x) for x in Lt.column_degrees()), reverse=True)
    h = [d - (k[r - 1 - i] + l[i]) for i in range(r)]
    delta = distribute_invariant_factors(list(alpha), h)
    Ep = triangular_realization(list(alpha), delta)
    E = shape_degrees(Ep, h)
    K_asc = _sorted_columns(K, ascending=True)
    L = _sorted_columns(Lt, ascending=False).transpose()
    return K_asc @ E @ L


def _mobius_point(alpha_last: Poly, avoid: Optional[Poly]) -> Fraction:
    """Smallest nonnegative integer that is a root of neither argument."""
    a = 0
    while True:
        fa = Fraction(a)
        if alpha_last(fa) != 0 and (avoid is None or avoid(fa) != 0):
            return fa
        a += 1


def _realize_with_bases(alpha, f, d, K, Lt, avoid=None) -> PolyMatrix:
    if all(fi == 0 for fi in f):
        return _realize_zero_inf(alpha, d, K, Lt)
    a = _mobius_point(alpha[-1], avoid)
    kdegs = [int(x) for x in K.column_degrees()]
    ldegs = [int(x) for x in Lt.column_degrees()]
    Kbar = scale_basis_mobius(K, a, kdegs)
    Ltbar = scale_basis_mobius(Lt, a, ldegs)
    betas = []
    for al, fi in zip(alpha, f):
        tilde, const = mobius_tilde(al, a)
        betas.append((tilde * Poly.monomial(1, fi)).scale(1 / const))
    B = _realize_zero_inf(betas, d, Kbar, Ltbar)
    return mobius_frame(B, a, d)


def _gate(p: Prescription) -> None:
    rep = check_feasibility(p)
    if not rep.feasible:
        failing = [c.label for c in rep.conditions.values() if c.status == FAIL]
        raise Infeasible(f"conditions failed: {', '.join(failing)}")


def realize_span_zero_inf(p: Prescription) -> PolyMatrix:
    """Realize a spans prescription whose infinite structure is trivial."""
    _gate(p)
    if p.is_rational:
        raise ValueError("polynomial prescription required")
    if any(fi != 0 for fi in p.f):
        raise Infeasible("nonzero infinite multiplicities; use realize_span")
    K, Lt = _bases_for(p)
    return _realize_zero_inf(p.alpha, p.d, K, Lt)


def _bases_for(p: Prescription):
    if p.uses_bases:
        return p.K, p.Lt
    return build_minimal_basis(p.k, p.m), build_minimal_basis(p.l, p.n)


def realize_span(p: Prescription, *, _avoid: Optional[Poly] = None) -> PolyMatrix:
    """Realize a spans or span-indices prescription (variants with alpha, f)."""
    _gate(p)
    if p.is_rational:
        raise ValueError("polynomial prescription required")
    K, Lt = _bases_for(p)
    return _realize_with_bases(p.alpha, p.f, p.d, K, Lt, avoid=_avoid)


def realize_full(p: Prescription, *, _avoid: Optional[Poly] = None) -> PolyMatrix:
    """Realize a full polynomial prescription (all six data lists)."""
    _gate(p)
    if p.is_rational or not p.uses_null_indices:
        raise ValueError("full polynomial prescription required")
    if p.m == p.r:
        K = PolyMatrix.identity(p.r)
    else:
        K, _ = build_dual_minimal_bases(p.k, p.left)
    if p.n == p.r:
        Lt = PolyMatrix.identity(p.r)
    else:
        Lt, _ = build_dual_minimal_bases(p.l, p.right)
    return _realize_with_bases(p.alpha, p.f, p.d, K, Lt, avoid=_avoid)


def realize_rational(p: Prescription) -> RationalMatrix:
    """Realize a rational prescription by clearing the largest denominator,
    constructing the polynomial companion, and dividing back."""
    _gate(p)
    if not p.is_rational:
        raise ValueError("rational prescription required")
    psi1 = p.psi[0]
    alpha = []
    for eps, psi in zip(p.epsilon, p.psi):
        num = psi1 * eps
        quo, rem = divmod(num, psi)
        assert rem.is_zero, "psi chain must divide the top denominator"
        alpha.append(quo.monic())
    q1 = p.q[0]
    d = int(psi1.degree) - q1
    f = tuple(qi - q1 for qi in p.q)
    inner = Prescription(
        variant={"R1_spans": "P1_spans", "R2_span_indices": "P2_span_indices",
                 "R3_full": "P3_full"}[p.variant],
        m=p.m,
        n=p.n,
        r=p.r,
        d=d,
        alpha=tuple(alpha),
        f=f,
        k=p.k,
        l=p.l,
        right=p.right,
        left=p.left,
        K=p.K,
        Lt=p.Lt,
    )
    avoid = psi1 if psi1 != ONE else None
    if inner.uses_null_indices:
        A = realize_full(inner, _avoid=avoid)
    else:
        A = realize_span(inner, _avoid=avoid)
    rows = [[RatFn(e, psi1) for e in row] for row in A.rows]
    return RationalMatrix(rows, n=A.n)
