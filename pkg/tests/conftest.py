"""Shared deterministic generators for the test suite.

Everything takes an explicit random.Random so failures reproduce exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from structura.qpoly import ONE, Poly
from structura.polymat import PolyMatrix
from structura.feasibility import Prescription, g_sequence

ROOT_POOL = [Fraction(v) for v in range(-3, 4)]


def random_poly(rng: random.Random, max_deg: int, lo: int = -3, hi: int = 3) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly([rng.randint(lo, hi) for _ in range(deg + 1)])


def random_nonzero_poly(rng, max_deg, lo=-3, hi=3) -> Poly:
    while True:
        p = random_poly(rng, max_deg, lo, hi)
        if not p.is_zero:
            return p


def random_matrix(rng: random.Random, m: int, n: int, max_deg: int) -> PolyMatrix:
    """Random nonzero matrix with a sprinkling of zero entries."""
    while True:
        rows = []
        for _ in range(m):
            row = []
            for _ in range(n):
                if rng.random() < 0.25:
                    row.append(Poly())
                else:
                    row.append(random_poly(rng, max_deg))
            rows.append(row)
        P = PolyMatrix(rows, n=n)
        if not P.is_zero:
            return P


def random_low_rank_matrix(rng, m: int, n: int, r: int) -> PolyMatrix:
    """Rank <= r by construction: an m x r times an r x n factor."""
    left = PolyMatrix(
        [[random_poly(rng, 1) for _ in range(r)] for _ in range(m)], n=r
    )
    right = PolyMatrix(
        [[random_poly(rng, 1) for _ in range(n)] for _ in range(r)], n=n
    )
    P = left @ right
    return P


def random_unimodular(rng: random.Random, n: int, ops: int = 3) -> PolyMatrix:
    rows = [list(r) for r in PolyMatrix.identity(n).rows]
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        kind = rng.randrange(3)
        if kind == 0 and i != j:
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 1 and i != j:
            q = random_poly(rng, 1, -2, 2)
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        else:
            c = rng.choice([-2, -1, 1, 2])
            rows[i] = [e.scale(c) for e in rows[i]]
    return PolyMatrix(rows, n=n)


def random_split_monic(rng, deg: int, pool=ROOT_POOL) -> Poly:
    p = ONE
    for _ in range(deg):
        root = rng.choice(pool)
        p = p * Poly((-root, 1))
    return p


def random_partition(rng, size: int, maxv: int) -> tuple:
    return tuple(sorted((rng.randint(0, maxv) for _ in range(size)), reverse=True))


def random_composition_desc(rng, total: int, parts: int) -> tuple:
    """Partition `total` into `parts` nonnegative summands, sorted descending."""
    if parts == 0:
        assert total == 0
        return ()
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    vals = []
    prev = 0
    for c in cuts + [total]:
        vals.append(c - prev)
        prev = c
    return tuple(sorted(vals, reverse=True))


def random_feasible_poly_prescription(
    rng: random.Random,
    variant: str = "P2_span_indices",
    max_r: int = 3,
    max_mn: int = 5,
    extra_d: int = 3,
) -> Prescription:
    """Feasible by construction: the majorization right side is grown from the
    left side by prefix-preserving unit moves, then split into a split-over-Q
    invariant chain plus ascending infinite multiplicities."""
    r = rng.randint(1, max_r)
    m = rng.randint(r, max_mn)
    n = rng.randint(r, max_mn)
    k = (0,) * r if m == r else random_partition(rng, r, 2)
    l = (0,) * r if n == r else random_partition(rng, r, 2)
    g = g_sequence(k, l)
    d = g[0] + rng.randint(0, extra_d)

    w = [d - gi for gi in reversed(g)]  # descending, the majorization lhs
    for _ in range(rng.randint(0, 2 * r)):
        qpos = max((idx for idx in range(r) if w[idx] > 0), default=None)
        if qpos is None or qpos == 0:
            break
        w[0] += 1
        w[qpos] -= 1

    totals = list(reversed(w))  # ascending: deg(alpha_i) + f_i
    a = [totals[0]]
    f = [0]
    for i in range(1, r):
        inc = totals[i] - totals[i - 1]
        da = rng.randint(0, inc)
        a.append(a[-1] + da)
        f.append(f[-1] + inc - da)

    exps: dict = {}
    alphas = []
    for i in range(r):
        inc = a[i] - (a[i - 1] if i else 0)
        for _ in range(inc):
            root = rng.choice(ROOT_POOL)
            exps[root] = exps.get(root, 0) + 1
        p = ONE
        for root, e in sorted(exps.items()):
            p = p * (Poly((-root, 1)) ** e)
        alphas.append(p)

    kwargs = dict(
        variant=variant,
        m=m,
        n=n,
        r=r,
        d=d,
        alpha=tuple(alphas),
        f=tuple(f),
    )
    if variant == "P1_spans":
        from structura.synthesis import build_minimal_basis

        K = _shuffle_constant_left(rng, build_minimal_basis(k, m))
        Lt = _shuffle_constant_left(rng, build_minimal_basis(l, n))
        kwargs.update(K=K, Lt=Lt)
    else:
        kwargs.update(k=k, l=l)
        if variant == "P3_full":
            kwargs.update(
                left=random_composition_desc(rng, sum(k), m - r),
                right=random_composition_desc(rng, sum(l), n - r),
            )
    return Prescription(**kwargs)


def _shuffle_constant_left(rng, B: PolyMatrix) -> PolyMatrix:
    """Left-multiply by a random constant invertible matrix: keeps minimality
    and column degrees, varies the prescribed subspace."""
    from structura.polymat import det

    n = B.m
    while True:
        C = PolyMatrix(
            [
                [Poly.constant(rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(n)
            ],
            n=n,
        )
        d = det(C)
        if not d.is_zero:
            return C @ B


def rationalize_prescription(rng, p: Prescription) -> Prescription:
    """Wrap a feasible polynomial prescription into its rational counterpart
    by choosing a split top denominator."""
    from structura.qpoly import poly_gcd

    psi1 = random_split_monic(rng, rng.randint(0, 2))
    eps, psi = [], []
    for al in p.alpha:
        gshared = poly_gcd(psi1, al) if not al.is_constant else ONE
        eps.append((al // gshared).monic())
        psi.append((psi1 // gshared).monic())
    q = tuple(fi + int(psi1.degree) - p.d for fi in p.f)
    variant = {
        "P1_spans": "R1_spans",
        "P2_span_indices": "R2_span_indices",
        "P3_full": "R3_full",
    }[p.variant]
    return Prescription(
        variant=variant,
        m=p.m,
        n=p.n,
        r=p.r,
        epsilon=tuple(eps),
        psi=tuple(psi),
        q=q,
        k=p.k,
        l=p.l,
        right=p.right,
        left=p.left,
        K=p.K,
        Lt=p.Lt,
    )
