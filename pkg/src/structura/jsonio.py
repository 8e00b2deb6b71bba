"""JSON encodings for scalars, matrices, prescriptions, and reports.

Scalars encode as "p/q" strings ("p" when the denominator is 1); polynomials
as ascending coefficient arrays; matrices as flat row-major entry lists.
Rational-matrix entries are {"num": [...], "den": [...]} pairs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .qpoly import FactoredPoly, Poly, RatFn
from .polymat import PolyMatrix
from .extract import (
    PolyStructuralData,
    RationalMatrix,
    RatStructuralData,
    VerificationReport,
)
from .feasibility import FeasibilityReport, Prescription


def fraction_to_json(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_json(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"not a rational scalar: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational scalar {v!r}") from exc
    raise ParseError(f"not a rational scalar: {v!r}")


def poly_to_json(p: Poly) -> list:
    return [fraction_to_json(c) for c in p.coeffs]


def poly_from_json(v) -> Poly:
    if not isinstance(v, list):
        raise ParseError(f"polynomial must be a coefficient array, got {v!r}")
    return Poly([fraction_from_json(c) for c in v])


def factored_to_json(f: FactoredPoly) -> dict:
    return {
        "leading": fraction_to_json(f.leading),
        "factors": [[fraction_to_json(r), m] for r, m in f.factors],
        "cofactor": poly_to_json(f.cofactor),
    }


def factored_from_json(v) -> FactoredPoly:
    try:
        return FactoredPoly(
            fraction_from_json(v["leading"]),
            [(fraction_from_json(r), int(m)) for r, m in v.get("factors", [])],
            poly_from_json(v.get("cofactor", [1])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad factored polynomial: {v!r}") from exc


def poly_list_from_json(v) -> tuple:
    """Accepts coefficient arrays or factored forms, expanding the latter."""
    if not isinstance(v, list):
        raise ParseError("expected a list of polynomials")
    out = []
    for item in v:
        if isinstance(item, dict):
            out.append(factored_from_json(item).expand())
        else:
            out.append(poly_from_json(item))
    return tuple(out)


def polymatrix_to_json(P: PolyMatrix) -> dict:
    return {
        "m": P.m,
        "n": P.n,
        "entries": [poly_to_json(e) for row in P.rows for e in row],
    }


def rationalmatrix_to_json(R: RationalMatrix) -> dict:
    return {
        "m": R.m,
        "n": R.n,
        "entries": [
            {"num": poly_to_json(e.num), "den": poly_to_json(e.den)}
            for row in R.rows
            for e in row
        ],
    }


def matrix_from_json(obj):
    """PolyMatrix or RationalMatrix, keyed on the entry encoding."""
    try:
        m, n = int(obj["m"]), int(obj["n"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("matrix object needs m, n, entries") from exc
    if not isinstance(entries, list) or len(entries) != m * n:
        raise ParseError(f"expected {m * n} row-major entries")
    rational = any(isinstance(e, dict) for e in entries)
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            e = entries[i * n + j]
            if rational:
                if isinstance(e, dict):
                    num = poly_from_json(e.get("num", []))
                    den = poly_from_json(e.get("den", [1]))
                else:
                    num, den = poly_from_json(e), Poly([1])
                if den.is_zero:
                    raise ParseError("entry with zero denominator")
                row.append(RatFn(num, den))
            else:
                row.append(poly_from_json(e))
        rows.append(row)
    if rational:
        return RationalMatrix(rows, n=n)
    return PolyMatrix(rows, n=n)


def int_list(v, name: str) -> tuple:
    if v is None:
        return None
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise ParseError(f"{name} must be a list of integers")
    return tuple(v)


def prescription_from_json(obj) -> Prescription:
    if not isinstance(obj, dict):
        raise ParseError("prescription must be a JSON object")
    try:
        variant = obj["variant"]
        m, n, r = int(obj["m"]), int(obj["n"]), int(obj["r"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("prescription needs variant, m, n, r") from exc
    kwargs = dict(variant=variant, m=m, n=n, r=r)
    if "d" in obj and obj["d"] is not None:
        kwargs["d"] = int(obj["d"])
    if "alpha" in obj:
        kwargs["alpha"] = poly_list_from_json(obj["alpha"])
    if "epsilon" in obj:
        kwargs["epsilon"] = poly_list_from_json(obj["epsilon"])
    if "psi" in obj:
        kwargs["psi"] = poly_list_from_json(obj["psi"])
    for key in ("f", "q", "k", "l", "right", "left"):
        if key in obj:
            kwargs[key] = int_list(obj[key], key)
    for key in ("K", "Lt"):
        if key in obj and obj[key] is not None:
            mat = matrix_from_json(obj[key])
            if not isinstance(mat, PolyMatrix):
                raise ParseError(f"{key} must be a polynomial matrix")
            kwargs[key] = mat
    return Prescription(**kwargs)


def prescription_to_json(p: Prescription) -> dict:
    out = {"variant": p.variant, "m": p.m, "n": p.n, "r": p.r}
    if p.d is not None:
        out["d"] = p.d
    if p.alpha is not None:
        out["alpha"] = [poly_to_json(a) for a in p.alpha]
    if p.epsilon is not None:
        out["epsilon"] = [poly_to_json(a) for a in p.epsilon]
    if p.psi is not None:
        out["psi"] = [poly_to_json(a) for a in p.psi]
    for key in ("f", "q", "k", "l", "right", "left"):
        val = getattr(p, key)
        if val is not None:
            out[key] = list(val)
    if p.K is not None:
        out["K"] = polymatrix_to_json(p.K)
    if p.Lt is not None:
        out["Lt"] = polymatrix_to_json(p.Lt)
    return out


def _basis_block(basis: PolyMatrix, indices) -> dict:
    return {"indices": list(indices), "basis": polymatrix_to_json(basis)}


def _rational_eigenvalues(polys) -> list:
    """Rational roots of the given monic polynomials, merged and sorted.

    Cofactor content (irreducible over Q) stays inside the reported
    polynomials themselves.
    """
    from .qpoly import split_over_rationals

    roots = set()
    for p in polys:
        if p.is_zero or p.is_constant:
            continue
        for root, _ in split_over_rationals(p).factors:
            roots.add(root)
    return [fraction_to_json(r) for r in sorted(roots)]


def structural_report(data) -> dict:
    """Full JSON report for extracted structural data, identities included."""
    from . import __version__

    common = {
        "tool": "structura",
        "version": __version__,
        "m": data.m,
        "n": data.n,
        "rank": data.rank,
        "colspan": _basis_block(data.colspan_basis, data.colspan_indices),
        "rowspan": _basis_block(data.rowspan_basis, data.rowspan_indices),
        "right_null": _basis_block(data.right_null_basis, data.right_indices),
        "left_null": _basis_block(data.left_null_basis, data.left_indices),
    }
    if isinstance(data, PolyStructuralData):
        deg_alpha = sum(int(a.degree) for a in data.invariant_factors)
        common.update(
            kind="polynomial",
            degree=data.degree,
            invariant_factors=[poly_to_json(a) for a in data.invariant_factors],
            invariant_factors_pretty=[str(a) for a in data.invariant_factors],
            inf_partial_mults=list(data.inf_partial_mults),
            inf_orders=list(data.inf_orders),
            rational_eigenvalues=_rational_eigenvalues(data.invariant_factors),
            has_infinite_eigenvalue=data.inf_partial_mults[-1] > 0,
            identities={
                "eqIST": _mark(
                    sum(data.right_indices)
                    + sum(data.left_indices)
                    + sum(data.inf_partial_mults)
                    + deg_alpha
                    == data.rank * data.degree
                ),
                "eqsums": _mark(
                    sum(data.left_indices) == sum(data.colspan_indices)
                    and sum(data.right_indices) == sum(data.rowspan_indices)
                ),
                "eqsumklfa": _mark(
                    sum(data.colspan_indices)
                    + sum(data.rowspan_indices)
                    + sum(data.inf_partial_mults)
                    + deg_alpha
                    == data.rank * data.degree
                ),
                "eqf1": _mark(data.inf_partial_mults[0] == 0),
            },
        )
    else:
        assert isinstance(data, RatStructuralData)
        common.update(
            kind="rational",
            numerators=[poly_to_json(a) for a in data.numerators],
            denominators=[poly_to_json(a) for a in data.denominators],
            invariant_rational_functions_pretty=[
                f"({num})/({den})"
                for num, den in zip(data.numerators, data.denominators)
            ],
            inf_orders=list(data.inf_orders),
            rational_poles_and_zeros=_rational_eigenvalues(
                list(data.numerators) + list(data.denominators)
            ),
            identities={
                "eqsums": _mark(
                    sum(data.left_indices) == sum(data.colspan_indices)
                    and sum(data.right_indices) == sum(data.rowspan_indices)
                ),
                "eqIST_rational": _mark(
                    sum(data.colspan_indices)
                    + sum(data.rowspan_indices)
                    + sum(int(a.degree) for a in data.numerators)
                    - sum(int(a.degree) for a in data.denominators)
                    + sum(data.inf_orders)
                    == 0
                ),
            },
        )
    return common


def _mark(ok: bool) -> str:
    return "pass" if ok else "fail"


def feasibility_report_json(rep: FeasibilityReport, variant: str) -> dict:
    from . import __version__

    conditions = {}
    for key, c in rep.conditions.items():
        entry = {"status": c.status, "label": c.label}
        if c.lhs_partial_sums is not None:
            entry["lhs_partial_sums"] = list(c.lhs_partial_sums)
            entry["rhs_partial_sums"] = list(c.rhs_partial_sums)
        conditions[key] = entry
    return {
        "tool": "structura",
        "version": __version__,
        "variant": variant,
        "feasible": rep.feasible,
        "verdict": "FEASIBLE" if rep.feasible else "INFEASIBLE",
        "g_sequence": list(rep.g_sequence),
        "conditions": conditions,
    }


def verification_report_json(rep: VerificationReport) -> dict:
    return {
        "verdict": "pass" if rep.passed else "fail",
        "mismatches": list(rep.mismatches),
    }
