#!/usr/bin/env python3
"""Narrative tour of the library: extract, check, construct, verify, select.

Run from the repository root after installing:

    python3 demos/walkthrough.py
"""

from fractions import Fraction

from structura import (
    Poly,
    PolyMatrix,
    Prescription,
    RatFn,
    RationalMatrix,
    check_feasibility,
    extract_poly_structure,
    extract_rational_structure,
    realize_full,
    realize_span,
    select_nonzero_minor,
    star_dual,
    verify,
)
from structura.errors import FieldNotSplit
from structura.minors import minor_at

s = Poly([0, 1])


def banner(title):
    print()
    print(title)
    print("-" * len(title))


banner("1. Extracting structural data")
P = PolyMatrix.from_scalar_rows([[s, s * s], [Poly([1]), s]])
print("P =", P)
data = extract_poly_structure(P)
print("rank", data.rank, "degree", data.degree)
print("invariant factors:", [str(a) for a in data.invariant_factors])
print("infinity multiplicities:", data.inf_partial_mults)
print("col-span indices:", data.colspan_indices, "basis", data.colspan_basis)
print("right-null indices:", data.right_indices, "basis", data.right_null_basis)
print("index sum check: "
      f"{sum(data.right_indices)} + {sum(data.left_indices)} + "
      f"{sum(data.inf_partial_mults)} + "
      f"{sum(int(a.degree) for a in data.invariant_factors)} "
      f"= {data.rank * data.degree}")

banner("2. Deciding feasibility of prescribed data")
prescription = Prescription(
    variant="P2_span_indices",
    m=3, n=3, r=2, d=7,
    alpha=(Poly([1]), Poly([1, 0, 2, 0, 1])),
    f=(0, 0),
    k=(5, 0),
    l=(4, 1),
)
rep = check_feasibility(prescription)
print("g-sequence:", rep.g_sequence)
for key, cond in rep.conditions.items():
    if cond.status != "not_applicable":
        extra = ""
        if cond.lhs_partial_sums:
            extra = f"  {cond.lhs_partial_sums} within {cond.rhs_partial_sums}"
        print(f"  {cond.label:12s} {cond.status}{extra}")
print("feasible:", rep.feasible)

banner("3. ... but feasible does not mean constructible over Q")
try:
    realize_span(prescription)
except FieldNotSplit as exc:
    print("construction refused:", exc)

banner("4. Constructing a full prescription and re-extracting")
p3 = Prescription(
    variant="P3_full",
    m=3, n=4, r=2, d=2,
    alpha=(Poly([1]), Poly([-1, 1])),
    f=(0, 1),
    k=(1, 0), l=(1, 0),
    right=(1, 0), left=(1,),
)
A = realize_full(p3)
print("A =", A)
print("re-extraction verdict:", verify(A, p3))

banner("5. The rational layer")
R = RationalMatrix([[RatFn(Poly([1]), s), RatFn(Poly([0, 1]))]])
rdata = extract_rational_structure(R)
print("R =", R)
print("invariant rational functions:",
      [f"({n})/({d})" for n, d in zip(rdata.numerators, rdata.denominators)])
print("invariant orders at infinity:", rdata.inf_orders)

banner("6. Picking a nonzero minor under index bounds")
E = PolyMatrix.from_scalar_rows(
    [[s, 1, 0], [2, s, 1], [1, 0, s * s]]
)
Z = (1, 2)
I, J = select_nonzero_minor(E, Z)
print(f"Z = {Z}, Z* = {star_dual(Z, 3)}")
print(f"rows {I}, columns {J}, minor = {minor_at(E, I, J)}")
