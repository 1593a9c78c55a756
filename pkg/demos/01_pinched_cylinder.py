#!/usr/bin/env python3
"""The pinched cylinder: where harmonic representatives go wrong.

A cylinder with a collapsed longitude has one vertex, two edge loops a
and b, and a single 2-cell glued along a + b.  Over F_2 the homology
class [a] has no representative that is simultaneously a cycle and a
cocycle, while the trivial class has two -- existence and uniqueness
both fail.  Subdividing the 2-cell repairs existence but not uniqueness.
"""

from harmonica import (Chain, FieldSpec, NoDecomposition,
                       NotHarmonicComplex, diagnose, har_set,
                       harmonic_representative, hodge_decomposition,
                       laplacian, load_fixture, representable_subspace)

F2 = FieldSpec.prime_field(2)
F3 = FieldSpec.prime_field(3)
QQ = FieldSpec.rationals()

X = load_fixture("pinched-cylinder")
print("cells per degree:", [X.num_cells(k) for k in range(3)],
      "labels:", X.labels(1))

for field in (F2, F3, QQ):
    fc = X.instantiate(field)
    rep = diagnose(fc, 1)
    print(f"\nover {field.name()}: all nine statements ->",
          rep.consensus, "| dims:", rep.dims)

print("\n-- F_2: existence fails for [a] --")
fc2 = X.instantiate(F2)
a = Chain(F2, 1, [1, 0])
try:
    harmonic_representative(fc2, a)
except NotHarmonicComplex as err:
    print("unique-representative query refused:", err)
hs = har_set(fc2, a)
print("representative set of [a]:", hs.representative)

print("\n-- F_2: uniqueness fails for [0] --")
hs0 = har_set(fc2, Chain(F2, 1, [0, 0]))
print("harmonic representatives of the trivial class:",
      sorted(m.coefficients for m in hs0.members()))
q = representable_subspace(fc2, 1)
print(f"representable classes: dim {q.dim_qk} of {q.dim_qk + q.codim} "
      f"(codimension {q.codim})")

print("\n-- F_3: everything works --")
fc3 = X.instantiate(F3)
h = harmonic_representative(fc3, Chain(F3, 1, [1, 0]))
print("harmonic representative of [a]: coefficients", h.coefficients,
      "= 2a + b")
hd = hodge_decomposition(fc3, 1)
print("Hodge pieces: harmonic", hd.harmonic_basis.columns(),
      "boundaries", hd.boundary_basis.columns(),
      "coboundaries", hd.coboundary_basis.columns())
try:
    hodge_decomposition(fc2, 1)
except NoDecomposition as err:
    print("over F_2 the decomposition is refused on the", err.side, "side")

print("\n-- the subdivided cylinder: existence without uniqueness --")
Y = load_fixture("subdivided-cylinder")
gc = Y.instantiate(F2)
z = Chain(F2, 1, [0, 0, 1, 1, 0])  # b + b'
hsb = har_set(gc, z)
print("representatives of [b+b']:",
      sorted(m.coefficients for m in hsb.members()),
      "(cells ordered", Y.labels(1), ")")
e = [0, 0, 0, 0, 1]
print("Laplacian kills the subdividing edge e:",
      laplacian(gc, 1).apply(e) == [0] * 5,
      "| yet e is not even a cycle:", gc.boundary(1).apply(e))
