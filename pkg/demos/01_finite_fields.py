#!/usr/bin/env python3
"""Tour of the exact field arithmetic layer.

Builds F_81 = F_3[x]/(f) with a deterministic modulus and generator,
then walks through Frobenius powers, relative norms, the subfield
lattice, and coordinate vectors over the ground field.
"""

from rankmetric import field_create

# Creating a field spec.  Without an explicit modulus the smallest monic
# irreducible (constant-term-first lexicographic order) is selected, so
# this is reproducible across machines.
f81 = field_create(3, 1, 4)
print("F_81 modulus (constant term first):", list(f81.modulus))
print("generator xi coordinates:", list(f81.coords(f81.generator)))
print("multiplicative order of xi:", f81.multiplicative_order(f81.generator))
print()

# Elements are packed integers; arithmetic goes through the spec.
xi = f81.generator
a = f81.add(f81.mul(xi, xi), f81.one)      # xi^2 + 1
print("xi^2 + 1 ->", list(f81.coords(a)))
print("its inverse ->", list(f81.coords(f81.inv(a))))
print("product with inverse:", f81.mul(a, f81.inv(a)) == f81.one)
print()

# Frobenius x -> x^q generates the Galois group; applying it n times is
# the identity.
print("xi^(q^j) for j = 0..3:")
for j in range(4):
    print(f"  j={j}:", list(f81.coords(f81.frobenius(xi, j))))
print("frobenius(xi, 4) == xi:", f81.frobenius(xi, 4) == xi)
print()

# The relative norm multiplies the q^(s i)-powers together and always
# lands in F_q.  Non-squares of F_81 have norm -1; this is what makes
# twisted codes possible at q = 3 and impossible at q = 2.
print("norm of xi (a non-square):", list(f81.coords(f81.relative_norm(xi, 1))))
print("norm of xi^2 (a square):  ", list(f81.coords(f81.relative_norm(f81.mul(xi, xi), 1))))
print()

# Subfield lattice of F_64: one subfield per divisor of 6.
f64 = field_create(2, 1, 6)
for ell in (1, 2, 3, 6):
    print(f"subfield F_(2^{ell}) inside F_64 has", len(f64.subfield_elements(ell)), "elements")
print()

# Coordinates over F_q in the power basis (1, xi, ..., xi^(n-1)).
b = f81.add(f81.mul(xi, xi), xi)
print("coordinates of xi^2 + xi:", f81.vec_repr(b))
