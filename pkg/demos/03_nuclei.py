#!/usr/bin/env python3
"""Middle and right nuclei: brute force vs closed forms.

The middle nucleus {Z : Z C in C} and right nucleus {Y : C Y in C} are
equivalence invariants.  Each is computed here twice: as the nullspace
of a linear system (no codeword enumeration), and from closed-form
descriptions valid under hypothesis flags.  The report carries both and
an elementwise agreement verdict.

The last section shows a parameter cell where the closed form is
genuinely wrong: k = 1 with h = s k makes the twist a left substitution
(H = (X + eta X^(q^s)) o G), so the right nucleus is conjugate to the
full scalar field and has order q^(n r) = 81, not q^gcd(h, n) = 3.
The library reports agree=False rather than hiding the finding.
"""

from rankmetric import (
    CodeParams,
    field_create,
    middle_report,
    nucleus_field_structure,
    right_report,
    subspace_poly,
)
from rankmetric.nuclei import hypothesis_check, subfield_fq_basis

# The classic picture: U_S = F_8 inside F_64, untwisted Gabidulin code.
f64 = field_create(2, 1, 6)
S8 = subspace_poly(f64, subfield_fq_basis(f64, 3))
p_gab = CodeParams(f64, m=3, k=1, s=1, h=0, eta=0)

mid = middle_report(p_gab, S8)
rig = right_report(p_gab, S8)
print("U_S = F_8 Gabidulin code:")
print(f"  middle nucleus: order {mid.bruteforce_order}, predicted {mid.predicted_order}, "
      f"agree={mid.agree}  ({mid.predicted_description})")
print(f"  right nucleus:  order {rig.bruteforce_order}, predicted {rig.predicted_order}, "
      f"agree={rig.agree}  (ell={rig.ell}, r={rig.r})")
print("  middle is a field:", nucleus_field_structure(mid, f64))
print("  right is a field: ", nucleus_field_structure(rig, f64),
      " (a 2x2 matrix ring over F_8 has zero divisors)")
print()

# Twisted codes over F_81 with a generic 3-dimensional S.
f81 = field_create(3, 1, 4)
xi = f81.generator
S = subspace_poly(f81, [1, xi, f81.pow(xi, 2)])
for h in (2, 3):
    params = CodeParams(f81, m=3, k=1, s=1, h=h, eta=xi)
    mid = middle_report(params, S)
    rig = right_report(params, S)
    print(f"twist h={h}: middle order {mid.bruteforce_order} (agree={mid.agree}), "
          f"right order {rig.bruteforce_order} (agree={rig.agree})")
print()

# Hypothesis flags decide when predictions are issued at all.  The cell
# (m, k) = (4, 2) with a nonzero twist is a recorded open case: the
# report then carries the brute-force nucleus alone.
f243 = field_create(3, 1, 5)
w = f243.generator
p_open = CodeParams(f243, m=4, k=2, s=1, h=1, eta=w)
S_open = subspace_poly(f243, [1, w, f243.pow(w, 2), f243.pow(w, 3)])
flags = hypothesis_check(p_open, S_open)
rig = right_report(p_open, S_open)
print(f"(m,k)=(4,2), eta != 0: open_case={flags['open_case']}, "
      f"predicted_order={rig.predicted_order}, brute-force order={rig.bruteforce_order}")
print()

# The degenerate twist: closed form vs truth.
p_deg = CodeParams(f81, m=3, k=1, s=1, h=1, eta=xi)  # h = s k
rig = right_report(p_deg, S)
print(f"degenerate h = s k: predicted order {rig.predicted_order}, "
      f"brute force found {rig.bruteforce_order}, agree={rig.agree}")
