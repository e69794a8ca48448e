"""Middle and right nuclei: brute-force solves and closed-form predictions.

The middle nucleus of a linear code C in F_q^(m x n) is
{Z in F_q^(m x m) : Z C in C for all C}, the right nucleus is
{Y in F_q^(n x n) : C Y in C for all C}; both are F_q-algebras whose
orders are equivalence invariants (elsewhere: left/right idealisers).

Brute force never enumerates codewords: "Z B_t in code" is linear in
the entries of Z once membership is expressed through a basis of the
dual space, so each nucleus is the nullspace of a stacked constraint
system (nk (mn - nk) rows, m^2 or n^2 unknowns).

The closed forms, valid under hypothesis flags computed by
``hypothesis_check``:

* middle: {c X : c in F_{q^t}} with t the largest ell such that U_S is
  F_{q^ell}-linear (untwisted), and t = gcd(n, s k - h, ell) for a
  nonzero twist eta;
* right (needs 1 in S, else normalize S by alpha_1): with ell minimal
  such that U_S lies in F_{q^ell} and r = n/ell, the set
  {sum_i c_i X^(q^(i ell))}, each c_i free for eta = 0 and constrained
  by eta c_i^(q^h) = eta^(q^(i ell)) c_i otherwise.

Parameter cells recorded as open (m = k+1 or (m,k) = (4,2) on the right;
a short list on the middle side) never get a prediction: the report then
carries the brute-force nucleus alone, usable as an experimental probe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import _linalg
from .errors import (
    EnumerationGuardError,
    HypothesisNotMetError,
    OneNotInSError,
)
from .linpoly import (
    LinearizedPoly,
    SubspaceSpec,
    poly_to_matrix,
    subspace_poly,
)
from .rankcode import RankCode, CodeParams, build_gtg, project_code, mat_vec, vec_mat, mat_rank, mat_mul

SPAN_GUARD = 1 << 20
_ELEMENTWISE_CAP = 1 << 13


# ----------------------------------------------------------------------------
# brute force
# ----------------------------------------------------------------------------

def _standard_basis(gf, dim):
    out = []
    for i in range(dim):
        v = [0] * dim
        v[i] = gf.one
        out.append(tuple(v))
    return out


def _nucleus_solve(code: RankCode, side: str):
    """Nullspace of the membership constraints; side 'middle' or 'right'."""
    gf = code.gf
    m, n = code.m, code.n
    unknowns = m * m if side == "middle" else n * n
    parity = code.parity_rows()
    if not parity:
        return _standard_basis(gf, unknowns)
    if gf.e == 1:
        p = gf.p
        hr = np.array(parity, dtype=np.int64).reshape(len(parity), m, n)
        blocks = []
        for b in code.basis:
            bnp = np.array(b, dtype=np.int64)
            if side == "middle":
                # unknown Z (i,l):  sum_j H[r,i,j] B[l,j]
                block = np.einsum("rij,lj->ril", hr, bnp) % p
                blocks.append(block.reshape(len(parity), m * m))
            else:
                # unknown Y (l,j):  sum_i H[r,i,j] B[i,l]
                block = np.einsum("rij,il->rlj", hr, bnp) % p
                blocks.append(block.reshape(len(parity), n * n))
        system = np.concatenate(blocks, axis=0)
        return [tuple(int(x) for x in v) for v in _linalg.modp_nullspace(system, p)]
    rows = []
    for b in code.basis:
        for hrow in parity:
            if side == "middle":
                row = [0] * (m * m)
                for i in range(m):
                    for l in range(m):
                        acc = 0
                        for j in range(n):
                            acc = gf.add(acc, gf.mul(hrow[i * n + j], b[l][j]))
                        row[i * m + l] = acc
            else:
                row = [0] * (n * n)
                for l in range(n):
                    for j in range(n):
                        acc = 0
                        for i in range(m):
                            acc = gf.add(acc, gf.mul(hrow[i * n + j], b[i][l]))
                        row[l * n + j] = acc
            rows.append(row)
    return [tuple(v) for v in _linalg.generic_nullspace(rows, gf)]


def span_matrices(gf, basis, cap=SPAN_GUARD):
    """All F_q-combinations of the basis matrices (guarded)."""
    if not basis:
        return frozenset()
    if gf.q ** len(basis) > cap:
        raise EnumerationGuardError(
            f"span has q^{len(basis)} elements, above cap {cap}")
    rows, cols = len(basis[0]), len(basis[0][0])
    from .rankcode import mat_add, mat_scale, mat_zero
    out = {mat_zero(rows, cols)}
    for b in basis:
        layer = set()
        for c in gf.fq_list():
            cb = mat_scale(gf, c, b)
            for x in out:
                layer.add(mat_add(gf, x, cb))
        out = layer
    return frozenset(out)


def spans_equal(gf, basis_a, basis_b) -> bool:
    """Set equality of two F_q-spans of matrices."""
    if len(basis_a) != len(basis_b):
        va = [list(mat_vec(b)) for b in basis_a]
        vb = [list(mat_vec(b)) for b in basis_b]
        if _linalg.fq_rank(va, gf) != _linalg.fq_rank(vb, gf):
            return False
    dim = gf.q ** max(len(basis_a), 1)
    if dim <= _ELEMENTWISE_CAP and gf.q ** max(len(basis_b), 1) <= _ELEMENTWISE_CAP:
        return span_matrices(gf, basis_a) == span_matrices(gf, basis_b)
    rows = [list(mat_vec(b)) for b in basis_a]
    rank_a = _linalg.fq_rank(rows, gf)
    if rank_a != _linalg.fq_rank([list(mat_vec(b)) for b in basis_b], gf):
        return False
    joint = rows + [list(mat_vec(b)) for b in basis_b]
    return _linalg.fq_rank(joint, gf) == rank_a


# ----------------------------------------------------------------------------
# structural quantities of S
# ----------------------------------------------------------------------------

def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def largest_linearity_field(S: SubspaceSpec) -> int:
    """Largest ell (a divisor of n) with F_{q^ell} U_S = U_S."""
    gf = S.gf
    pts = S.subspace_set()
    for ell in sorted(_divisors(gf.n), reverse=True):
        if gf.q ** ell > gf.order:
            continue
        g = _subfield_generator(gf, ell)
        # F_{q^ell} = F_q[g], so closure under g suffices
        if all(gf.mul(g, a) in pts for a in S.alphas):
            return ell
    return 1


def smallest_containing_subfield(S: SubspaceSpec) -> int:
    """Smallest ell with U_S inside F_{q^ell} (always divides n)."""
    gf = S.gf
    for ell in _divisors(gf.n):
        if all(gf.frobenius(a, ell) == a for a in S.alphas):
            return ell
    return gf.n


def _subfield_generator(gf, ell):
    """An element generating F_{q^ell} over F_q (multiplicative order
    q^ell - 1, hence F_q[g] = F_{q^ell})."""
    size = gf.q ** ell
    if size == 2:
        return 1
    return gf.pow(gf.generator, (gf.order - 1) // (size - 1))


def subfield_fq_basis(gf, ell):
    """(1, g, ..., g^(ell-1)): an F_q-basis of F_{q^ell}."""
    g = _subfield_generator(gf, ell)
    return tuple(gf.pow(g, t) for t in range(ell))


# ----------------------------------------------------------------------------
# hypothesis flags
# ----------------------------------------------------------------------------

def hypothesis_check(params: CodeParams, S: SubspaceSpec) -> dict:
    """Named conditions gating the closed-form nucleus results, plus the
    open-case registry.  Predictions are issued only when the matching
    *_enabled flag is true."""
    gf = params.gf
    n, m, k, s, h = gf.n, params.m, params.k, params.s, params.h
    eta = params.eta
    eta_zero = eta == 0

    flags = {
        "eta_zero": eta_zero,
        "m_gt_k_plus_1": m > k + 1,
        "not_m4k2": (m, k) != (4, 2),
    }
    mono_b = (not eta_zero) and flags["m_gt_k_plus_1"] and flags["not_m4k2"]
    flags["right_mono_a"] = eta_zero
    flags["right_mono_b"] = mono_b
    flags["middle_mono_a"] = eta_zero
    flags["middle_mono_b"] = mono_b

    # conditioned middle lemma, with the second code taken equal to the first
    flags["middle_case_a"] = (not eta_zero and k == 1 and m == 2
                              and (2 * h) % n != 0 and h % n != 0)
    flags["middle_case_b"] = not eta_zero and k == 2 and h % n != 0
    if not eta_zero and k == 2 and m == 4 and n == 4:
        v = gf.mul(gf.mul(gf.frobenius(eta, 2 * s), eta),
                   gf.mul(gf.frobenius(eta, 3 * s), gf.frobenius(eta, s)))
        flags["middle_case_c"] = v != gf.one
    else:
        flags["middle_case_c"] = False
    flags["middle_case_d"] = (not eta_zero and k > 2 and m == k + 1
                              and h % n != 0)

    flags["open_case_right"] = (not eta_zero) and (m == k + 1 or (m, k) == (4, 2))
    flags["open_case_middle"] = (not eta_zero) and (
        (k == 1 and m == 2 and n == 2 * h)
        or (k == 2 and m == 3 and h % n == 0)
        or (k == 2 and m == 4 and n > m)
        or (k > 2 and m == k + 1 and h % n == 0))
    flags["open_case"] = flags["open_case_right"] or flags["open_case_middle"]

    middle_any = (flags["middle_mono_b"] or flags["middle_case_a"]
                  or flags["middle_case_b"] or flags["middle_case_c"]
                  or flags["middle_case_d"])
    flags["middle_enabled"] = eta_zero or (middle_any and not flags["open_case_middle"])
    flags["right_enabled"] = eta_zero or (mono_b and not flags["open_case_right"])
    return flags


# ----------------------------------------------------------------------------
# predictions
# ----------------------------------------------------------------------------

def predict_middle_nucleus(params: CodeParams, S: SubspaceSpec):
    """Predicted middle nucleus {c X : c in F_{q^t}} as matrices acting on
    U_S in the alpha basis.  Raises HypothesisNotMetError outside the
    enabled region."""
    gf = params.gf
    flags = hypothesis_check(params, S)
    ell = largest_linearity_field(S)
    if params.eta == 0:
        t = ell
    else:
        if not flags["middle_enabled"]:
            failed = [name for name in
                      ("middle_mono_b", "middle_case_a", "middle_case_b",
                       "middle_case_c", "middle_case_d")
                      if not flags[name]]
            if flags["open_case_middle"]:
                failed.append("open_case_middle")
            raise HypothesisNotMetError("middle-nucleus prediction unavailable",
                                        failed_flags=failed)
        t = gcd(gcd(gf.n, abs(params.s * params.k - params.h)), ell)
    basis = []
    for c in subfield_fq_basis(gf, t):
        rows = []
        for a in S.alphas:
            coords = S.alpha_coords(gf.mul(c, a))
            assert coords is not None, "scalar image left U_S"
            rows.append(coords)
        basis.append(tuple(rows))
    return {
        "t": t,
        "ell_mid": ell,
        "order": gf.q ** t,
        "basis": tuple(basis),
        "description": f"{{c X : c in F_{{q^{t}}}}} acting on U_S",
    }


def predict_right_nucleus(params: CodeParams, S: SubspaceSpec):
    """Predicted right nucleus in polynomial and matrix form; needs 1 in S
    (callers may normalize first).  Raises HypothesisNotMetError or
    OneNotInSError."""
    gf = params.gf
    if gf.one not in S.alphas:
        raise OneNotInSError("right-nucleus prediction needs 1 in S; "
                             "normalize S by alpha_1 first")
    flags = hypothesis_check(params, S)
    if not flags["right_enabled"]:
        failed = [name for name in ("right_mono_a", "right_mono_b") if not flags[name]]
        if flags["open_case_right"]:
            failed.append("open_case_right")
        raise HypothesisNotMetError("right-nucleus prediction unavailable",
                                    failed_flags=failed)
    ell = smallest_containing_subfield(S)
    r = gf.n // ell
    polys = []
    order = 1
    coeff_spaces = []
    for i in range(r):
        if params.eta == 0:
            coeff_basis = list(gf.power_basis())
        else:
            target = gf.frobenius(params.eta, i * ell)
            sols = [c for c in range(gf.order)
                    if gf.mul(params.eta, gf.frobenius(c, params.h)) == gf.mul(target, c)]
            coeff_basis = _fq_basis_of(gf, sols)
        coeff_spaces.append(len(coeff_basis))
        order *= gf.q ** len(coeff_basis)
        for c in coeff_basis:
            polys.append(LinearizedPoly.monomial(gf, c, (i * ell) % gf.n))
    mats = tuple(poly_to_matrix(phi) for phi in polys)
    if params.eta == 0:
        desc = f"{{sum c_i X^(q^(i*{ell})) : c_i in F_{{q^{gf.n}}}}}"
    else:
        desc = (f"{{sum c_i X^(q^(i*{ell})) : eta c_i^(q^{params.h}) "
                f"= eta^(q^(i*{ell})) c_i}}")
    return {
        "ell_right": ell,
        "r": r,
        "order": order,
        "coeff_dims": coeff_spaces,
        "polys": tuple(polys),
        "basis": mats,
        "description": desc,
    }


def _fq_basis_of(gf, elements):
    """Deterministic F_q-basis of an F_q-subspace given by its elements."""
    rows = [list(gf.vec_repr(x)) for x in sorted(elements) if x != 0]
    if not rows:
        return []
    rref, pivots = _linalg.fq_rref(rows, gf)
    return [gf.from_vec(rref[i]) for i in range(len(pivots))]


# ----------------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------------

@dataclass
class NucleusReport:
    kind: str
    bruteforce_basis: tuple
    bruteforce_order: int
    hypothesis_flags: dict = field(default_factory=dict)
    predicted_order: int | None = None
    predicted_basis: tuple | None = None
    predicted_description: str | None = None
    agree: bool | None = None
    t: int | None = None
    ell: int | None = None
    r: int | None = None
    normalized: bool = False

    def to_json(self, gf) -> dict:
        def entry(x):
            return int(x) if gf.e == 1 else [int(d) for d in gf.coords(x)]
        out = {
            "kind": self.kind,
            "order": self.bruteforce_order,
            "basis": [[entry(x) for x in mat_vec(b)] for b in self.bruteforce_basis],
            "flags": {k: bool(v) for k, v in self.hypothesis_flags.items()},
        }
        if self.predicted_order is not None:
            out["predicted_order"] = self.predicted_order
            out["predicted"] = self.predicted_description
        if self.agree is not None:
            out["agree"] = self.agree
        if self.t is not None:
            out["t"] = self.t
        if self.ell is not None:
            out["ell_mid" if self.kind == "middle" else "ell_right"] = self.ell
        if self.r is not None:
            out["r"] = self.r
        if self.normalized:
            out["normalized"] = True
        return out


def middle_nucleus_bruteforce(code: RankCode) -> NucleusReport:
    basis_vecs = _nucleus_solve(code, "middle")
    mats = tuple(vec_mat(v, code.m, code.m) for v in basis_vecs)
    return NucleusReport("middle", mats, code.gf.q ** len(mats))


def right_nucleus_bruteforce(code: RankCode) -> NucleusReport:
    basis_vecs = _nucleus_solve(code, "right")
    mats = tuple(vec_mat(v, code.n, code.n) for v in basis_vecs)
    return NucleusReport("right", mats, code.gf.q ** len(mats))


def nucleus_field_structure(report_or_basis, gf, cap=SPAN_GUARD):
    """(is_field, order): is the span a finite field?  Checks identity
    membership, closure under multiplication, and invertibility of every
    nonzero element (a finite division ring is a field)."""
    basis = report_or_basis.bruteforce_basis if isinstance(report_or_basis, NucleusReport) else tuple(report_or_basis)
    if not basis:
        return False, None
    size = len(basis[0])
    from .rankcode import mat_identity
    rows = [list(mat_vec(b)) for b in basis]
    rref, pivots = _linalg.fq_rref(rows, gf)

    def in_span(mat):
        v = list(mat_vec(mat))
        for row, c in zip(rref, pivots):
            if v[c]:
                coef = v[c]
                v = [gf.sub(x, gf.mul(coef, y)) for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    if not in_span(mat_identity(gf, size)):
        return False, None
    for a in basis:
        for b in basis:
            if not in_span(mat_mul(gf, a, b)):
                return False, None
    elements = span_matrices(gf, basis, cap)
    zero = tuple((0,) * size for _ in range(size))
    for x in elements:
        if x != zero and mat_rank(gf, x) != size:
            return False, None
    return True, gf.q ** len(basis)


def _normalized_subspace(params: CodeParams, S: SubspaceSpec) -> SubspaceSpec:
    gf = params.gf
    a1_inv = gf.inv(S.alphas[0])
    return subspace_poly(gf, [gf.mul(a1_inv, a) for a in S.alphas])


def middle_report(params: CodeParams, S: SubspaceSpec, code: RankCode = None) -> NucleusReport:
    """Brute force + prediction + elementwise agreement for the middle side."""
    if code is None:
        code = project_code(build_gtg(params), S)
    report = middle_nucleus_bruteforce(code)
    report.hypothesis_flags = hypothesis_check(params, S)
    report.ell = largest_linearity_field(S)
    try:
        pred = predict_middle_nucleus(params, S)
    except HypothesisNotMetError:
        return report
    report.predicted_order = pred["order"]
    report.predicted_basis = pred["basis"]
    report.predicted_description = pred["description"]
    report.t = pred["t"]
    report.agree = (report.bruteforce_order == pred["order"]
                    and spans_equal(params.gf, report.bruteforce_basis, pred["basis"]))
    return report


def right_report(params: CodeParams, S: SubspaceSpec, code: RankCode = None) -> NucleusReport:
    """Brute force + prediction + elementwise agreement for the right side.
    When 1 is not in S the comparison runs on the normalized, equivalent
    code over S/alpha_1 (the orders transfer; the report says so)."""
    gf = params.gf
    normalized = gf.one not in S.alphas
    S_eff = _normalized_subspace(params, S) if normalized else S
    code_eff = project_code(build_gtg(params), S_eff) if (normalized or code is None) else code
    report = right_nucleus_bruteforce(code_eff)
    report.normalized = normalized
    report.hypothesis_flags = hypothesis_check(params, S_eff)
    report.ell = smallest_containing_subfield(S_eff)
    report.r = gf.n // report.ell
    try:
        pred = predict_right_nucleus(params, S_eff)
    except (HypothesisNotMetError, OneNotInSError):
        return report
    report.predicted_order = pred["order"]
    report.predicted_basis = pred["basis"]
    report.predicted_description = pred["description"]
    report.agree = (report.bruteforce_order == pred["order"]
                    and spans_equal(gf, report.bruteforce_basis, pred["basis"]))
    return report


# ----------------------------------------------------------------------------
# testable consequences of the mono-to-mono lemmas
# ----------------------------------------------------------------------------

def right_element_sends_monomials_to_monomials(Y, S: SubspaceSpec, s: int) -> bool:
    """Does the right-nucleus element Y (n x n over F_q) send every a X to
    a scalar multiple of X mod theta_S?  Y is read in row convention.
    It suffices to check a over a field basis: for fixed support index,
    the reduced coefficient is F_q-linear in a."""
    from .linpoly import matrix_to_poly, reduce_mod_theta, LinearizedPoly as LP
    gf = S.gf
    phi = matrix_to_poly(gf, Y)
    for a in gf.power_basis():
        red = reduce_mod_theta(phi.compose(LP.monomial(gf, a, 0)), S, s)
        if any(c != 0 for c in red[1:]):
            return False
    return True


def middle_element_is_scalar_on_span(Z, S: SubspaceSpec):
    """If the middle-nucleus element Z acts on U_S as u -> b u, return b,
    else None.  Z rows give images of the alphas in alpha coordinates."""
    gf = S.gf
    images = []
    for i in range(S.m):
        img = 0
        for j in range(S.m):
            img = gf.add(img, gf.mul(Z[i][j], S.alphas[j]))
        images.append(img)
    b = gf.mul(images[0], gf.inv(S.alphas[0]))
    for img, a in zip(images, S.alphas):
        if img != gf.mul(b, a):
            return None
    return b
