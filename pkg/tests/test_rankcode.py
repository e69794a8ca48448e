import random

import pytest

from rankmetric.errors import (
    DimensionCollapseError,
    EnumerationGuardError,
    NormConditionError,
    NotSquareError,
    ParamError,
    ShapeMismatchError,
    SingularMatrixError,
)
from rankmetric.linpoly import LinearizedPoly, subspace_poly
from rankmetric.rankcode import (
    CodeParams,
    RankCode,
    adjoint,
    apply_equivalence,
    build_gtg,
    is_mrd,
    mat_identity,
    mat_rank,
    min_distance,
    project_code,
    rank_distance,
    rank_weight_distribution,
)


def generic_subspace(gf, m):
    xi = gf.generator
    return subspace_poly(gf, [gf.pow(xi, i) for i in range(m)])


def random_gl(gf, n, rng):
    from rankmetric.rankcode import mat_is_invertible
    while True:
        mat = tuple(tuple(rng.choice(gf.fq_list()) for _ in range(n)) for _ in range(n))
        if mat_is_invertible(gf, mat):
            return mat


# -- parameters ---------------------------------------------------------------

def test_params_validation(f81):
    xi = f81.generator
    CodeParams(f81, 3, 1, 1, 1, xi)  # fine
    with pytest.raises(ParamError):
        CodeParams(f81, 3, 3, 1, 0, 0)  # k >= m
    with pytest.raises(ParamError):
        CodeParams(f81, 5, 1, 1, 0, 0)  # m > n
    with pytest.raises(ParamError):
        CodeParams(f81, 3, 1, 2, 0, 0)  # gcd(s, n) != 1
    with pytest.raises(ParamError):
        CodeParams(f81, 3, 1, 1, 4, 0)  # h out of range


def test_norm_condition_q2(f16):
    # at q = 2 the relative norm of any nonzero element is 1 = (-1)^(nk)
    with pytest.raises(NormConditionError) as info:
        CodeParams(f16, 3, 1, 1, 1, f16.generator)
    assert info.value.norm_value == f16.one


def test_norm_condition_q3_nonsquare_accepted(f81):
    # nk even, so the twist needs norm != 1; a non-square has norm -1
    params = CodeParams(f81, 3, 1, 1, 1, f81.generator)
    assert params.eta == f81.generator


def test_gabidulin_slots(f81):
    params = CodeParams(f81, 3, 2, 1, 0, 0)
    gens = build_gtg(params)
    assert gens.slot_poly(0, 1) == LinearizedPoly.identity(f81)
    assert gens.slot_poly(1, 1) == LinearizedPoly.monomial(f81, 1, 1)
    assert len(gens.expand()) == f81.n * params.k


def test_twisted_slot_contains_twist(f81):
    xi = f81.generator
    params = CodeParams(f81, 3, 1, 1, 2, xi)
    f = build_gtg(params).slot_poly(0, xi)
    # coefficient at X is xi, at X^(q^(sk)) = X^q it is eta * xi^(q^h)
    assert f.coeffs[0] == xi
    assert f.coeffs[1] == f81.mul(xi, f81.frobenius(xi, 2))
    assert all(c == 0 for c in f.coeffs[2:])


# -- projection ---------------------------------------------------------------

def test_project_zero_is_zero_matrix(f81):
    S = generic_subspace(f81, 3)
    row = tuple(f81.vec_repr(LinearizedPoly.zero(f81)(a)) for a in S.alphas)
    assert row == tuple((0,) * 4 for _ in range(3))


def test_project_dimension_and_count(f81):
    xi = f81.generator
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    assert code.dim == 4
    words = list(code.codewords())
    assert len(words) == 81
    assert len(set(words)) == 81


def test_project_square_code(f16):
    S = subspace_poly(f16, f16.power_basis())
    code = project_code(build_gtg(CodeParams(f16, 4, 1, 1, 0, 0)), S)
    assert code.dim == 4
    assert code.m == code.n == 4


def test_projection_collapse_detected(f81):
    S = generic_subspace(f81, 3)
    xi = f81.generator
    dependent = [LinearizedPoly.identity(f81),
                 LinearizedPoly.monomial(f81, xi, 0),
                 LinearizedPoly.monomial(f81, f81.mul(xi, xi), 0),
                 LinearizedPoly.monomial(f81, f81.pow(xi, 3), 0),
                 LinearizedPoly.monomial(f81, f81.pow(xi, 4), 0)]
    with pytest.raises(DimensionCollapseError):
        project_code(dependent, S)


def test_project_requires_k_below_m(f81):
    S = generic_subspace(f81, 2)
    with pytest.raises(ParamError):
        project_code(build_gtg(CodeParams(f81, 3, 2, 1, 0, 0)), S)


# -- distances ----------------------------------------------------------------

def test_rank_distance_basics(f16):
    A = ((1, 0, 1, 0), (0, 1, 0, 0), (1, 1, 1, 0))
    Z = tuple((0,) * 4 for _ in range(3))
    assert rank_distance(f16, A, A) == 0
    assert rank_distance(f16, A, Z) == mat_rank(f16, A)
    B = ((1, 0, 1, 0), (1, 0, 1, 0), (0, 1, 0, 0))  # two equal rows + one independent
    assert mat_rank(f16, B) == 2
    with pytest.raises(ShapeMismatchError):
        rank_distance(f16, A, ((1, 0), (0, 1)))


def test_min_distance_single_generator(f16):
    full = mat_identity(f16, 4)[:3]  # 3x4, rank 3
    code = RankCode(f16, 3, [tuple(tuple(r) for r in full)])
    assert min_distance(code) == 3


def test_min_distance_of_projected_gabidulin(f16):
    S = generic_subspace(f16, 3)
    code = project_code(build_gtg(CodeParams(f16, 3, 1, 1, 0, 0)), S)
    assert min_distance(code) == 3  # m - k + 1


def test_min_distance_of_twisted_code(f81):
    xi = f81.generator
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 1, xi)), S)
    assert min_distance(code) == 3


def test_enumeration_guard(f64):
    S = generic_subspace(f64, 5)
    code = project_code(build_gtg(CodeParams(f64, 5, 3, 1, 0, 0)), S)
    with pytest.raises(EnumerationGuardError):
        min_distance(code, guard=1000)


def test_is_mrd_verdicts(f16, f81):
    xi = f81.generator
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 1, xi)), S)
    verdict, cert = is_mrd(code)
    assert verdict and cert["d"] == 3 and cert["bound"] == 81

    # a single rank-1 generator in 2x2 misses the bound
    rank1 = RankCode(f16, 2, [((1, 0, 0, 0), (0, 0, 0, 0))[:2]])
    # build explicitly: 2x4 here; use a genuine 2x2-style small case over F_4
    from rankmetric.gf import field_create
    f4 = field_create(2, 1, 2)
    rank1 = RankCode(f4, 2, [((1, 0), (0, 0))])
    verdict, cert = is_mrd(rank1)
    assert not verdict and cert["d"] == 1 and cert["cardinality"] == 2

    # the full matrix space attains the bound with d = 1
    basis = []
    for i in range(2):
        for j in range(2):
            mat = [[0, 0], [0, 0]]
            mat[i][j] = 1
            basis.append(tuple(tuple(r) for r in mat))
    full = RankCode(f4, 2, basis)
    verdict, cert = is_mrd(full)
    assert verdict and cert["d"] == 1


def test_rank_weight_distribution_sums(f81):
    xi = f81.generator
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 2, xi)), S)
    hist = rank_weight_distribution(code)
    assert sum(hist) == 81
    assert hist[0] == 1
    assert hist[1] == hist[2] == 0  # MRD: everything at rank >= d = 3


# -- equivalence ---------------------------------------------------------------

def test_identity_equivalence(f81):
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    same = apply_equivalence(code, mat_identity(f81, 3), mat_identity(f81, 4))
    assert set(same.basis) == set(code.basis)


def test_equivalence_preserves_weights(f81):
    rng = random.Random(20)
    xi = f81.generator
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 2, xi)), S)
    base = rank_weight_distribution(code)
    for _ in range(5):
        A, B = random_gl(f81, 3, rng), random_gl(f81, 4, rng)
        moved = apply_equivalence(code, A, B)
        assert rank_weight_distribution(moved) == base
        assert min_distance(moved) == 3


def test_equivalence_rejects_singular(f81):
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    singular = tuple(tuple(0 for _ in range(3)) for _ in range(3))
    with pytest.raises(SingularMatrixError):
        apply_equivalence(code, singular, mat_identity(f81, 4))
    with pytest.raises(SingularMatrixError):
        apply_equivalence(code, mat_identity(f81, 3),
                          tuple(tuple(0 for _ in range(4)) for _ in range(4)))


def test_equivalence_rejects_translation(f81):
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    C = tuple(tuple(1 if (i + j) == 0 else 0 for j in range(4)) for i in range(3))
    with pytest.raises(ParamError):
        apply_equivalence(code, mat_identity(f81, 3), mat_identity(f81, 4), C)


# -- adjoint ---------------------------------------------------------------

def test_adjoint_involution(f16):
    S = subspace_poly(f16, f16.power_basis())
    code = project_code(build_gtg(CodeParams(f16, 4, 1, 1, 0, 0)), S)
    back = adjoint(adjoint(code))
    assert set(back.basis) == set(code.basis)
    assert min_distance(adjoint(code)) == min_distance(code)


def test_adjoint_of_symmetric_code(f16):
    sym = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
    code = RankCode(f16, 4, [sym])
    assert set(adjoint(code).basis) == {sym}


def test_adjoint_needs_square(f81):
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    with pytest.raises(NotSquareError):
        adjoint(code)


def test_serialization_shape(f81):
    S = generic_subspace(f81, 3)
    code = project_code(build_gtg(CodeParams(f81, 3, 1, 1, 0, 0)), S)
    blob = code.serialize()
    assert blob["q"] == 3 and blob["m"] == 3 and blob["n"] == 4
    assert len(blob["basis"]) == 4
    assert all(len(flat) == 12 for flat in blob["basis"])
    assert blob["provenance"]["family"] == "twisted_gabidulin"
