import random
from fractions import Fraction as F

import pytest

from sylvdet.algebra import Polynomial, poly_eval, poly_from_roots
from sylvdet.determinant import (
    a_family_check,
    b_leading_coefficient_check,
    bareiss_determinant,
    charpoly,
    charpoly_oracle,
    dense_charpoly,
    induction_check,
    shift_compose,
    verify_family,
)
from sylvdet.errors import Unsupported
from sylvdet.families import (
    FamilyId,
    DualHahnParams,
    KrawtchoukParams,
    QRacahParams,
    SylvesterBParams,
    TridiagonalSpec,
    build_matrix,
    sample_params,
    shifted_family,
)

QR_SAMPLE = QRacahParams(F(1, 2), F(1, 3), F(1, 5), F(1, 7))


def random_spec(rng: random.Random, dim: int) -> TridiagonalSpec:
    draw = lambda: F(rng.randint(-9, 9), rng.randint(1, 9))
    return TridiagonalSpec(
        dim,
        tuple(draw() for _ in range(dim)),
        tuple(draw() for _ in range(dim - 1)),
        tuple(draw() for _ in range(dim - 1)),
    )


def test_charpoly_dim_1():
    spec = TridiagonalSpec(1, (F(5, 3),), (), ())
    assert charpoly(spec) == Polynomial([F(5, 3), 1])


def test_charpoly_sylvester_d_dim_2():
    # 2x2 cofactor expansion of tI + D gives t^2 - 1
    assert charpoly(build_matrix(FamilyId.SYLVESTER_D, 2)) == Polynomial([-1, 0, 1])


def test_charpoly_krawtchouk_dim_2_p_cancels():
    for p in (F(1, 3), F(-5, 2)):
        spec = build_matrix(FamilyId.KRAWTCHOUK, 2, KrawtchoukParams(p))
        assert charpoly(spec) == Polynomial([0, 1, 1])


def test_bareiss_hand_values():
    assert bareiss_determinant([[F(2)]]) == 2
    assert bareiss_determinant([[1, 2], [3, 4]]) == -2
    assert bareiss_determinant([[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]]) == F(1, 14) - F(1, 15)
    # singular
    assert bareiss_determinant([[1, 1], [1, 1]]) == 0
    # needs a row swap at the first pivot
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    # 3x3 checked against the rule of Sarrus
    m = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
    assert bareiss_determinant(m) == 2 * (3 - 2) - 0 + 1 * (1 - 3)


def test_oracle_sylvester_d_dim_3():
    assert charpoly_oracle(build_matrix(FamilyId.SYLVESTER_D, 3)) == Polynomial([0, -4, 0, 1])


def test_oracle_dim_1():
    spec = TridiagonalSpec(1, (F(-7, 2),), (), ())
    assert charpoly_oracle(spec) == Polynomial([F(-7, 2), 1])


def test_oracle_equivalence_random_specs():
    rng = random.Random(2024)
    for _ in range(60):
        spec = random_spec(rng, rng.randint(1, 9))
        assert charpoly(spec) == charpoly_oracle(spec)


def test_charpoly_monic_of_degree_dim():
    rng = random.Random(77)
    for _ in range(20):
        spec = random_spec(rng, rng.randint(1, 10))
        p = charpoly(spec)
        assert p.is_monic() and p.degree == spec.dim


def test_dense_charpoly_matches_tridiagonal_paths():
    rng = random.Random(99)
    for _ in range(10):
        spec = random_spec(rng, rng.randint(1, 7))
        n = spec.dim
        rows = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = spec.diag[i]
            if i + 1 < n:
                rows[i][i + 1] = spec.sup[i]
                rows[i + 1][i] = spec.sub[i]
        assert dense_charpoly(rows) == charpoly(spec)


def test_verify_sylvester_d_dim_5():
    r = verify_family(FamilyId.SYLVESTER_D, 5)
    assert r.closed_match and r.oracle_match and r.passed
    assert r.closed_form == poly_from_roots([-4, -2, 0, 2, 4])


def test_verify_dual_hahn_dim_1():
    r = verify_family(FamilyId.DUAL_HAHN, 1, DualHahnParams(F(9, 4), F(-2, 3)))
    assert r.charpoly == Polynomial([0, 1])
    assert r.closed_match and r.oracle_match and r.x_match


def test_verify_qracah_sampled():
    r = verify_family(FamilyId.Q_RACAH, 3, sample_params(FamilyId.Q_RACAH, 3, 8))
    assert r.closed_match and r.oracle_match


def test_ansatz_families_have_root_zero():
    for family in (FamilyId.KRAWTCHOUK, FamilyId.DUAL_HAHN, FamilyId.HAHN,
                   FamilyId.RACAH, FamilyId.Q_RACAH):
        for dim in (1, 3, 6):
            params = sample_params(family, dim, 17)
            assert poly_eval(charpoly(build_matrix(family, dim, params)), 0) == 0


def test_krawtchouk_charpoly_independent_of_p():
    for dim in (2, 5, 9):
        polys = {
            charpoly(build_matrix(FamilyId.KRAWTCHOUK, dim, sample_params(FamilyId.KRAWTCHOUK, dim, s)))
            for s in range(5)
        }
        assert len(polys) == 1


def test_induction_sylvester_d_dim_3():
    # t^3 - 4t = (t-2)(t+2) * t
    assert induction_check(FamilyId.SYLVESTER_D, 3)


def test_induction_krawtchouk_dim_2():
    assert induction_check(FamilyId.KRAWTCHOUK, 2, KrawtchoukParams(F(1, 3)))


def test_induction_qracah_dim_3():
    assert induction_check(FamilyId.Q_RACAH, 3, QR_SAMPLE)


def test_induction_unsupported_for_a():
    with pytest.raises(Unsupported):
        induction_check(FamilyId.SYLVESTER_A, 4)


def test_shift_compose_matches_manual_expansion():
    shift = shifted_family(FamilyId.KRAWTCHOUK, 2, KrawtchoukParams(F(1, 3)))
    child = charpoly(build_matrix(FamilyId.KRAWTCHOUK, 1, KrawtchoukParams(F(1, 3))))
    # child is t; composed: t * (t + 1)
    assert shift_compose(shift, child) == Polynomial([0, 1, 1])


def test_b_leading_coefficient_dim_1():
    assert b_leading_coefficient_check(1, F(4, 7))


def test_b_leading_coefficient_dim_2():
    # coefficient of a^2 in B_2(3a) is 8 = D_2(3) = 3^2 - 1
    assert b_leading_coefficient_check(2, F(3))


def test_b_leading_coefficient_sweep():
    rng = random.Random(6)
    for dim in range(1, 11):
        x0 = F(rng.randint(-12, 12), rng.randint(1, 12))
        assert b_leading_coefficient_check(dim, x0)


def test_a_family_dim_2_by_hand():
    # x(x-2) + 1 = (x-1)^2
    assert charpoly(build_matrix(FamilyId.SYLVESTER_A, 2)) == Polynomial([1, -2, 1])
    assert a_family_check(2)


def test_a_family_sweep():
    for dim in range(1, 13):
        assert a_family_check(dim)


# --- printed (pre-correction) variants must fail reproducibly -------------

def test_paper_literal_dual_hahn_degree_witness():
    r = verify_family(FamilyId.DUAL_HAHN, 1, DualHahnParams(F(1, 2), F(1, 3)),
                      paper_literal=True)
    assert r.closed_match and r.oracle_match  # the t-level claim is fine
    assert r.x_match is False
    assert "degree" in r.witness


def test_paper_literal_racah_fails_dim_2():
    r = verify_family(FamilyId.RACAH, 2, sample_params(FamilyId.RACAH, 2, 4),
                      paper_literal=True)
    assert not r.closed_match
    assert not r.passed


def test_paper_literal_qracah_fails_dim_2():
    r = verify_family(FamilyId.Q_RACAH, 2, QRacahParams(F(1, 2), F(1, 3), F(1, 5), F(1, 7)),
                      paper_literal=True)
    # the misprinted matrix still agrees with its own oracle, but not with
    # the product closed form
    assert r.oracle_match and not r.closed_match
    assert not r.passed


def test_paper_literal_qracah_minimal_counterexample():
    # frozen from the corrections ledger: dim 2, (q,a,b,c) = (1/2,1/3,1/5,1/7);
    # the product form requires the root 2/7, the misprinted matrix yields -12/413
    spec = build_matrix(FamilyId.Q_RACAH, 2, QR_SAMPLE, paper_literal=True)
    assert charpoly(spec) == Polynomial([0, F(12, 413), 1])
    spec = build_matrix(FamilyId.Q_RACAH, 2, QR_SAMPLE)
    assert charpoly(spec) == Polynomial([0, F(-2, 7), 1])


def test_paper_literal_krawtchouk_induction_fails():
    assert induction_check(FamilyId.KRAWTCHOUK, 2, KrawtchoukParams(F(1, 3)),
                           paper_literal=True) is False


def test_induction_fails_on_perturbed_parent():
    params = sample_params(FamilyId.DUAL_HAHN, 4, 9)
    shift = shifted_family(FamilyId.DUAL_HAHN, 4, params)
    child = charpoly(build_matrix(FamilyId.DUAL_HAHN, 3, shift.child_params))
    parent_spec = build_matrix(FamilyId.DUAL_HAHN, 4, params)
    assert charpoly(parent_spec) == shift_compose(shift, child)
    bumped = TridiagonalSpec(
        4, (parent_spec.diag[0] + 1,) + parent_spec.diag[1:], parent_spec.sup, parent_spec.sub
    )
    assert charpoly(bumped) != shift_compose(shift, child)
