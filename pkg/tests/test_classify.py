import random
from fractions import Fraction

import numpy as np
import pytest

from matprops import (
    ClassifyConfig,
    Matrix,
    SignPartition,
    Status,
    check_gk_property,
    check_strong_pf,
    classify,
    classify_en,
    classify_ep,
    classify_esjs,
    classify_estjs,
    classify_estp,
    classify_eventually_p,
    compound,
    conjugate,
    det,
    identity,
    inverse,
    is_p_matrix,
    is_stp,
    mat_mul,
    mat_pow,
    power_search,
    shift_check,
    shifted,
    to_float,
    transpose,
)
from matprops.generators import (
    checkerboarded_tp,
    conjugated_positive,
    random_monotone,
    random_positive,
    random_stp,
    sign_conjugated_stp,
)
from oracles import naive_is_p


def exact(rows):
    return Matrix.from_rows(rows, "exact")


def fmatrix(rows):
    return Matrix.from_rows(rows, "float")


class TestPowerSearch:
    def test_persistent_from_three(self):
        a = exact([[2, 0], [0, 2]])
        result = power_search(a, lambda m: (m[0, 0] > 5, None), k_max=8)
        assert result.first_persistent == 3
        assert not result.flicker
        assert result.found

    def test_flicker_positions_reported(self):
        rotation = fmatrix([[0, 1], [-1, 0]])
        trace_nonneg = lambda m: (m[0, 0] + m[1, 1] >= 0, None)
        result = power_search(rotation, trace_nonneg, k_max=9)
        assert result.flicker
        assert not result.found

    def test_exact_cycle_proves_no(self):
        rotation = exact([[0, 1], [-1, 0]])
        result = power_search(rotation, lambda m: (is_p_matrix(m).ok, None), k_max=64)
        assert result.proven is False
        assert result.cycle == (1, 4)

    def test_exact_cycle_proves_yes(self):
        result = power_search(identity(2, "exact"), lambda m: (is_p_matrix(m).ok, None))
        assert result.proven is True
        assert result.first_persistent == 1

    def test_nilpotent_power_collapse(self):
        n = fmatrix([[0, 1], [0, 0]])
        result = power_search(n, lambda m: (all(x >= 0 for r in m.entries for x in r), None))
        assert result.found and result.first_persistent == 1


class TestClassifyEP:
    def test_ep_fixture_power_index_five(self, ep3):
        verdict = classify_ep(ep3)
        assert verdict.status is Status.YES
        assert verdict.power_index_observed == 5
        # minimality: every earlier power has a non-positive entry
        for k in range(1, 5):
            assert any(x <= 0 for row in mat_pow(ep3, k).entries for x in row)

    def test_permutation_no_with_witness(self):
        verdict = classify_ep(fmatrix([[0, 1], [1, 0]]))
        assert verdict.status is Status.NO
        assert "tie" in verdict.witness

    def test_positive_matrix_immediate(self):
        verdict = classify_ep(fmatrix([[1, 2], [3, 4]]))
        assert verdict.status is Status.YES and verdict.power_index_observed == 1

    def test_identity_no_multiplicity_witness(self):
        verdict = classify_ep(identity(3, "float"))
        assert verdict.status is Status.NO
        assert "strictly dominant" in verdict.witness
        exact_verdict = classify_ep(identity(3, "exact"))
        assert exact_verdict.status is Status.NO

    def test_diag_with_zero_eigenvector_coordinate(self):
        verdict = classify_ep(fmatrix([[3, 0], [0, 1]]))
        assert verdict.status is Status.NO
        assert "zero coordinate" in verdict.witness

    def test_consecutive_powers_note(self, ep3):
        verdict = classify_ep(ep3)
        assert any("k=5, 6" in note for note in verdict.notes)


class TestClassifyEN:
    def test_nonnegative_matrix(self):
        verdict = classify_en(fmatrix([[0, 1], [2, 0]]))
        assert verdict.status is Status.YES and verdict.power_index_observed == 1

    def test_nilpotent(self):
        verdict = classify_en(exact([[0, 1], [0, 0]]))
        assert verdict.status is Status.YES

    def test_rotation_cycle_proves_no(self):
        verdict = classify_en(exact([[0, 1], [-1, 0]]))
        assert verdict.status is Status.NO

    def test_defective_jordan_block_stays_unknown(self):
        # A^k = [[1, -k], [0, 1]] is never nonnegative, but the
        # Perron-Frobenius necessary condition holds (eigenvectors (1,0) and
        # (0,1) are nonnegative), so no sound spectral witness exists; the
        # sibling [[1,1],[0,1]] with identical spectral data IS eventually
        # nonnegative.
        verdict = classify_en(fmatrix([[1, -1], [0, 1]]))
        assert verdict.status is Status.UNKNOWN

    def test_negative_dominant_eigenvalue_no(self):
        verdict = classify_en(fmatrix([[-3, 0.5], [0.5, 1]]))
        assert verdict.status is Status.NO
        assert "negative" in verdict.witness

    def test_sign_obstructed_limit_no(self):
        # positive spectrum but the spectral projector has negative entries
        a = fmatrix([[1, -2], [-3, 4]])
        verdict = classify_en(a)
        assert verdict.status is Status.NO
        assert "negative entry" in verdict.witness


class TestClassifyESJS:
    def test_sign_conjugated_ep_fixture(self, ep3):
        d = SignPartition(3, frozenset({1, 3})).diagonal("exact")
        b = mat_mul(mat_mul(d, ep3), d)
        verdict = classify_esjs(b)
        assert verdict.status is Status.YES
        assert verdict.partitions[0].plus == frozenset({1, 3})
        assert verdict.power_index_observed == 5

    def test_ep_matrix_full_side(self, ep3_float):
        verdict = classify_esjs(ep3_float)
        assert verdict.status is Status.YES
        assert verdict.partitions[0].plus == frozenset({1, 2, 3})

    def test_jordan_block_no(self):
        verdict = classify_esjs(fmatrix([[1, 1], [0, 1]]))
        assert verdict.status is Status.NO
        assert "not simple" in verdict.witness

    def test_identity_no(self):
        verdict = classify_esjs(identity(3, "float"))
        assert verdict.status is Status.NO


class TestClassifyESTP:
    def test_estp_fixture(self, estp3):
        verdict = classify_estp(estp3)
        assert verdict.status is Status.YES
        assert verdict.power_index_observed == 3

    def test_ep_fixture(self, ep3):
        verdict = classify_estp(ep3)
        assert verdict.status is Status.YES
        assert verdict.power_index_observed == 5

    def test_complex_pair_submatrix(self, ep3):
        sub = exact([[8, 1], [-3, 9]])
        verdict = classify_estp(sub)
        assert verdict.status is Status.NO
        assert "trace 17" in verdict.witness
        assert "75" in verdict.witness and "-11" in verdict.witness

    def test_negative_determinant_no(self):
        verdict = classify_estp(fmatrix([[0, 1], [1, 0]]))
        assert verdict.status is Status.NO
        assert "det" in verdict.witness

    def test_power_index_is_max_over_compounds(self, estp3):
        verdict = classify_estp(estp3)
        sub_indices = []
        for j in (1, 2, 3):
            sub = classify_ep(compound(estp3, j))
            assert sub.status is Status.YES
            sub_indices.append(sub.power_index_observed)
        assert verdict.power_index_observed == max(sub_indices)
        assert is_stp(mat_pow(estp3, verdict.power_index_observed)).ok
        assert not is_stp(mat_pow(estp3, verdict.power_index_observed - 1)).ok


class TestClassifyESTJS:
    def test_decimal_fixture(self, stjs4):
        verdict = classify_estjs(stjs4)
        assert verdict.status is Status.YES
        assert verdict.power_index_observed == 1
        assert verdict.partitions[2].plus == frozenset({1, 2, 3})

    def test_estp_instance_gets_full_partitions(self, estp3):
        verdict = classify_estjs(estp3)
        assert verdict.status is Status.YES
        assert all(len(p.minus) == 0 for p in verdict.partitions)

    def test_permutation_no(self):
        verdict = classify_estjs(fmatrix([[0, 1], [1, 0]]))
        assert verdict.status is Status.NO


class TestClassifyEventuallyP:
    def test_estp_fixture_yes_with_oracle(self, estp3):
        verdict = classify_eventually_p(estp3)
        assert verdict.status is Status.YES
        k0 = verdict.power_index_observed
        assert naive_is_p(mat_pow(estp3, k0).rows())
        if k0 > 1:
            assert not naive_is_p(mat_pow(estp3, k0 - 1).rows())

    def test_identity(self):
        verdict = classify_eventually_p(identity(3, "exact"))
        assert verdict.status is Status.YES and verdict.power_index_observed == 1

    def test_rotation_no_in_both_backends(self):
        for backend in ("exact", "float"):
            verdict = classify_eventually_p(Matrix.from_rows([[0, 1], [-1, 0]], backend))
            assert verdict.status is Status.NO, backend

    def test_theorem_style_implication_recorded(self, stjs4):
        verdict = classify_eventually_p(stjs4)
        assert verdict.status is Status.YES
        assert any("strict total J-sign-symmetry" in note and "yes" in note
                   for note in verdict.notes)


class TestShiftAndConjugate:
    def test_shift_preserves_gk_on_estp_fixture(self, estp3_float):
        assert check_gk_property(estp3_float).outcome is True
        assert check_gk_property(shifted(estp3_float, 1.0)).outcome is True
        assert shift_check(estp3_float, 1.0)

    def test_shift_vacuous_on_diagonal(self):
        d = fmatrix([[3, 0, 0], [0, 2, 0], [0, 0, 1]])
        assert check_gk_property(d).outcome is not True
        assert shift_check(d, 5.0)  # implication vacuously holds

    def test_zero_shift_rejected(self, estp3_float):
        with pytest.raises(ValueError):
            shift_check(estp3_float, 0.0)

    def test_conjugate_by_identity(self, ep3):
        assert conjugate(ep3, identity(3, "exact")) == ep3

    def test_conjugate_by_positive_diagonal_preserves_spectrum(self, estp3_float):
        from matprops import spectrum_via_compounds

        d = fmatrix([[2, 0, 0], [0, 5, 0], [0, 0, 1]])
        before = spectrum_via_compounds(estp3_float)
        after = spectrum_via_compounds(conjugate(estp3_float, d))
        assert before and after
        assert np.allclose(before.eigenvalues, after.eigenvalues, rtol=1e-7)

    def test_singular_conjugator_rejected(self, ep3):
        from matprops import SingularMatrixError

        with pytest.raises(SingularMatrixError):
            conjugate(ep3, exact([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


class TestSimilarityPreservation:
    def test_monotone_similarity_preserves_strong_pf(self):
        for seed in range(5):
            s = random_monotone(3, seed)
            a = random_positive(3, seed + 100)
            assert check_strong_pf(a).outcome is True
            assert check_strong_pf(conjugate(a, s)).outcome is True

    def test_tsa_similarity_preserves_gk(self):
        for seed in range(3):
            s = checkerboarded_tp(3, seed)
            a = random_stp(3, seed + 40)
            assert check_gk_property(a).outcome is True
            assert check_gk_property(conjugate(a, s)).outcome is True

    def test_positive_diagonal_preserves_gk_class(self):
        rnd = random.Random(1)
        for seed in range(3):
            a = random_stp(3, seed + 60)
            d = fmatrix([[rnd.uniform(0.5, 4), 0, 0],
                         [0, rnd.uniform(0.5, 4), 0],
                         [0, 0, rnd.uniform(0.5, 4)]])
            b = conjugate(a, d)
            assert check_gk_property(b).outcome is True
            assert check_gk_property(b, transpose_compounds=True).outcome is True


class TestRouteAgreement:
    """In-class instances must classify yes (all routes firing together);
    out-of-class obstructions must never produce a yes."""

    def test_positive_instances(self):
        for seed in range(8):
            n = 3 + seed % 3
            verdict = classify_ep(random_positive(n, seed))
            assert verdict.status is Status.YES and verdict.power_index_observed == 1

    def test_conjugated_positive_instances(self):
        for seed in range(8):
            n = 3 + seed % 3
            a, partition = conjugated_positive(n, seed)
            verdict = classify_esjs(a)
            assert verdict.status is Status.YES
            assert verdict.partitions[0] == partition

    def test_stp_product_instances(self):
        for seed in range(6):
            n = 3 + seed % 2
            verdict = classify_estp(random_stp(n, seed))
            assert verdict.status is Status.YES and verdict.power_index_observed == 1

    def test_sign_conjugated_stp_instances(self):
        for seed in range(6):
            n = 3 + seed % 2
            a, partition = sign_conjugated_stp(n, seed)
            verdict = classify_estjs(a)
            assert verdict.status is Status.YES
            assert verdict.partitions[0] == partition

    def test_negative_det_instances_never_yes(self):
        rnd = random.Random(12)
        checked = 0
        while checked < 10:
            rows = [[rnd.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            a = exact(rows)
            if det(a) >= 0:
                continue
            for classifier in (classify_estp, classify_estjs, classify_eventually_p):
                assert classifier(a).status is Status.NO
            checked += 1


class TestClassifyReport:
    def test_estp_fixture_report(self, estp3):
        report = classify(estp3)
        v = report.verdicts
        assert v["ESTP"].status is Status.YES
        assert v["eventually-P"].status is Status.YES
        # the matrix itself is positive, so it is strictly J-sign-symmetric
        # with the full index set, while its second compound has mixed signs
        assert v["SJS"].status is Status.YES
        assert v["STJS"].status is Status.NO
        assert v["TP"].status is Status.NO
        passed = {c.name: c.passed for c in report.cross_checks}
        assert passed["ESTP => EP"] is True
        assert passed["ESTP => ESTJS with full index sets at every order"] is True
        assert passed["ESTP => eventually-P"] is True
        assert passed["commuting product stays ESTP (A * A^2)"] is True

    def test_identity_report(self):
        report = classify(identity(3, "float"))
        v = report.verdicts
        assert v["TP"].status is Status.YES
        assert v["STP"].status is Status.NO
        assert v["oscillatory"].status is Status.NO
        assert v["EP"].status is Status.NO
        assert v["EN"].status is Status.YES
        assert v["eventually-P"].status is Status.YES

    def test_decimal_fixture_report(self, stjs4):
        report = classify(stjs4)
        v = report.verdicts
        assert v["STJS"].status is Status.YES
        assert v["ESTJS"].status is Status.YES
        assert v["ESTP"].status is Status.NO

    def test_oscillatory_implies_estp_cross_check(self):
        a = exact([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
        report = classify(a)
        assert report.verdicts["oscillatory"].status is Status.YES
        passed = {c.name: c.passed for c in report.cross_checks}
        assert passed["oscillatory => ESTP"] is True
        assert passed["STP => oscillatory"] is None  # premise absent: not STP

    def test_stp_report_cross_checks(self):
        a = random_stp(3, 33)
        report = classify(a)
        passed = {c.name: c.passed for c in report.cross_checks}
        assert report.verdicts["STP"].status is Status.YES
        assert passed["STP => oscillatory"] is True
        assert passed["STP => Gantmacher-Krein property"] is True
        assert passed["oscillatory => ESTP"] is True

    def test_float_exact_static_agreement_or_warning(self):
        for seed in range(5):
            a = random_stp(3, seed + 70)
            report = classify(a)
            assert not report.warnings  # margins are comfortable by construction

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ClassifyConfig(k_max=1)
        with pytest.raises(ValueError):
            ClassifyConfig(tol=0.0)
