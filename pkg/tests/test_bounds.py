import random
from fractions import Fraction

import numpy as np
import pytest

from fundcone.algebra import BitMatrix
from fundcone.bounds import (
    BoundInapplicable,
    awgnc_bound_witness,
    awgnc_dual_bound,
    bibd_closed_form,
    bsc_bound_witness,
    bsc_dual_bound,
    design_lower_bound,
    detect_design,
    eigenvalue_bound,
    symmetric_eigenvalues,
    tanner_graph_connected,
)
from fundcone.cone import build, contains
from fundcone.constructions import all_dual_rows, dual_rows_of_weight, hamming_code, simplex_code


class TestDualBounds:
    def test_golay_awgnc(self):
        assert awgnc_dual_bound(23, 8) == Fraction(841, 71)

    def test_degenerate_dual_distance_one(self):
        assert awgnc_dual_bound(9, 1) == 8  # collapses to n - 1

    def test_hamming_case(self):
        # (7 + 4 - 2)^2 / ((4-1)^2 + 6) evaluated by hand
        assert awgnc_dual_bound(7, 4) == Fraction(81, 15)

    def test_bsc_golay(self):
        assert bsc_dual_bound(23, 8) == 6
        assert bsc_dual_bound(24, 8) == 6

    def test_bsc_equal_parameters(self):
        assert bsc_dual_bound(9, 9) == 2

    def test_witnesses_live_in_hamming_cones(self):
        H3 = BitMatrix.from_strings(["1110100", "0111010", "0011101"])
        H7 = BitMatrix.from_strings(
            [
                "1110100",
                "0111010",
                "0011101",
                "1001110",
                "0100111",
                "1010011",
                "1101001",
            ]
        )
        for H in (H3, H7):
            K = build(H)
            assert contains(K, awgnc_bound_witness(7, 4))
            assert contains(K, bsc_bound_witness(7, 4))

    def test_witness_value_matches_bound(self):
        from fundcone.pseudoweight import w_awgnc

        for n, dd in [(23, 8), (7, 4), (9, 3)]:
            assert w_awgnc(awgnc_bound_witness(n, dd)) == awgnc_dual_bound(n, dd)


class TestDesigns:
    def test_hamming_all_dual_is_bibd(self):
        params = detect_design(all_dual_rows(hamming_code(3)))
        assert params.kind == "bibd"
        assert (params.n, params.w_r, params.lam, params.w_c) == (7, 4, 2, 4)
        assert design_lower_bound(params) == 3

    def test_simplex_weight3_bibd(self):
        params = detect_design(dual_rows_of_weight(simplex_code(3), 3))
        assert (params.n, params.w_r, params.lam) == (7, 3, 1)
        assert design_lower_bound(params) == 4

    def test_zero_column_gives_none(self):
        assert detect_design(BitMatrix.from_strings(["110", "110"])) is None

    def test_partial_design_without_constant_rows(self):
        M = BitMatrix.from_strings(["110", "011", "101", "111"])
        params = detect_design(M)
        assert params is not None and params.kind == "partial"
        assert params.w_c == 3 and params.lam == 2


class TestJacobi:
    def test_identity(self):
        assert symmetric_eigenvalues(np.eye(3)) == [1.0, 1.0, 1.0]

    def test_2x2(self):
        vals = symmetric_eigenvalues([[2, 1], [1, 2]])
        assert vals == pytest.approx([3.0, 1.0], abs=1e-10)

    def test_bibd_731_gram(self):
        L = np.ones((7, 7)) + 2 * np.eye(7)
        vals = symmetric_eigenvalues(L)
        assert vals[0] == pytest.approx(9.0, abs=1e-9)
        assert vals[1:] == pytest.approx([2.0] * 6, abs=1e-9)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            symmetric_eigenvalues([[1, 2], [0, 1]])

    def test_matches_numpy_on_random(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            n = int(rng.integers(2, 12))
            A = rng.integers(0, 5, size=(n, n)).astype(float)
            A = A + A.T
            mine = symmetric_eigenvalues(A)
            ref = sorted(np.linalg.eigvalsh(A), reverse=True)
            assert mine == pytest.approx(ref, abs=1e-8)


class TestEigenvalueBound:
    def test_bibd_incidence(self):
        H = dual_rows_of_weight(simplex_code(3), 3)
        assert eigenvalue_bound(H) == pytest.approx(4.0, abs=1e-9)

    def test_repetition_circulant(self):
        from fundcone.algebra import Poly2
        from fundcone.cyclic import CyclicCodeSpec, full_circulant

        H = full_circulant(CyclicCodeSpec(7, Poly2(0b11)))
        assert eigenvalue_bound(H) == pytest.approx(7.0, abs=1e-9)

    def test_734_circulant(self):
        from fundcone.algebra import Poly2
        from fundcone.cyclic import CyclicCodeSpec, full_circulant

        H = full_circulant(CyclicCodeSpec(7, Poly2(0b1011)))
        assert eigenvalue_bound(H) == pytest.approx(4.0, abs=1e-9)

    def test_irregular_refused(self):
        with pytest.raises(BoundInapplicable):
            eigenvalue_bound(BitMatrix.from_strings(["110", "111"]))

    def test_disconnected_refused(self):
        H = BitMatrix.from_strings(["1100", "1100", "0011", "0011"])
        assert not tanner_graph_connected(H)
        with pytest.raises(BoundInapplicable):
            eigenvalue_bound(H)


class TestBibdClosedForm:
    def test_731(self):
        assert bibd_closed_form(7, 3, 1) == 4

    def test_hamming_family(self):
        for m in range(2, 7):
            n = (1 << m) - 1
            assert bibd_closed_form(n, 1 << (m - 1), 1 << (m - 2)) == 3

    def test_complete_design_degenerates_to_two(self):
        assert bibd_closed_form(4, 4, 3) == 2

    def test_inconsistent_rejected(self):
        with pytest.raises(ValueError):
            bibd_closed_form(8, 3, 1)
