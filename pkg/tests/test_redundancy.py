from fractions import Fraction

import pytest

from fundcone.algebra import BitMatrix
from fundcone.codes import canonical_form, enumerate_codes, from_parity_check
from fundcone.constructions import extend_overall_parity, hamming_code, simplex_code
from fundcone.pseudoweight import Channel, min_pseudoweights
from fundcone.redundancy import (
    LevelTruncated,
    SearchBudget,
    classify,
    full_dual_matrix,
    is_finite,
    level_minima,
    matrices_with_rho_rows,
    pseudoredundancy,
)

H3 = BitMatrix.from_strings(["1110100", "0111010", "0011101"])
H4 = BitMatrix.from_strings(["1101001", "1010101", "0110011", "0001111"])


class TestFullDual:
    def test_hamming_all_simplex_rows(self):
        H = full_dual_matrix(hamming_code(3))
        assert H.shape == (7, 7)
        assert {r.bit_count() for r in H.rows} == {4}

    def test_parity_code_single_row(self):
        C = from_parity_check(BitMatrix.from_strings(["111111"]))
        assert full_dual_matrix(C).shape == (1, 6)

    def test_extended_hamming(self):
        assert full_dual_matrix(extend_overall_parity(hamming_code(3))).shape == (15, 8)


class TestIsFinite:
    def test_extended_hamming_maxfrac_infinite(self):
        E = extend_overall_parity(hamming_code(3))
        finite, minimum, H = is_finite(E, Channel.MAXFRAC)
        assert not finite
        assert minimum == Fraction(10, 3)

    def test_hamming_maxfrac_finite(self):
        finite, minimum, _ = is_finite(hamming_code(3), Channel.MAXFRAC)
        assert finite and minimum == 3

    def test_distance_two_code_finite(self):
        C = from_parity_check(BitMatrix.from_strings(["11111"]))
        # d = 2 codes attain d on every matrix
        for ch in Channel:
            finite, minimum, _ = is_finite(C, ch)
            assert finite and minimum == 2


class TestLevelEnumeration:
    def test_hamming_level7_single_class(self):
        mats = list(matrices_with_rho_rows(hamming_code(3), 7))
        assert len(mats) == 1
        assert mats[0] == full_dual_matrix(hamming_code(3))

    def test_hamming_level3_is_single_orbit(self):
        mats = list(matrices_with_rho_rows(hamming_code(3), 3))
        assert len(mats) == 1  # all spanning triples of simplex words are equivalent

    def test_extended_hamming_level5_count(self):
        E = extend_overall_parity(hamming_code(3))
        assert sum(1 for _ in matrices_with_rho_rows(E, 5)) == 12

    def test_truncation_signal(self):
        E = extend_overall_parity(hamming_code(3))
        with pytest.raises(LevelTruncated):
            list(matrices_with_rho_rows(E, 7, cap=10))

    def test_witness_validity(self):
        C = hamming_code(3)
        for H in matrices_with_rho_rows(C, 4):
            assert from_parity_check(H) == C
            assert H.shape == (4, 7)
            assert len(set(H.rows)) == 4


class TestPseudoredundancy:
    def test_hamming_awgnc_witness_equivalent_to_h3(self):
        res = pseudoredundancy(from_parity_check(H3), Channel.AWGNC)
        assert res.rho == 3
        assert canonical_form(res.witness) == canonical_form(H3)

    def test_hamming_bsc_witness_equivalent_to_h4(self):
        res = pseudoredundancy(from_parity_check(H3), Channel.BSC)
        assert res.rho == 4
        assert canonical_form(res.witness) == canonical_form(H4)

    def test_unique_633_maxfrac(self):
        (C,) = enumerate_codes(6, 3)
        res = pseudoredundancy(C, Channel.MAXFRAC)
        assert res.rho == 4

    def test_witnesses_recheck(self):
        C = hamming_code(3)
        for ch in Channel:
            res = pseudoredundancy(C, ch)
            rep = min_pseudoweights(res.witness)
            assert rep.minima[ch] == 3
            assert from_parity_check(res.witness) == C

    def test_chain_across_channels(self):
        C = simplex_code(3)
        rhos = {ch: pseudoredundancy(C, ch).rho for ch in Channel}
        assert rhos[Channel.MAXFRAC] >= rhos[Channel.AWGNC] >= rhos[Channel.BEC]
        assert rhos[Channel.MAXFRAC] >= rhos[Channel.BSC] >= rhos[Channel.BEC]

    def test_unknown_on_tiny_budget(self):
        E = extend_overall_parity(hamming_code(3))
        tiny = SearchBudget(level_cap=3, sample_tries=0)
        res = pseudoredundancy(E, Channel.AWGNC, tiny)
        assert res.unknown and res.truncated_levels


class TestClassify:
    def test_distance_two_is_class_3(self):
        C = from_parity_check(BitMatrix.from_strings(["11111"]))
        res = classify(C, Channel.MAXFRAC)
        assert res.class_label == 3

    def test_extended_hamming_awgnc_class_1(self):
        E = extend_overall_parity(hamming_code(3))
        res = classify(E, Channel.AWGNC)
        assert res.class_label == 1

    def test_extended_hamming_maxfrac_class_0(self):
        E = extend_overall_parity(hamming_code(3))
        res = classify(E, Channel.MAXFRAC)
        assert res.class_label == 0

    def test_d3_code_awgnc_class_3(self):
        res = classify(hamming_code(3), Channel.AWGNC)
        assert res.class_label == 3

    def test_simplex_bsc_class_1(self):
        res = classify(simplex_code(3), Channel.BSC)
        assert res.rho == 5
        assert res.class_label == 1


class TestBatchReport:
    def test_84_awgnc_batch(self):
        from fundcone.redundancy import batch_report, report_json_object

        reports = batch_report(8, 4, [Channel.AWGNC], with_classes=True)
        assert len(reports) == 5
        over_r = [rep for rep in reports if rep.results[Channel.AWGNC].rho > 4]
        assert len(over_r) == 1
        rep = over_r[0]
        assert rep.d == 4 and rep.results[Channel.AWGNC].rho == 5
        assert rep.results[Channel.AWGNC].class_label == 1
        others = [r for r in reports if r is not rep]
        assert all(r.results[Channel.AWGNC].rho == 4 for r in others)
        obj = report_json_object(rep)
        assert obj["format"] == "redundancy-batch/1"
        assert obj["channels"]["awgnc"]["rho"] == "5"

    def test_bsc_sweep_up_to_7(self):
        from fundcone.codes import enumerate_codes

        offenders = []
        for n in range(3, 8):
            for k in range(1, n):
                for C in enumerate_codes(n, k):
                    res = pseudoredundancy(C, Channel.BSC)
                    assert not res.unknown and not res.infinite
                    if res.rho > n - k:
                        offenders.append((n, k, C.distance(), res.rho))
        assert sorted(offenders) == [(7, 3, 4, 5), (7, 4, 3, 4)]


class TestLevelMinima:
    def test_extended_hamming_level5_distribution(self):
        E = extend_overall_parity(hamming_code(3))
        vals = sorted(str(m) for _, m in level_minima(E, 5, Channel.AWGNC))
        assert vals.count("4") == 1
        assert vals.count("25/7") == 1
        assert vals.count("3") == 10

    def test_level_monotonicity_hamming_maxfrac(self):
        # the best achievable minimum never drops as rows are added
        C = hamming_code(3)
        best = []
        for rho in range(3, 8):
            vals = [m for _, m in level_minima(C, rho, Channel.MAXFRAC)]
            best.append(max(vals))
        assert best == sorted(best)
        assert best[-1] == 3

    def test_infinite_code_no_matrix_achieves(self):
        # when is_finite says no, sampled matrices at any level fall short
        import random

        from fundcone.algebra import rank_of_rows
        from fundcone.pseudoweight import min_pseudoweights as mpw

        E = extend_overall_parity(hamming_code(3))
        words = sorted(w for w in E.dual().codewords() if w)
        rng = random.Random(8)
        checked = 0
        while checked < 20:
            rho = rng.randrange(4, 12)
            rows = rng.sample(words, rho)
            if rank_of_rows(rows) != 4:
                continue
            rep = mpw(BitMatrix(sorted(rows), 8))
            assert rep.minima[Channel.MAXFRAC] < 4
            checked += 1
