import itertools
import random

import pytest

from fundcone.algebra import BitMatrix
from fundcone.codes import (
    DistanceUnavailable,
    LinearCode,
    automorphisms,
    canonical_form,
    code_canonical_key,
    dual,
    enumerate_codes,
    from_parity_check,
    min_distance,
    puncture_zero_coordinates,
    _min_weight_numpy,
    _min_weight_python,
)

HAMMING_H = BitMatrix.from_strings(["1110100", "0111010", "0011101"])


class TestBasics:
    def test_from_parity_check_hamming(self):
        C = from_parity_check(HAMMING_H)
        assert (C.n, C.k) == (7, 4)
        assert C.distance() == 3

    def test_identity_gives_zero_code(self):
        C = from_parity_check(BitMatrix.identity(4))
        assert C.k == 0

    def test_single_parity_row(self):
        C = from_parity_check(BitMatrix.from_strings(["11111"]))
        assert (C.n, C.k, C.distance()) == (5, 4, 2)

    def test_membership(self):
        C = from_parity_check(HAMMING_H)
        for w in C.codewords():
            assert C.contains(w)
        assert not C.contains(0b1)


class TestMinDistance:
    def test_hamming_and_simplex(self):
        C = from_parity_check(HAMMING_H)
        assert min_distance(C) == 3
        assert min_distance(dual(C)) == 4

    def test_repetition(self):
        C = LinearCode(9, [(1 << 9) - 1])
        assert min_distance(C) == 9

    def test_unavailable_above_threshold(self):
        C = from_parity_check(BitMatrix.from_strings(["11111"]))
        with pytest.raises(DistanceUnavailable):
            min_distance(C, threshold=3)

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            min_distance(from_parity_check(BitMatrix.identity(3)))

    def test_numpy_path_matches_python(self):
        rng = random.Random(11)
        for _ in range(5):
            n = 30
            rows = []
            while len(rows) < 12:
                cand = rng.randrange(1, 1 << n)
                if cand not in rows:
                    rows.append(cand)
            C = LinearCode(n, rows)
            if C.k < 2:
                continue
            py = _min_weight_python(C.gen_rows, C.k)
            np_ = _min_weight_numpy(C.gen_rows, C.n, C.k, stop_at=0)
            assert py == np_


class TestDualPuncture:
    def test_dual_involution(self):
        for rows, n in [((0b1110100, 0b0111010, 0b0011101), 7), ((0b111,), 3)]:
            C = from_parity_check(BitMatrix(rows, n))
            assert dual(dual(C)) == C
            assert code_canonical_key(dual(dual(C))) == code_canonical_key(C)

    def test_zero_code_dual_is_full_space(self):
        C = from_parity_check(BitMatrix.identity(3))
        assert dual(C).k == 3

    def test_puncture_appended_zero_column(self):
        C = LinearCode(5, [0b00011, 0b01100])
        P, removed = puncture_zero_coordinates(C)
        assert removed == (4,) and P.n == 4 and P.k == 2
        assert P.distance() == C.distance()

    def test_puncture_noop(self):
        C = from_parity_check(HAMMING_H)
        P, removed = puncture_zero_coordinates(C)
        assert removed == () and P == C

    def test_puncture_repetition_pair(self):
        C = LinearCode(5, [0b00011])
        P, removed = puncture_zero_coordinates(C)
        assert (P.n, P.k, P.distance()) == (2, 1, 2)
        assert removed == (2, 3, 4)


def permute_matrix(M, col_perm, row_perm):
    rows = [
        sum(((M.rows[i] >> j) & 1) << col_perm[j] for j in range(M.cols))
        for i in row_perm
    ]
    return BitMatrix(rows, M.cols)


class TestCanonicalForm:
    def test_invariant_under_100_random_permutations(self):
        rng = random.Random(5)
        for M in (HAMMING_H, BitMatrix.from_strings(["1100", "0110", "1010", "1111"])):
            ref = canonical_form(M)
            m, n = M.shape
            for _ in range(100):
                cp = list(range(n))
                rp = list(range(m))
                rng.shuffle(cp)
                rng.shuffle(rp)
                assert canonical_form(permute_matrix(M, cp, rp)) == ref

    def test_row_and_column_swaps(self):
        M = HAMMING_H
        swapped_cols = permute_matrix(M, [1, 0, 2, 3, 4, 5, 6], [0, 1, 2])
        swapped_rows = permute_matrix(M, list(range(7)), [1, 0, 2])
        assert canonical_form(swapped_cols) == canonical_form(M)
        assert canonical_form(swapped_rows) == canonical_form(M)

    def test_known_permutation(self):
        # rows reversed and columns rotated
        M2 = permute_matrix(M := HAMMING_H, [(j + 2) % 7 for j in range(7)], [2, 1, 0])
        assert canonical_form(M2) == canonical_form(M)

    def test_detects_inequivalence(self):
        A = BitMatrix.from_strings(["110", "011"])
        B = BitMatrix.from_strings(["110", "001"])
        assert canonical_form(A) != canonical_form(B)


class TestCodeKey:
    def test_same_row_space(self):
        C1 = LinearCode(7, HAMMING_H.rows)
        rows2 = (
            HAMMING_H.rows[0] ^ HAMMING_H.rows[1],
            HAMMING_H.rows[1],
            HAMMING_H.rows[2],
        )
        C2 = LinearCode(7, rows2)
        assert C1 == C2
        assert code_canonical_key(C1) == code_canonical_key(C2)

    def test_hamming_under_column_permutation(self):
        rng = random.Random(3)
        C = from_parity_check(HAMMING_H)
        key = code_canonical_key(C)
        for _ in range(10):
            cp = list(range(7))
            rng.shuffle(cp)
            M2 = permute_matrix(HAMMING_H, cp, [0, 1, 2])
            assert code_canonical_key(from_parity_check(M2)) == key

    def test_four_72_codes_have_distinct_keys(self):
        keys = {code_canonical_key(C) for C in enumerate_codes(7, 2)}
        assert len(keys) == 4


class TestAutomorphisms:
    def test_repetition_full_symmetric_group(self):
        import math

        C = LinearCode(5, [(1 << 5) - 1])
        G = automorphisms(C)
        assert G.order == math.factorial(5)

    def test_hamming_order_168_vs_bruteforce(self):
        C = from_parity_check(HAMMING_H)
        G = automorphisms(C)
        assert G.order == 168
        words = set(C.codewords())
        brute = 0
        for perm in itertools.permutations(range(7)):
            img = {
                sum(((w >> i) & 1) << perm[i] for i in range(7)) for w in words
            }
            if img == words:
                brute += 1
        assert brute == G.order

    def test_633_code_vs_bruteforce(self):
        C = enumerate_codes(6, 3)[0]
        G = automorphisms(C)
        words = set(C.codewords())
        brute = sum(
            1
            for perm in itertools.permutations(range(6))
            if {sum(((w >> i) & 1) << perm[i] for i in range(6)) for w in words}
            == words
        )
        assert G.order == brute

    def test_elements_map_code_to_itself(self):
        C = from_parity_check(HAMMING_H)
        G = automorphisms(C)
        import math

        assert math.factorial(7) % G.order == 0
        for perm in G.element_list():
            for row in C.gen_rows:
                img = sum(((row >> i) & 1) << perm[i] for i in range(7))
                assert C.contains(img)


class TestEnumerationSmall:
    @pytest.mark.parametrize(
        "n,k,count",
        [
            (5, 1, 1),
            (5, 2, 1),
            (6, 1, 1),
            (6, 2, 3),
            (6, 3, 1),
            (7, 2, 4),
            (7, 3, 4),
            (7, 4, 1),
            (7, 5, 0),
            (8, 4, 5),
            (8, 5, 0),
        ],
    )
    def test_counts(self, n, k, count):
        assert len(enumerate_codes(n, k)) == count

    def test_properties_of_enumerated_codes(self):
        for C in enumerate_codes(7, 3):
            assert C.distance() >= 3
            used = 0
            for r in C.gen_rows:
                used |= r
            assert used == (1 << 7) - 1

    def test_distance_3_iff_distinct_nonzero_columns(self):
        for C in enumerate_codes(7, 3) + enumerate_codes(8, 4):
            H = C.parity_check_matrix()
            cols = [H.column_mask(j) for j in range(H.cols)]
            distinct_nonzero = 0 not in cols and len(set(cols)) == len(cols)
            assert distinct_nonzero == (C.distance() >= 3)
