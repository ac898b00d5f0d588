"""Code and parity-check matrix constructions with pseudoweight guarantees.

Direct sums and (u|u) repetitions inherit max-fractional and AWGNC minima
from witness matrices of the constituents; chains of weight-2 rows pin the
cone to class-constant vectors; the dimension-2 construction produces an
(n-2)-row matrix attaining the minimum distance on all four channels.  The
overall-parity extension carries no pseudoweight guarantee and is provided
as plumbing only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BitMatrix, rank_of_rows
from .codes import LinearCode, dual, from_parity_check, puncture_zero_coordinates

__all__ = [
    "Weight2Partition",
    "NonSpanningError",
    "hamming_code",
    "simplex_code",
    "extend_overall_parity",
    "direct_sum",
    "uu_repeat",
    "weight2_chain_matrix",
    "dimension2_parity_check",
    "all_dual_rows",
    "dual_rows_of_weight",
]


class NonSpanningError(ValueError):
    """A selected dual row set does not span the dual code."""

    def __init__(self, rank: int, needed: int):
        super().__init__(f"rows span rank {rank}, need {needed}")
        self.rank = rank
        self.needed = needed


def hamming_code(m: int) -> LinearCode:
    """[2^m - 1, 2^m - 1 - m, 3] code from the all-nonzero-columns check."""
    if m < 2:
        raise ValueError("m must be >= 2")
    n = (1 << m) - 1
    rows = [sum(((v >> i) & 1) << (v - 1) for v in range(1, n + 1)) for i in range(m)]
    return from_parity_check(BitMatrix(rows, n))


def simplex_code(m: int) -> LinearCode:
    """[2^m - 1, m, 2^(m-1)] dual of the Hamming code."""
    return dual(hamming_code(m))


def extend_overall_parity(C: LinearCode) -> LinearCode:
    """Append one coordinate making every codeword weight even."""
    rows = [r | ((r.bit_count() & 1) << C.n) for r in C.gen_rows]
    return LinearCode(C.n + 1, rows)


def direct_sum(
    C1: LinearCode, C2: LinearCode, H1: BitMatrix, H2: BitMatrix
) -> tuple[LinearCode, BitMatrix]:
    """Direct sum code with the block-diagonal matrix [[H1,0],[0,H2]].

    When H1 and H2 attain d1 and d2, the block matrix attains min(d1, d2)
    for the max-fractional weight and the AWGNC pseudoweight.
    """
    if from_parity_check(H1) != C1 or from_parity_check(H2) != C2:
        raise ValueError("witness matrices must have the codes as kernels")
    n1 = C1.n
    rows = list(H1.rows) + [r << n1 for r in H2.rows]
    H = BitMatrix(rows, n1 + C2.n)
    gen = list(C1.gen_rows) + [r << n1 for r in C2.gen_rows]
    return LinearCode(n1 + C2.n, gen), H


def uu_repeat(C: LinearCode, H: BitMatrix | None) -> tuple[LinearCode, BitMatrix]:
    """(u|u) repetition code with the matrix [[H,0],[I,I]].

    H is the witness for C (None for the full-space code, whose parity check
    is empty).  The identity pairs force q = r on the cone, so the matrix
    attains 2d for the max-fractional weight and the AWGNC pseudoweight.
    """
    if H is not None and from_parity_check(H) != C:
        raise ValueError("witness matrix must have the code as kernel")
    if H is None and C.k != C.n:
        raise ValueError("only the full-space code takes an empty witness")
    n = C.n
    rows = list(H.rows) if H is not None else []
    rows += [(1 << i) | (1 << (n + i)) for i in range(n)]
    H2 = BitMatrix(rows, 2 * n)
    gen = [r | (r << n) for r in C.gen_rows]
    return LinearCode(2 * n, gen), H2


@dataclass(frozen=True)
class Weight2Partition:
    """Ordered partition of {0..n-1} plus an optional anchor row.

    The anchor may intersect each class at most once; violating that is
    exactly the situation where the minimum-distance guarantee breaks.
    """

    n: int
    classes: tuple[tuple[int, ...], ...]
    anchor: tuple[int, ...] | None = None

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("empty class")
            if set(cls) & seen:
                raise ValueError("classes must be disjoint")
            seen.update(cls)
        if seen != set(range(self.n)):
            raise ValueError("classes must cover all coordinates")
        if self.anchor is not None:
            for cls in self.classes:
                if len(set(self.anchor) & set(cls)) > 1:
                    raise ValueError("anchor hits a class more than once")


def weight2_chain_matrix(partition: Weight2Partition) -> BitMatrix:
    """Chain rows (i_t, i_{t+1}) per class, plus the anchor row if present.

    Without an anchor the cone members are exactly the class-constant
    nonnegative vectors, so the extreme rays are the class indicators.
    """
    rows = []
    for cls in partition.classes:
        ordered = sorted(cls)
        for a, b in zip(ordered, ordered[1:]):
            rows.append((1 << a) | (1 << b))
    if partition.anchor is not None:
        rows.append(sum(1 << i for i in partition.anchor))
    if not rows:
        raise ValueError("partition produces no rows (all classes singletons)")
    return BitMatrix(rows, partition.n)


def _chain_rows(mask: int) -> list[int]:
    bits = [i for i in range(mask.bit_length()) if (mask >> i) & 1]
    return [(1 << a) | (1 << b) for a, b in zip(bits, bits[1:])]


def dimension2_parity_check(C: LinearCode) -> BitMatrix:
    """(n-2)-row parity-check matrix of a dimension-2 code attaining d.

    Splits the coordinates by the supports of the two lexicographically
    least nonzero codewords, chains each class with weight-2 rows, adds the
    anchor of class minima when all three classes are nonempty, and restores
    punctured coordinates as weight-1 rows.
    """
    if C.k != 2:
        raise ValueError("construction needs dimension exactly 2")
    punct, removed = puncture_zero_coordinates(C)
    np_ = punct.n

    def coord_tuple(w: int) -> tuple[int, ...]:
        return tuple((w >> i) & 1 for i in range(np_))

    words = sorted((w for w in punct.codewords() if w), key=coord_tuple)
    c1, c2 = words[0], words[1]
    # normalize so that the intersection class is empty whenever some class is
    if c1 & ~c2 == 0:
        c2 ^= c1
    elif c2 & ~c1 == 0:
        c1 ^= c2
    s1, s2, s3 = c1 & ~c2, c2 & ~c1, c1 & c2
    rows = _chain_rows(s1) + _chain_rows(s2) + _chain_rows(s3)
    if s1 and s2 and s3:
        anchor = 0
        for s in (s1, s2, s3):
            anchor |= s & -s  # minimal element of the class
        rows.append(anchor)
    if not rows:
        raise ValueError("degenerate dimension-2 code (punctured length 2)")
    if removed:
        keep = [i for i in range(C.n) if i not in removed]
        rows = [
            sum(((r >> pos) & 1) << i for pos, i in enumerate(keep)) for r in rows
        ]
        rows += [1 << i for i in removed]
    H = BitMatrix(rows, C.n)
    assert from_parity_check(H) == C
    return H


def all_dual_rows(C: LinearCode) -> BitMatrix:
    """Matrix whose rows are all nonzero dual codewords."""
    r = C.n - C.k
    if r > 16:
        raise ValueError(f"dual too large to enumerate (r = {r})")
    if r == 0:
        raise ValueError("full-space code has an empty dual")
    D = dual(C)
    return BitMatrix(sorted(w for w in D.codewords() if w), C.n)


def dual_rows_of_weight(C: LinearCode, w: int) -> BitMatrix:
    """Matrix of all weight-w dual codewords; they must span the dual."""
    r = C.n - C.k
    if r > 16:
        raise ValueError(f"dual too large to enumerate (r = {r})")
    D = dual(C)
    rows = sorted(x for x in D.codewords() if x and x.bit_count() == w)
    if not rows:
        raise NonSpanningError(0, r)
    rank = rank_of_rows(rows)
    if rank != r:
        raise NonSpanningError(rank, r)
    return BitMatrix(rows, C.n)
