"""Binary linear codes: distance, duals, equivalence, and enumeration.

A code is identified by the reduced row echelon form of a generator matrix,
which is a canonical basis of the row space, so two LinearCode objects are
equal iff they are literally the same subspace.  Equivalence up to column
permutation is handled separately by `canonical_form` / `code_canonical_key`
(backtracking minimal-image search) and by `automorphisms`.

Enumeration of all [n, k, d>=3] codes without zero coordinates works on
whichever side of the duality is smaller: RREF generator matrices for small
k, or column subsets of F2^r for small r = n - k, deduplicated into
equivalence classes by orbit flooding under the relevant group action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import BitMatrix, kernel_basis, rank_of_rows, _rref_rows

__all__ = [
    "DistanceUnavailable",
    "LinearCode",
    "PermGroup",
    "from_parity_check",
    "min_distance",
    "dual",
    "puncture_zero_coordinates",
    "canonical_form",
    "code_canonical_key",
    "automorphisms",
    "enumerate_codes",
]

DEFAULT_DISTANCE_THRESHOLD = 28


class DistanceUnavailable(Exception):
    """Signals that exact distance enumeration was refused, never guessed."""


class LinearCode:
    """An [n, k] binary linear code held as a canonical RREF generator basis."""

    __slots__ = ("n", "gen_rows", "_d", "_dual", "_key")

    def __init__(self, n: int, gen_rows: Sequence[int], *, _canonical: bool = False):
        rows = tuple(gen_rows)
        if not _canonical:
            reduced, _ = _rref_rows(rows, n)
            rows = tuple(r for r in reduced if r)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gen_rows", rows)
        object.__setattr__(self, "_d", None)
        object.__setattr__(self, "_dual", None)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("LinearCode is immutable")

    @property
    def k(self) -> int:
        return len(self.gen_rows)

    def generator_matrix(self) -> BitMatrix:
        if self.k == 0:
            raise ValueError("zero code has no generator matrix")
        return BitMatrix(self.gen_rows, self.n)

    def parity_check_matrix(self) -> BitMatrix:
        """RREF parity-check matrix (the canonical dual basis)."""
        d = self.dual()
        if d.k == 0:
            raise ValueError("full-space code has an empty parity check")
        return BitMatrix(d.gen_rows, self.n)

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords as bitmask ints (Gray order after 0)."""
        word = 0
        yield 0
        for i in range(1, 1 << self.k):
            word ^= self.gen_rows[(i & -i).bit_length() - 1]
            yield word

    def contains(self, bits: int) -> bool:
        for row in self.gen_rows:
            p = row & -row
            if bits & p:
                bits ^= row
        return bits == 0

    def distance(self, threshold: int = DEFAULT_DISTANCE_THRESHOLD) -> int:
        if self._d is None:
            object.__setattr__(self, "_d", min_distance(self, threshold=threshold))
        return self._d

    def dual_distance(self, threshold: int = DEFAULT_DISTANCE_THRESHOLD) -> int:
        return self.dual().distance(threshold)

    def dual(self) -> "LinearCode":
        if self._dual is None:
            if self.k == 0:
                rows = tuple(1 << i for i in range(self.n))
            else:
                rows = tuple(v.bits for v in kernel_basis(self.generator_matrix()))
            object.__setattr__(self, "_dual", LinearCode(self.n, rows))
        return self._dual

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.codewords():
            wt = w.bit_count()
            dist[wt] = dist.get(wt, 0) + 1
        return dist

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.n == other.n
            and self.gen_rows == other.gen_rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.gen_rows))

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k})"


def from_parity_check(H: BitMatrix) -> LinearCode:
    """The code ker H; k = n - rank(H)."""
    return LinearCode(H.cols, tuple(v.bits for v in kernel_basis(H)))


# ---------------------------------------------------------------------------
# Minimum distance
# ---------------------------------------------------------------------------


def _structural_lower_bound(C: LinearCode) -> int:
    """1, 2 or 3 from the parity-check column pattern (cheap, exact)."""
    if C.k == C.n:
        return 1
    H = C.parity_check_matrix()
    cols = [H.column_mask(j) for j in range(H.cols)]
    if 0 in cols:
        return 1
    if len(set(cols)) < len(cols):
        return 2
    return 3


def _min_weight_python(rows: Sequence[int], k: int) -> int:
    best = None
    word = 0
    for i in range(1, 1 << k):
        word ^= rows[(i & -i).bit_length() - 1]
        wt = word.bit_count()
        if best is None or wt < best:
            best = wt
    return best


def _min_weight_numpy(rows: Sequence[int], n: int, k: int, stop_at: int) -> int:
    words = (n + 63) // 64
    mask64 = (1 << 64) - 1
    packed = np.array(
        [[(r >> (64 * w)) & mask64 for w in range(words)] for r in rows],
        dtype=np.uint64,
    )
    low = min(k, 18)
    high = k - low
    size = 1 << low
    base = np.zeros((size, words), dtype=np.uint64)
    for t in range(low):
        half = 1 << t
        base[half : 2 * half] = base[:half] ^ packed[t]
    buf = np.empty_like(base)
    best = n + 1
    prefix = np.zeros(words, dtype=np.uint64)
    for hidx in range(1 << high):
        if hidx:
            t = (hidx & -hidx).bit_length() - 1
            prefix ^= packed[low + t]
        np.bitwise_xor(base, prefix, out=buf)
        wts = np.bitwise_count(buf).sum(axis=1, dtype=np.int64)
        if hidx == 0:
            wts[0] = n + 1  # zero codeword
        m = int(wts.min())
        if m < best:
            best = m
            if best <= stop_at:
                break
    return best


def min_distance(
    C: LinearCode, threshold: int = DEFAULT_DISTANCE_THRESHOLD
) -> int:
    """Exact minimum distance by codeword enumeration.

    Refuses (DistanceUnavailable) above the threshold rather than guessing.
    """
    k = C.k
    if k < 1:
        raise ValueError("minimum distance needs k >= 1")
    if k > threshold:
        raise DistanceUnavailable(f"dimension {k} exceeds threshold {threshold}")
    if k <= 20:
        return _min_weight_python(C.gen_rows, k)
    return _min_weight_numpy(C.gen_rows, C.n, k, _structural_lower_bound(C))


def dual(C: LinearCode) -> LinearCode:
    return C.dual()


def puncture_zero_coordinates(C: LinearCode) -> tuple[LinearCode, tuple[int, ...]]:
    """Remove coordinates on which every codeword is zero; k and d survive."""
    used = 0
    for r in C.gen_rows:
        used |= r
    zero_positions = tuple(i for i in range(C.n) if not (used >> i) & 1)
    if not zero_positions:
        return C, ()
    keep = [i for i in range(C.n) if (used >> i) & 1]
    new_rows = []
    for r in C.gen_rows:
        new_rows.append(sum(((r >> i) & 1) << pos for pos, i in enumerate(keep)))
    return LinearCode(len(keep), new_rows), zero_positions


# ---------------------------------------------------------------------------
# Canonical forms under row/column permutation
# ---------------------------------------------------------------------------


def _canonical_key(M: BitMatrix) -> tuple[tuple[int, ...], ...]:
    """Minimal column-major reading over column perms, rows sorted.

    The key is one m-bit tuple per canonical column.  A branch-and-bound DFS
    over column orderings maintains the ordered refinement of rows by their
    prefix; candidate columns are tried in order of the bit segment they
    contribute, pruning against the best key found so far.
    """
    m, n = M.shape
    cols = [M.column_mask(j) for j in range(n)]
    full = (1 << m) - 1
    best: list[tuple[int, ...]] | None = None

    def segment(blocks: list[int], col: int) -> tuple[tuple[int, ...], list[int]]:
        bits: list[int] = []
        nblocks: list[int] = []
        for b in blocks:
            ones = b & col
            zeros = b & ~col
            zc, oc = zeros.bit_count(), ones.bit_count()
            bits.extend([0] * zc)
            bits.extend([1] * oc)
            if zeros:
                nblocks.append(zeros)
            if ones:
                nblocks.append(ones)
        return tuple(bits), nblocks

    def dfs(blocks: list[int], used: int, depth: int, key: list, tied: bool):
        nonlocal best
        if depth == n:
            if best is None or key < best:
                best = list(key)
            return
        cands = []
        seen_cols: set[int] = set()
        for j in range(n):
            if (used >> j) & 1:
                continue
            if cols[j] in seen_cols:
                continue
            seen_cols.add(cols[j])
            seg, nblocks = segment(blocks, cols[j])
            cands.append((seg, j, nblocks))
        cands.sort(key=lambda t: t[0])
        for seg, j, nblocks in cands:
            now_tied = tied
            if best is not None and tied:
                ref = best[depth]
                if seg > ref:
                    break
                now_tied = seg == ref
            key.append(seg)
            dfs(nblocks, used | (1 << j), depth + 1, key, now_tied)
            key.pop()

    dfs([full], 0, 0, [], True)
    assert best is not None
    return tuple(best)


def _matrix_from_key(key: tuple[tuple[int, ...], ...], m: int) -> BitMatrix:
    rows = []
    for i in range(m):
        rows.append(sum(key[d][i] << d for d in range(len(key))))
    return BitMatrix(rows, len(key))


def canonical_form(M: BitMatrix) -> BitMatrix:
    """Canonical representative under simultaneous row and column permutation.

    Two matrices are equivalent iff their canonical forms are bit-identical.
    """
    return _matrix_from_key(_canonical_key(M), M.shape[0])


def code_canonical_key(C: LinearCode):
    """Opaque key equal exactly for codes equivalent under column permutation.

    Uses the canonical form of the all-nonzero-codewords matrix, which is an
    invariant of the code rather than of any particular basis.
    """
    if C._key is None:
        if C.k == 0:
            key = ("zero", C.n)
        else:
            words = [w for w in C.codewords() if w]
            key = (C.n, _canonical_key(BitMatrix(sorted(words), C.n)))
        object.__setattr__(C, "_key", key)
    return C._key


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermGroup:
    """Column permutation group given by generators plus its order.

    `elements` is the full element list when it was explicitly enumerated.
    """

    n: int
    generators: tuple[tuple[int, ...], ...]
    order: int
    elements: tuple[tuple[int, ...], ...] | None = None

    def element_list(self) -> tuple[tuple[int, ...], ...]:
        if self.elements is not None:
            return self.elements
        return tuple(mulclose(self.generators, self.n))


def _permute_bits(word: int, perm: Sequence[int], n: int) -> int:
    out = 0
    for i in range(n):
        if (word >> i) & 1:
            out |= 1 << perm[i]
    return out


def mulclose(generators: Iterable[tuple[int, ...]], n: int, cap: int = 10_000_000):
    """Closure of permutation generators (tuples mapping index -> image)."""
    idperm = tuple(range(n))
    frontier = [idperm]
    seen = {idperm}
    while frontier:
        nxt = []
        for g in generators:
            for h in frontier:
                prod = tuple(g[h[i]] for i in range(n))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise RuntimeError("group closure exceeded cap")
        frontier = nxt
    return seen


def small_generating_set(elements: Sequence[tuple[int, ...]], n: int):
    """Greedy generating subset of an explicitly listed group."""
    gens: list[tuple[int, ...]] = []
    closure = {tuple(range(n))}
    for e in sorted(elements):
        if e not in closure:
            gens.append(e)
            closure = mulclose(gens, n)
            if len(closure) == len(elements):
                break
    return tuple(gens)


def automorphisms(C: LinearCode, cap: int = 2_000_000) -> PermGroup:
    """All column permutations mapping C onto itself (n <= 12 scale).

    Backtracking over column images pruned by per-weight column profiles and
    pairwise codeword-incidence counts.
    """
    n = C.n
    if C.k == 0:
        gens = _symmetric_group_generators(n)
        return PermGroup(n, gens, math.factorial(n))
    words = [w for w in C.codewords() if w]
    weights = sorted({w.bit_count() for w in words})
    by_weight = {wt: [w for w in words if w.bit_count() == wt] for wt in weights}
    profile = []
    for i in range(n):
        profile.append(
            tuple(
                sum(1 for w in by_weight[wt] if (w >> i) & 1) for wt in weights
            )
        )
    pair = [[[0] * n for _ in range(n)] for _ in weights]
    for wi, wt in enumerate(weights):
        for w in by_weight[wt]:
            sup = [i for i in range(n) if (w >> i) & 1]
            for a in range(len(sup)):
                for b in range(a + 1, len(sup)):
                    pair[wi][sup[a]][sup[b]] += 1
                    pair[wi][sup[b]][sup[a]] += 1

    perms: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def leaf_ok() -> bool:
        for row in C.gen_rows:
            if not C.contains(_permute_bits(row, image, n)):
                return False
        return True

    def dfs(i: int):
        if len(perms) > cap:
            raise RuntimeError("automorphism enumeration exceeded cap")
        if i == n:
            if leaf_ok():
                perms.append(tuple(image))
            return
        for j in range(n):
            if used[j] or profile[j] != profile[i]:
                continue
            ok = True
            for wi in range(len(weights)):
                prow = pair[wi][i]
                qrow = pair[wi][j]
                for i2 in range(i):
                    if prow[i2] != qrow[image[i2]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            image[i] = j
            used[j] = True
            dfs(i + 1)
            used[j] = False
            image[i] = -1

    dfs(0)
    elements = tuple(sorted(perms))
    gens = small_generating_set(elements, n) if len(elements) > 1 else ()
    return PermGroup(n, gens, len(elements), elements)


def _symmetric_group_generators(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ()
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return (cycle, swap)


# ---------------------------------------------------------------------------
# Enumeration up to equivalence
# ---------------------------------------------------------------------------


def _gaussian_binomial(n: int, k: int) -> int:
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den


def _orbit_flood(key, neighbors, visited) -> None:
    """Mark the full orbit of `key` (BFS over neighbor expansion)."""
    visited.add(key)
    frontier = [key]
    while frontier:
        nxt = []
        for kk in frontier:
            for nk in neighbors(kk):
                if nk not in visited:
                    visited.add(nk)
                    nxt.append(nk)
        frontier = nxt


def _rotate_bits(w: int, n: int) -> int:
    return ((w << 1) | (w >> (n - 1))) & ((1 << n) - 1)


def _swap01_bits(w: int) -> int:
    b = ((w >> 0) ^ (w >> 1)) & 1
    return w ^ (b | (b << 1))


def _enumerate_generator_side(n: int, k: int) -> list[LinearCode]:
    full = (1 << n) - 1
    visited: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []

    def neighbors(key: tuple[int, ...]):
        yield tuple(sorted(_rotate_bits(w, n) for w in key))
        yield tuple(sorted(_swap01_bits(w) for w in key))

    for pivots in combinations(range(n), k):
        pivot_mask = sum(1 << p for p in pivots)
        free_cols = [
            [j for j in range(p + 1, n) if not (pivot_mask >> j) & 1]
            for p in pivots
        ]
        counts = [len(f) for f in free_cols]
        total = sum(counts)
        for assign in range(1 << total):
            rows = []
            shift = 0
            orred = 0
            for i, p in enumerate(pivots):
                row = 1 << p
                for j in free_cols[i]:
                    if (assign >> shift) & 1:
                        row |= 1 << j
                    shift += 1
                rows.append(row)
                orred |= row
            if orred != full:
                continue
            # d >= 3 filter with early abort
            word = 0
            ok = True
            words = [0]
            for c in range(1, 1 << k):
                word ^= rows[(c & -c).bit_length() - 1]
                if word.bit_count() < 3:
                    ok = False
                    break
                words.append(word)
            if not ok:
                continue
            key = tuple(sorted(words))
            if key in visited:
                continue
            reps.append(tuple(rows))
            _orbit_flood(key, neighbors, visited)
    return [LinearCode(n, rows) for rows in reps]


def _gl_maps(r: int) -> list[list[int]]:
    """Value maps on F2^r for a generating set of GL_r(2)."""
    size = 1 << r

    def apply_transvection(v: int) -> int:  # x0 += x1
        return v ^ ((v >> 1) & 1)

    def apply_cycle(v: int) -> int:
        return ((v << 1) | (v >> (r - 1))) & (size - 1)

    def apply_swap(v: int) -> int:
        b = ((v >> 0) ^ (v >> 1)) & 1
        return v ^ (b | (b << 1))

    maps = []
    for fn in (apply_transvection, apply_cycle, apply_swap):
        maps.append([fn(v) for v in range(size)])
    if r == 1:
        maps = [[0, 1]]
    return maps


def _enumerate_dual_side(n: int, r: int) -> list[LinearCode]:
    size = 1 << r
    points = range(1, size)
    maps = _gl_maps(r)
    visited: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []

    def neighbors(key: tuple[int, ...]):
        for mp in maps:
            yield tuple(sorted(mp[v] for v in key))

    for subset in combinations(points, n):
        if subset in visited:
            continue
        _orbit_flood(subset, neighbors, visited)
        if rank_of_rows(subset) != r:
            continue
        # H rows from columns
        rows = [
            sum(((subset[j] >> i) & 1) << j for j in range(n)) for i in range(r)
        ]
        # dual distance >= 2: no weight-1 vector in the row space
        word = 0
        ok = True
        for c in range(1, size):
            word ^= rows[(c & -c).bit_length() - 1]
            if word.bit_count() < 2:
                ok = False
                break
        if not ok:
            continue
        reps.append(tuple(rows))
    return [from_parity_check(BitMatrix(rows, n)) for rows in reps]


@lru_cache(maxsize=None)
def _enumerate_codes_cached(n: int, k: int) -> tuple[LinearCode, ...]:
    if k < 1 or k > n:
        return ()
    r = n - k
    if r == 0 or n > (1 << r) - 1:
        return ()  # d >= 3 needs n distinct nonzero parity-check columns
    gen_cost = _gaussian_binomial(n, k)
    dual_cost = math.comb((1 << r) - 1, n)
    if dual_cost <= gen_cost:
        codes = _enumerate_dual_side(n, r)
    else:
        codes = _enumerate_generator_side(n, k)
    return tuple(sorted(codes, key=code_canonical_key))


def enumerate_codes(n: int, k: int) -> list[LinearCode]:
    """One representative per equivalence class of [n, k, d>=3] codes
    without zero coordinates, ordered by canonical key."""
    return list(_enumerate_codes_cached(n, k))
