"""Pseudocodeword redundancy: level-by-level parity-check matrix search.

For a code C the level-rho matrices are the rho-element subsets of the
nonzero dual codewords that span the dual, taken up to the automorphism
group of C acting on columns (row order never matters, so subsets stand in
for matrices).  rho(C) is the least level at which some matrix's minimum
pseudoweight reaches d; the search therefore runs cheap constructive and
sampled candidates first and falls back to exhaustive orbit enumeration
only to prove that a whole level fails.

Finiteness is decided first on the matrix of all nonzero dual codewords:
adding rows only shrinks the fundamental cone, so the full matrix attains
the maximal possible minimum and rho is infinite iff it falls short of d.
"""

from __future__ import annotations

import hashlib
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .algebra import BitMatrix, rank_of_rows
from .codes import LinearCode, automorphisms, code_canonical_key
from .cone import rays_for_check_rows
from .constructions import dimension2_parity_check, weight2_chain_matrix, Weight2Partition
from .pseudoweight import Channel, w_awgnc, w_bec, w_bsc, w_maxfrac

__all__ = [
    "SearchBudget",
    "ChannelResult",
    "RedundancyReport",
    "LevelTruncated",
    "full_dual_matrix",
    "is_finite",
    "matrices_with_rho_rows",
    "pseudoredundancy",
    "classify",
    "batch_report",
]

INFINITE = "infinite"
UNKNOWN = "unknown"


class LevelTruncated(RuntimeError):
    """A level's subset count exceeds the enumeration cap."""


@dataclass(frozen=True)
class SearchBudget:
    level_cap: int = 10_000_000  # subsets per level before refusing to enumerate
    sample_tries: int = 4000  # randomized candidates per level before exhausting
    seed: int = 0
    time_cap: float | None = None  # wall-clock seconds for one pseudoredundancy call

    def rng_for(self, *parts) -> random.Random:
        blob = repr(parts).encode()
        return random.Random(int.from_bytes(hashlib.sha256(blob).digest()[:8], "big"))


@dataclass
class ChannelResult:
    """Outcome of the redundancy search on one channel."""

    rho: int | None  # row count, None when infinite or unknown
    infinite: bool = False
    unknown: bool = False
    witness: BitMatrix | None = None
    class_label: int | None = None
    class_note: str = ""
    examined: dict[int, int] = field(default_factory=dict)
    truncated_levels: tuple[int, ...] = ()

    def value_str(self) -> str:
        if self.infinite:
            return INFINITE
        if self.unknown or self.rho is None:
            return UNKNOWN
        return str(self.rho)


@dataclass
class RedundancyReport:
    code: LinearCode
    d: int
    results: dict[Channel, ChannelResult]

    def __post_init__(self):
        r = self.code.n - self.code.k
        for res in self.results.values():
            assert res.rho is None or res.rho >= r


_CHANNEL_FN = {
    Channel.BEC: w_bec,
    Channel.AWGNC: w_awgnc,
    Channel.BSC: w_bsc,
    Channel.MAXFRAC: w_maxfrac,
}


def _channel_min(rays: Sequence[tuple[int, ...]], channel: Channel) -> Fraction:
    fn = _CHANNEL_FN[channel]
    return min(Fraction(fn(r)) for r in rays)


def _rows_min(rows: Sequence[int], n: int, channel: Channel) -> Fraction:
    return _channel_min(rays_for_check_rows(tuple(sorted(rows)), n), channel)


def _template_fails(rows: Sequence[int], n: int, channel: Channel, d: int) -> bool:
    """Cheap disqualifier: the all-ones vector raised to t at one coordinate
    is always a pseudocodeword (rows of weight >= 2); weight below d means
    the matrix cannot attain d."""
    if any(r.bit_count() < 2 for r in rows):
        return False
    fn = _CHANNEL_FN[channel]
    best_t: dict[int, int] = {}
    for ell in range(n):
        t = min((r.bit_count() - 1 for r in rows if (r >> ell) & 1), default=None)
        if t is None:  # uncovered coordinate: free direction
            vec = [0] * n
            vec[ell] = 1
            if Fraction(fn(tuple(vec))) < d:
                return True
            continue
        best_t[ell] = t
    if not best_t:
        return False
    t = max(best_t.values())
    if t <= 1:
        return False
    ell = max(best_t, key=lambda i: best_t[i])
    vec = [1] * n
    vec[ell] = t
    return Fraction(fn(tuple(vec))) < d


def full_dual_matrix(C: LinearCode) -> BitMatrix:
    """All 2^(n-k) - 1 nonzero dual codewords as rows (r <= 16)."""
    r = C.n - C.k
    if r > 16:
        raise ValueError(f"dual too large to enumerate (r = {r})")
    if r == 0:
        raise ValueError("full-space code has an empty dual")
    words = sorted(w for w in C.dual().codewords() if w)
    return BitMatrix(words, C.n)


def is_finite(
    C: LinearCode, channel: Channel
) -> tuple[bool, Fraction, BitMatrix]:
    """Whether any parity-check matrix of C attains d on this channel.

    True iff the full dual matrix does: K(H_full) is contained in K(H) for
    every parity-check matrix H of C, so the full matrix attains the
    maximal possible minimum.  Returns (finite, full-matrix minimum, the
    full matrix).
    """
    H = full_dual_matrix(C)
    m = _rows_min(H.rows, C.n, channel)
    d = C.distance()
    assert m <= d
    return m == d, m, H


# ---------------------------------------------------------------------------
# Level enumeration up to equivalence
# ---------------------------------------------------------------------------


def _dual_words(C: LinearCode) -> list[int]:
    return sorted(w for w in C.dual().codewords() if w)


def _word_index_perms(C: LinearCode, words: Sequence[int]) -> list[list[int]]:
    """Automorphism generators as permutations of the dual-word indices."""
    group = automorphisms(C)
    gens = group.generators
    if not gens:
        return []
    index = {w: i for i, w in enumerate(words)}
    out = []
    for g in gens:
        mapped = []
        for w in words:
            img = 0
            for i in range(C.n):
                if (w >> i) & 1:
                    img |= 1 << g[i]
            mapped.append(index[img])
        out.append(mapped)
    return out


class _LevelScan:
    """Exhaustive orbit-representative iteration over one level."""

    def __init__(self, C: LinearCode, rho: int, cap: int):
        self.C = C
        self.n = C.n
        self.r = C.n - C.k
        self.words = _dual_words(C)
        self.rho = rho
        L = len(self.words)
        if rho < self.r or rho > L:
            raise ValueError(f"level {rho} out of range [{self.r}, {L}]")
        self.total = math.comb(L, rho)
        if self.total > cap:
            raise LevelTruncated(f"{self.total} subsets at level {rho} exceeds cap {cap}")
        self.gen_perms = _word_index_perms(C, self.words)

    def reps(self) -> Iterator[tuple[int, ...]]:
        """Spanning subsets (as word tuples), one per Aut(C)-orbit, in
        lexicographic order of index sets."""
        words = self.words
        L = len(words)
        visited: set[int] = set()
        for idx in combinations(range(L), self.rho):
            mask = 0
            for i in idx:
                mask |= 1 << i
            if mask in visited:
                continue
            self._flood(mask, idx, visited)
            rows = tuple(words[i] for i in idx)
            if rank_of_rows(rows) != self.r:
                continue
            yield rows

    def _flood(self, mask: int, idx: tuple[int, ...], visited: set[int]) -> None:
        visited.add(mask)
        if not self.gen_perms:
            return
        frontier = [idx]
        while frontier:
            nxt = []
            for cur in frontier:
                for perm in self.gen_perms:
                    img = tuple(sorted(perm[i] for i in cur))
                    m = 0
                    for i in img:
                        m |= 1 << i
                    if m not in visited:
                        visited.add(m)
                        nxt.append(img)
            frontier = nxt


def matrices_with_rho_rows(
    C: LinearCode, rho: int, *, cap: int = SearchBudget.level_cap
) -> Iterator[BitMatrix]:
    """One parity-check matrix per equivalence class at level rho.

    Rows are distinct nonzero dual codewords spanning the dual; equivalence
    is row permutation composed with code automorphisms on columns, realized
    as Aut(C)-orbits of row subsets.  Raises LevelTruncated when the level
    exceeds the cap.
    """
    scan = _LevelScan(C, rho, cap)
    for rows in scan.reps():
        yield BitMatrix(rows, C.n)


# ---------------------------------------------------------------------------
# Candidate generation (first-success phase)
# ---------------------------------------------------------------------------


def _constructive_candidates(C: LinearCode, rho: int) -> Iterator[tuple[int, ...]]:
    n, k = C.n, C.k
    r = n - k
    if k == 1 and rho == n - 1:
        # chain matrix over the support classes of the single codeword
        word = C.gen_rows[0]
        if word == (1 << n) - 1:
            part = Weight2Partition(n, (tuple(range(n)),))
            yield tuple(sorted(weight2_chain_matrix(part).rows))
    if k == 2 and rho == n - 2:
        try:
            yield tuple(sorted(dimension2_parity_check(C).rows))
        except ValueError:
            pass
    if rho == r:
        yield tuple(sorted(C.parity_check_matrix().rows))
    if rho == (1 << r) - 1:
        yield tuple(_dual_words(C))


def _sampled_candidates(
    C: LinearCode, rho: int, budget: SearchBudget, channel: Channel
) -> Iterator[tuple[int, ...]]:
    words = _dual_words(C)
    r = C.n - C.k
    rng = budget.rng_for(C.n, C.gen_rows, rho, channel.value, budget.seed)
    heavy = sorted(words, key=lambda w: (-w.bit_count(), w))
    if rho <= len(words):
        cand = tuple(sorted(heavy[:rho]))
        if rank_of_rows(cand) == r:
            yield cand
    seen: set[tuple[int, ...]] = set()
    for _ in range(budget.sample_tries):
        pick = rng.sample(range(len(words)), rho)
        rows = tuple(sorted(words[i] for i in pick))
        if rows in seen or rank_of_rows(rows) != r:
            continue
        seen.add(rows)
        yield rows


# ---------------------------------------------------------------------------
# The search
# ---------------------------------------------------------------------------


def _attains(rows: Sequence[int], C: LinearCode, channel: Channel, d: int) -> bool:
    if _template_fails(rows, C.n, channel, d):
        return False
    return _rows_min(rows, C.n, channel) == d


def pseudoredundancy(
    C: LinearCode,
    channel: Channel,
    budget: SearchBudget | None = None,
) -> ChannelResult:
    """rho(C) for one channel: smallest row count attaining d, or infinite,
    or unknown when a level had to be truncated without a success."""
    budget = budget or SearchBudget()
    channel = Channel(channel)
    d = C.distance()
    r = C.n - C.k
    started = time.monotonic()
    finite, full_min, full_H = is_finite(C, channel)
    if not finite:
        return ChannelResult(rho=None, infinite=True, witness=full_H)
    L = (1 << r) - 1
    examined: dict[int, int] = {}
    truncated: list[int] = []
    for rho in range(r, L + 1):
        count = 0
        # phase 1: cheap candidates
        tried: set[tuple[int, ...]] = set()
        winner: tuple[int, ...] | None = None
        for rows in _constructive_candidates(C, rho):
            if rows in tried or len(rows) != rho:
                continue
            tried.add(rows)
            count += 1
            if _attains(rows, C, channel, d):
                winner = rows
                break
        if winner is None and rho < L:
            for rows in _sampled_candidates(C, rho, budget, channel):
                if rows in tried:
                    continue
                tried.add(rows)
                count += 1
                if budget.time_cap and time.monotonic() - started > budget.time_cap:
                    break
                if _attains(rows, C, channel, d):
                    winner = rows
                    break
        # phase 2: exhaustive proof (also finds any winner phase 1 missed)
        if winner is None:
            try:
                scan = _LevelScan(C, rho, budget.level_cap)
            except LevelTruncated:
                examined[rho] = count
                truncated.append(rho)
                return ChannelResult(
                    rho=None,
                    unknown=True,
                    examined=examined,
                    truncated_levels=tuple(truncated),
                )
            for rows in scan.reps():
                count += 1
                if budget.time_cap and time.monotonic() - started > budget.time_cap:
                    examined[rho] = count
                    truncated.append(rho)
                    return ChannelResult(
                        rho=None,
                        unknown=True,
                        examined=examined,
                        truncated_levels=tuple(truncated),
                    )
                if _attains(rows, C, channel, d):
                    winner = rows
                    break
        examined[rho] = count
        if winner is not None:
            return ChannelResult(
                rho=rho,
                witness=BitMatrix(winner, C.n),
                examined=examined,
                truncated_levels=tuple(truncated),
            )
    raise AssertionError("full dual level must attain d when finite")


def level_minima(
    C: LinearCode,
    rho: int,
    channel: Channel,
    *,
    cap: int = SearchBudget.level_cap,
) -> list[tuple[BitMatrix, Fraction]]:
    """Minimum pseudoweight of every level-rho representative (exhaustive)."""
    out = []
    for H in matrices_with_rho_rows(C, rho, cap=cap):
        out.append((H, _rows_min(H.rows, C.n, Channel(channel))))
    return out


CLASS3_MAX_R = 5


def classify(
    C: LinearCode,
    channel: Channel,
    budget: SearchBudget | None = None,
    result: ChannelResult | None = None,
) -> ChannelResult:
    """Attach the class label 0-3 to a redundancy result.

    Class 3 (every parity-check matrix attains d) is confirmed exhaustively
    only for r <= 5; beyond that a class-2 label carries a note that the
    distinction from class 3 was not decided.
    """
    budget = budget or SearchBudget()
    channel = Channel(channel)
    res = result if result is not None else pseudoredundancy(C, channel, budget)
    if res.infinite:
        res.class_label = 0
        return res
    if res.unknown:
        res.class_label = None
        res.class_note = "search truncated"
        return res
    r = C.n - C.k
    if res.rho > r:
        res.class_label = 1
        return res
    if r > CLASS3_MAX_R:
        res.class_label = 2
        res.class_note = f"at least class 2; class-3 check skipped (r = {r} > {CLASS3_MAX_R})"
        return res
    d = C.distance()
    try:
        for rows in _LevelScan(C, r, budget.level_cap).reps():
            if not _attains(rows, C, channel, d):
                res.class_label = 2
                return res
    except LevelTruncated:
        res.class_label = 2
        res.class_note = "at least class 2; class-3 level truncated"
        return res
    res.class_label = 3
    return res


def batch_report(
    n: int,
    k: int,
    channels: Sequence[Channel],
    budget: SearchBudget | None = None,
    *,
    with_classes: bool = False,
) -> list[RedundancyReport]:
    """Redundancy reports for every [n, k, d>=3] code without zero
    coordinates, in canonical-key order."""
    from .codes import enumerate_codes

    budget = budget or SearchBudget()
    reports = []
    for C in enumerate_codes(n, k):
        results = {}
        for ch in channels:
            ch = Channel(ch)
            res = pseudoredundancy(C, ch, budget)
            if with_classes:
                res = classify(C, ch, budget, result=res)
            results[ch] = res
        reports.append(RedundancyReport(C, C.distance(), results))
    return reports


def report_json_object(report: RedundancyReport) -> dict:
    """One JSON-lines object per code: key, parameters, per-channel results."""
    import hashlib

    key_blob = repr(code_canonical_key(report.code)).encode()
    per_channel = {}
    for ch, res in report.results.items():
        entry: dict = {"rho": res.value_str()}
        if res.class_label is not None:
            entry["class"] = res.class_label
        if res.class_note:
            entry["class_note"] = res.class_note
        if res.witness is not None:
            entry["witness"] = res.witness.to_strings()
        per_channel[ch.value] = entry
    return {
        "format": "redundancy-batch/1",
        "code_key": hashlib.sha256(key_blob).hexdigest()[:16],
        "n": report.code.n,
        "k": report.code.k,
        "d": report.d,
        "channels": per_channel,
    }
