"""Full circulant parity-check matrices and the eigenvalue-bound scan.

A cyclic code of length n with check polynomial h dividing x^n - 1 has the
n x n circulant H[j,i] = h_(j-i mod n) as a parity-check matrix; it is
w-regular with w the weight of h.  The gram matrix H^T H is a symmetric
circulant whose spectrum comes from the autocorrelation of h via the cosine
formula, giving the eigenvalue lower bound on the AWGNC minimum in O(n^2)
per divisor.  The scan walks every divisor of x^n - 1 with a connected
Tanner graph and flags records where the bound matches an exactly-known
minimum distance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .algebra import BitMatrix, Poly2, divisors, factor_xn_minus_1
from .codes import DEFAULT_DISTANCE_THRESHOLD, from_parity_check, min_distance

__all__ = [
    "CyclicCodeSpec",
    "ScanRecord",
    "KNOWN_DISTANCES",
    "full_circulant",
    "connected",
    "circulant_bound",
    "scan",
    "kronecker_expand",
    "hamming_parity_family",
]

SHARP_TOL = 1e-6
MU1_CHECK_TOL = 1e-8
MU2_RELATIVE_TOL = 1e-9


@dataclass(frozen=True)
class CyclicCodeSpec:
    """Length n plus a check polynomial dividing x^n - 1; dimension = deg h."""

    n: int
    h: Poly2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.h.is_zero() or self.h.degree > self.n:
            raise ValueError("check polynomial out of range")
        xn1 = Poly2((1 << self.n) | 1)
        if not self.h.divides(xn1):
            raise ValueError("check polynomial does not divide x^n - 1")

    @property
    def k(self) -> int:
        return self.h.degree

    @property
    def w(self) -> int:
        return self.h.weight()


@dataclass(frozen=True)
class ScanRecord:
    """One (n, h) scan item; bound present only when connected, d only when
    exactly known (with its provenance)."""

    n: int
    h: int  # coefficient bitmask, bit i = coefficient of x^i
    k: int
    w: int
    connected: bool
    mu2: float | None
    bound: float | None
    d: int | None
    d_source: str | None  # "enumerated" | "structural" | "given"
    sharp: bool


def full_circulant(spec: CyclicCodeSpec) -> BitMatrix:
    """n x n matrix with H[j,i] = h_(j-i mod n); ker is the cyclic code."""
    n = spec.n
    hbits = spec.h.value
    rows = []
    for j in range(n):
        row = 0
        for i in range(n):
            if (hbits >> ((j - i) % n)) & 1:
                row |= 1 << i
        rows.append(row)
    return BitMatrix(rows, n)


def connected(spec: CyclicCodeSpec) -> bool:
    """gcd of n and the support indices of h equals 1."""
    g = spec.n
    for i in spec.h.support():
        g = math.gcd(g, i)
    return g == 1


def _rotate(bits: int, shift: int, n: int) -> int:
    shift %= n
    mask = (1 << n) - 1
    return ((bits >> shift) | (bits << (n - shift))) & mask


def _autocorrelation(spec: CyclicCodeSpec) -> list[int]:
    """l_i = sum_k h_k h_(k+i mod n)."""
    hbits = spec.h.value
    n = spec.n
    return [(hbits & _rotate(hbits, i, n)).bit_count() for i in range(n)]


def gram_eigenvalues(spec: CyclicCodeSpec) -> list[float]:
    """Circulant spectrum lambda_j = sum_i l_i cos(2 pi i j / n), computed
    with compensated summation."""
    n = spec.n
    ell = _autocorrelation(spec)
    tau = 2.0 * math.pi / n
    return [
        math.fsum(ell[i] * math.cos(tau * ((i * j) % n)) for i in range(n))
        for j in range(n)
    ]


def circulant_bound(spec: CyclicCodeSpec) -> tuple[float, float]:
    """(eigenvalue bound, mu2) from the exact autocorrelation spectrum.

    mu1 is checked against its algebraic value w^2; the bound uses w^2
    exactly so that algebraic cancellations (the repetition family) survive
    floating point.
    """
    if not connected(spec):
        raise ValueError("Tanner graph is disconnected")
    w = spec.w
    eigs = gram_eigenvalues(spec)
    mu1 = max(eigs)
    scale = max(1.0, float(w * w))
    if abs(mu1 - w * w) > MU1_CHECK_TOL * scale:
        raise AssertionError(f"mu1 = {mu1} deviates from w^2 = {w * w}")
    cut = w * w - max(MU2_RELATIVE_TOL * w * w, 1e-12)
    below = [v for v in eigs if v < cut]
    if not below:
        raise ValueError("spectrum has no second eigenvalue")
    mu2 = max(below)
    bound = spec.n * (2 * w - mu2) / (w * w - mu2)
    return bound, mu2


def _proper_period_exists(hbits: int, n: int) -> bool:
    """True iff the length-n coefficient vector of h has a period p < n."""
    for q in {p for p in _prime_factors(n)}:
        if _rotate(hbits, n // q, n) == hbits:
            return True
    return False


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def structural_distance_le_2(spec: CyclicCodeSpec) -> int | None:
    """Exact d when d <= 2, from the circulant column pattern.

    Columns of the full circulant are the cyclic rotations of h's
    coefficient vector, so two columns coincide iff the vector has a proper
    period; h != 0 rules out d = 1.  Returns 2 or None (meaning d >= 3).
    """
    return 2 if _proper_period_exists(spec.h.value, spec.n) else None


def cyclic_min_weight_at_most(spec: CyclicCodeSpec, t: int) -> int | None:
    """Exact d when d <= t, by searching low-weight generator multiples.

    Every nonzero codeword of a cyclic code has a cyclic shift whose support
    contains position 0, so weight-w codewords are found by testing all
    supports {0, i_2, ..., i_w} for divisibility by the generator
    polynomial.  Returns d if d <= t, else None (meaning d > t).
    """
    n = spec.n
    g = Poly2((1 << n) | 1) // spec.h
    for w in range(2, t + 1):
        for rest in combinations(range(1, n), w - 1):
            c = 1
            for i in rest:
                c |= 1 << i
            if g.divides(Poly2(c)):
                return w
    return None


# Minimum distances from the standard code tables, for scan records whose
# bound is an integer too large for the low-weight search and whose
# dimension exceeds the enumeration threshold: the two-dimensional affine
# and projective geometry codes over F8, [63,37,9] and [73,45,10].
KNOWN_DISTANCES: dict[tuple[int, int], int] = {
    (63, 0x2102600105): 9,
    (63, 0x2820019021): 9,
    (73, 0x241023000405): 10,
    (73, 0x280800310209): 10,
}

SMALL_WEIGHT_SEARCH_CAP = 5


def _scan_one_length(args) -> list[ScanRecord]:
    n, distance_threshold, known_d_items, compute_d = args
    known_d = dict(known_d_items)
    records = []
    for h in divisors(factor_xn_minus_1(n)):
        if h.degree < 1 or h.degree >= n:
            continue  # zero code and full space carry no content
        spec = CyclicCodeSpec(n, h)
        conn = connected(spec)
        mu2 = bound = None
        if conn:
            bound, mu2 = circulant_bound(spec)
        d = structural_distance_le_2(spec)
        d_source = "structural" if d is not None else None
        if d is None and (n, h.value) in known_d:
            d = known_d[(n, h.value)]
            d_source = "given"
        if d is None:
            near_int = bound is not None and abs(bound - round(bound)) < SHARP_TOL
            target = round(bound) if near_int else None
            if compute_d == "all" and spec.k <= distance_threshold:
                code = from_parity_check(full_circulant(spec))
                d = min_distance(code, threshold=distance_threshold)
                d_source = "enumerated"
            elif compute_d == "auto" and target is not None and target >= 3:
                # d is only needed where sharpness is decidable
                if spec.k <= distance_threshold:
                    code = from_parity_check(full_circulant(spec))
                    d = min_distance(code, threshold=distance_threshold)
                    d_source = "enumerated"
                elif target <= SMALL_WEIGHT_SEARCH_CAP:
                    d = cyclic_min_weight_at_most(spec, target)
                    if d is not None:
                        d_source = "weight-search"
        sharp = (
            d is not None and bound is not None and abs(bound - d) < SHARP_TOL
        )
        records.append(
            ScanRecord(n, h.value, spec.k, spec.w, conn, mu2, bound, d, d_source, sharp)
        )
    return records


def scan(
    n_max: int,
    *,
    distance_threshold: int = DEFAULT_DISTANCE_THRESHOLD,
    known_d: Mapping[tuple[int, int], int] | None = None,
    compute_d: str = "auto",
    workers: int | None = None,
) -> list[ScanRecord]:
    """Scan every divisor of x^n - 1 for all n <= n_max.

    d is filled exactly: structurally for d <= 2 (periodic coefficient
    vector), by codeword enumeration when the dimension is within the
    threshold, or from `known_d` overrides keyed by (n, h).  With
    compute_d="auto" the enumeration only runs where the bound is within
    1e-6 of an integer, which is the only place sharpness is decidable;
    "all" forces it everywhere the threshold allows, "none" disables it.

    Records are returned in (n, h) order regardless of worker count.
    """
    if n_max > 250:
        raise ValueError("scan limited to n_max <= 250")
    if compute_d not in ("auto", "all", "none"):
        raise ValueError("compute_d must be auto, all, or none")
    known_items = tuple(sorted((known_d or {}).items()))
    tasks = [(n, distance_threshold, known_items, compute_d) for n in range(1, n_max + 1)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and n_max >= 16:
        import multiprocessing as mp

        with mp.Pool(workers) as pool:
            chunks = pool.map(_scan_one_length, tasks)
    else:
        chunks = [_scan_one_length(t) for t in tasks]
    out = [rec for chunk in chunks for rec in chunk]
    out.sort(key=lambda r: (r.n, r.h))
    return out


def kronecker_expand(H: BitMatrix, m: int) -> tuple[BitMatrix, float]:
    """H (x) all-ones(m), plus the expanded eigenvalue bound.

    The expanded gram has eigenvalues m^2 times the base spectrum padded
    with zeros, so the bound becomes n (2w - m*mu2) / (w^2 - mu2) with mu2
    taken from the base circulant.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    nrows, n = H.shape
    if nrows != n:
        raise ValueError("need a square circulant")
    hbits = sum(((H.rows[0] >> ((n - k) % n)) & 1) << k for k in range(n))
    spec = CyclicCodeSpec(n, Poly2(hbits))
    if full_circulant(spec) != H:
        raise ValueError("matrix is not a full circulant")
    bound, mu2 = circulant_bound(spec)
    w = spec.w
    expanded_bound = n * (2 * w - m * mu2) / (w * w - mu2)
    rows = []
    for j in range(n):
        base = H.rows[j]
        row = 0
        for i in range(n):
            if (base >> i) & 1:
                row |= ((1 << m) - 1) << (i * m)
        for _ in range(m):
            rows.append(row)
    return BitMatrix(rows, n * m), expanded_bound


def _primitive_degree_m_factor(n: int, m: int) -> Poly2:
    """Lexicographically least primitive irreducible degree-m factor of
    x^n - 1, n = 2^m - 1 (x generates the full multiplicative order)."""
    x = Poly2(2)
    for p in factor_xn_minus_1(n):
        if p.degree != m:
            continue
        primitive = True
        for q in set(_prime_factors(n)):
            if x.pow_mod(n // q, p) == Poly2(1) % p:
                primitive = False
                break
        if primitive:
            return p
    raise AssertionError(f"no primitive degree-{m} factor for n={n}")


def hamming_parity_family(m: int) -> tuple[CyclicCodeSpec, Fraction]:
    """Even-weight subcode of the Hamming code of length 2^m - 1, as a
    cyclic spec, with the exact eigenvalue bound 3 + 1/(2^(m-2) - 1).

    The check polynomial is (x^n - 1) / ((x + 1) p(x)) for a primitive
    degree-m factor p; the full circulant is (2^(m-1) - 1)-regular and its
    gram has exactly two distinct eigenvalues.
    """
    if m < 3:
        raise ValueError("m must be >= 3")
    n = (1 << m) - 1
    p = _primitive_degree_m_factor(n, m)
    g = Poly2(3) * p  # (x + 1) p(x)
    h = Poly2((1 << n) | 1) // g
    spec = CyclicCodeSpec(n, h)
    w = spec.w
    assert w == (1 << (m - 1)) - 1
    exact = 3 + Fraction(1, (1 << (m - 2)) - 1)
    return spec, exact
