"""The four pseudoweight functionals and minima over a fundamental cone.

All four weights are scale invariant and collapse to the Hamming weight on
0/1 vectors.  Minima over the cone are attained on extreme rays: on the
cross-section sum(x) = 1 both sum(x^2) and max(x) are convex (maximized at
vertices), the support of any cone member contains the support of a ray in
its conic decomposition, and the BSC functional is quasi-concave since
x -> Phi_x(c) is a maximum of linear functionals.  Results are exact
rationals; witnesses break ties by lexicographically least ray.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import BitMatrix
from .cone import Ray, build, extreme_rays

__all__ = [
    "Channel",
    "PseudoweightReport",
    "w_bec",
    "w_awgnc",
    "w_bsc",
    "w_maxfrac",
    "weight",
    "min_pseudoweights",
    "spectrum_gap",
]


class Channel(str, Enum):
    BEC = "bec"
    AWGNC = "awgnc"
    BSC = "bsc"
    MAXFRAC = "maxfrac"


def _check_vector(x: Sequence) -> bool:
    """Validate nonnegativity; returns True when x is all zero (flagged)."""
    if any(v < 0 for v in x):
        raise ValueError("pseudoweights are defined on nonnegative vectors")
    if all(v == 0 for v in x):
        warnings.warn("pseudoweight of the zero vector (defined as 0)", stacklevel=3)
        return True
    return False


def w_bec(x: Sequence) -> int:
    """Support size."""
    if _check_vector(x):
        return 0
    return sum(1 for v in x if v > 0)


def w_awgnc(x: Sequence) -> Fraction:
    """(sum x)^2 / sum x^2."""
    if _check_vector(x):
        return Fraction(0)
    s = sum(Fraction(v) for v in x)
    q = sum(Fraction(v) * Fraction(v) for v in x)
    return s * s / q


def w_bsc(x: Sequence) -> Fraction:
    """2 * Phi^{-1}(S/2) for the piecewise-linear mass profile Phi.

    With x' sorted non-increasing and S = sum(x), Phi(i) is the sum of the i
    largest entries; the result is 2*((i-1) + (S/2 - Phi(i-1)) / x'_i) where
    i is the least integer with Phi(i) >= S/2.
    """
    if _check_vector(x):
        return Fraction(0)
    xs = sorted((Fraction(v) for v in x), reverse=True)
    S = sum(xs)
    half = S / 2
    acc = Fraction(0)
    for i, v in enumerate(xs, start=1):
        if acc + v >= half:
            return 2 * ((i - 1) + (half - acc) / v)
        acc += v
    raise AssertionError("unreachable: Phi(n) = S >= S/2")


def w_maxfrac(x: Sequence) -> Fraction:
    """sum x / max x."""
    if _check_vector(x):
        return Fraction(0)
    s = sum(Fraction(v) for v in x)
    return s / max(Fraction(v) for v in x)


_FUNCTIONALS = {
    Channel.BEC: w_bec,
    Channel.AWGNC: w_awgnc,
    Channel.BSC: w_bsc,
    Channel.MAXFRAC: w_maxfrac,
}


def weight(channel: Channel, x: Sequence) -> Fraction:
    return Fraction(_FUNCTIONALS[Channel(channel)](x))


@dataclass(frozen=True)
class PseudoweightReport:
    """Per-channel minimum pseudoweights of a matrix, with witness rays."""

    matrix: BitMatrix
    ray_count: int
    minima: dict[Channel, Fraction]
    witnesses: dict[Channel, Ray]

    def minimum(self, channel: Channel) -> Fraction:
        return self.minima[Channel(channel)]

    def chain_holds(self) -> bool:
        m = self.minima
        return (
            m[Channel.MAXFRAC] <= m[Channel.AWGNC] <= m[Channel.BEC]
            and m[Channel.MAXFRAC] <= m[Channel.BSC] <= m[Channel.BEC]
        )


def min_pseudoweights(
    H: BitMatrix,
    *,
    rays: Sequence[Ray] | None = None,
    max_rays: int | None = None,
) -> PseudoweightReport:
    """Minimum BEC/AWGNC/BSC/max-fractional pseudoweights of K(H).

    Minima are taken over extreme rays (see module docstring); ties pick the
    lexicographically least witness.  A precomputed ray list may be passed to
    avoid re-running the double description.
    """
    if rays is None:
        kwargs = {} if max_rays is None else {"max_rays": max_rays}
        rays = extreme_rays(build(H), **kwargs)
    if not rays:
        raise ValueError("cone is trivial ({0}); no nonzero pseudocodewords")
    minima: dict[Channel, Fraction] = {}
    witnesses: dict[Channel, Ray] = {}
    for ch, fn in _FUNCTIONALS.items():
        best: Fraction | None = None
        wit: Ray | None = None
        for r in rays:
            val = Fraction(fn(r.coords))
            if best is None or val < best or (val == best and r < wit):
                best, wit = val, r
        minima[ch] = best
        witnesses[ch] = wit
    report = PseudoweightReport(H, len(rays), minima, witnesses)
    assert report.chain_holds(), "pseudoweight chain violated; ray set suspect"
    return report


def _is_codeword_multiple(H: BitMatrix, ray: Ray) -> bool:
    """A gcd-normalized multiple of a binary codeword is the codeword itself."""
    if not ray.is_binary():
        return False
    bits = sum(1 << i for i, c in enumerate(ray.coords) if c)
    return H.mul_vector(bits) == 0


def spectrum_gap(
    H: BitMatrix,
    channel: Channel,
    *,
    rays: Sequence[Ray] | None = None,
    distance: int | None = None,
    distance_threshold: int = 28,
):
    """Pseudoweight spectrum gap: min over non-codeword minimal
    pseudocodewords of (weight - d); +inf when every ray is a codeword
    multiple."""
    from .codes import from_parity_check, min_distance

    if rays is None:
        rays = extreme_rays(build(H))
    if distance is None:
        distance = min_distance(from_parity_check(H), threshold=distance_threshold)
    fn = _FUNCTIONALS[Channel(channel)]
    gaps = [
        Fraction(fn(r.coords)) - distance
        for r in rays
        if not _is_codeword_multiple(H, r)
    ]
    if not gaps:
        return math.inf
    return min(gaps)
