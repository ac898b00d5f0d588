"""Closed-form pseudoweight bounds: dual-distance, design, and eigenvalue.

Upper bounds from the dual distance hold for every parity-check matrix of
the code because their witness vectors lie in every fundamental cone.  The
design lower bound 1 + w_c/lambda applies whenever a subset of the rows
forms a partial design; the eigenvalue bound needs a regular matrix with a
connected Tanner graph and reduces to the design bound in the BIBD case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import BitMatrix, integer_gram

__all__ = [
    "BoundInapplicable",
    "DesignParams",
    "awgnc_dual_bound",
    "awgnc_bound_witness",
    "bsc_dual_bound",
    "bsc_bound_witness",
    "detect_design",
    "design_lower_bound",
    "symmetric_eigenvalues",
    "eigenvalue_bound",
    "bibd_closed_form",
    "tanner_graph_connected",
]

MU2_RELATIVE_TOL = 1e-9


class BoundInapplicable(ValueError):
    """The requested bound's preconditions fail for this input."""


def awgnc_dual_bound(n: int, d_dual: int) -> Fraction:
    """(n + d'-2)^2 / ((d'-1)^2 + (n-1)): AWGNC minimum <= this for every
    parity-check matrix of a code with dual distance d'."""
    if not 1 <= d_dual <= n:
        raise ValueError("need 1 <= dual distance <= n")
    return Fraction((n + d_dual - 2) ** 2, (d_dual - 1) ** 2 + (n - 1))


def awgnc_bound_witness(n: int, d_dual: int) -> tuple[int, ...]:
    """(d'-1, 1, ..., 1): a pseudocodeword of every matrix with rows of
    weight >= d'."""
    return (d_dual - 1,) + (1,) * (n - 1)


def bsc_dual_bound(n: int, d_dual: int) -> int:
    """2 * ceil(n / d'): BSC minimum <= this for every parity-check matrix."""
    if not 1 <= d_dual <= n:
        raise ValueError("need 1 <= dual distance <= n")
    return 2 * math.ceil(n / d_dual)


def bsc_bound_witness(n: int, d_dual: int) -> tuple[int, ...]:
    tau = math.ceil(n / d_dual)
    return (d_dual - 1,) * tau + (1,) * (n - tau)


# ---------------------------------------------------------------------------
# Designs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DesignParams:
    """Partial (w_c, lambda) design or BIBD read off an incidence matrix."""

    n: int
    m: int
    w_c: int
    lam: int
    w_r: int | None  # constant block size, BIBD only
    kind: str  # "partial" | "bibd"

    def __post_init__(self):
        if self.kind == "bibd":
            if self.w_c * (self.w_r - 1) != self.lam * (self.n - 1):
                raise ValueError("BIBD replication identity fails")
            if self.n * self.w_c != self.m * self.w_r:
                raise ValueError("BIBD counting identity fails")


def detect_design(H: BitMatrix) -> DesignParams | None:
    """Detect a partial design (constant column weight) and upgrade to BIBD
    when row weights and pair coverage are constant.

    The reported lambda is the observed maximum pair coverage, which gives
    the tightest 1 + w_c/lambda bound.
    """
    m, n = H.shape
    col_weights = {H.col_weight(j) for j in range(n)}
    if len(col_weights) != 1:
        return None
    w_c = col_weights.pop()
    if w_c == 0:
        return None
    cols = [H.column_mask(j) for j in range(n)]
    coverages = [
        (cols[i] & cols[j]).bit_count() for i in range(n) for j in range(i + 1, n)
    ]
    if n == 1 or max(coverages) == 0:
        return None
    lam = max(coverages)
    row_weights = {r.bit_count() for r in H.rows}
    if len(row_weights) == 1 and min(coverages) == lam:
        return DesignParams(n, m, w_c, lam, row_weights.pop(), "bibd")
    return DesignParams(n, m, w_c, lam, None, "partial")


def design_lower_bound(params: DesignParams) -> Fraction:
    """1 + w_c/lambda, a lower bound on the max-fractional, AWGNC, and BSC
    minima of any matrix containing the design rows."""
    if params.lam < 1:
        raise ValueError("lambda must be >= 1")
    return 1 + Fraction(params.w_c, params.lam)


def bibd_closed_form(n: int, w_r: int, lam: int) -> Fraction:
    """Exact eigenvalue bound 1 + w_c/lambda for a BIBD incidence matrix,
    using mu1 = w_r*w_c and mu2 = w_c - lambda."""
    if n <= 1 or lam < 1 or w_r < 2:
        raise ValueError("degenerate BIBD parameters")
    num = lam * (n - 1)
    if num % (w_r - 1):
        raise ValueError("inconsistent BIBD parameters: w_c not integral")
    w_c = num // (w_r - 1)
    if (lam * n * (n - 1)) % (w_r * (w_r - 1)):
        raise ValueError("inconsistent BIBD parameters: m not integral")
    mu1 = w_r * w_c
    mu2 = w_c - lam
    assert Fraction(n * (2 * w_c - mu2), mu1 - mu2) == 1 + Fraction(w_c, lam)
    return 1 + Fraction(w_c, lam)


# ---------------------------------------------------------------------------
# Eigenvalue machinery
# ---------------------------------------------------------------------------


def symmetric_eigenvalues(L: Sequence[Sequence[float]] | np.ndarray) -> list[float]:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    sorted descending.  Off-diagonal mass is driven below 1e-12 times the
    trace scale."""
    A = np.array(L, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("need a square matrix")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1.0, np.abs(A).max())):
        raise ValueError("matrix is not symmetric")
    n = A.shape[0]
    if n > 256:
        raise ValueError("Jacobi solver limited to dimension 256")
    if n == 1:
        return [float(A[0, 0])]
    scale = max(1.0, float(np.abs(np.diag(A)).sum()))
    tol = 1e-12 * scale
    for _ in range(60):  # cyclic sweeps; quadratic convergence in practice
        off = math.sqrt(max(0.0, float((A**2).sum() - (np.diag(A) ** 2).sum())))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= tol / (n * n):
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
    return sorted((float(v) for v in np.diag(A)), reverse=True)


def tanner_graph_connected(H: BitMatrix) -> bool:
    """Bipartite reachability between check and variable nodes."""
    m, n = H.shape
    seen_rows = {0}
    seen_cols: set[int] = set()
    frontier = [("r", 0)]
    while frontier:
        kind, idx = frontier.pop()
        if kind == "r":
            for j in range(n):
                if (H.rows[idx] >> j) & 1 and j not in seen_cols:
                    seen_cols.add(j)
                    frontier.append(("c", j))
        else:
            mask = H.column_mask(idx)
            for i in range(m):
                if (mask >> i) & 1 and i not in seen_rows:
                    seen_rows.add(i)
                    frontier.append(("r", i))
    return len(seen_rows) == m and len(seen_cols) == n


def eigenvalue_bound(H: BitMatrix) -> float:
    """n * (2 w_c - mu2) / (mu1 - mu2) for a regular connected matrix.

    mu1 >= mu2 are the top eigenvalues of H^T H over the reals; eigenvalues
    within 1e-9 * mu1 of mu1 count as mu1 (the Perron root is simple for a
    connected Tanner graph, so this only absorbs numerical jitter).
    """
    m, n = H.shape
    row_weights = {r.bit_count() for r in H.rows}
    col_weights = {H.col_weight(j) for j in range(n)}
    if len(row_weights) != 1 or len(col_weights) != 1:
        raise BoundInapplicable("not regular")
    w_c = col_weights.pop()
    if w_c == 0:
        raise BoundInapplicable("zero matrix")
    if not tanner_graph_connected(H):
        raise BoundInapplicable("Tanner graph disconnected")
    eigs = symmetric_eigenvalues(integer_gram(H))
    mu1 = eigs[0]
    cut = mu1 - MU2_RELATIVE_TOL * abs(mu1)
    below = [v for v in eigs if v < cut]
    if not below:
        raise BoundInapplicable("no second eigenvalue")
    mu2 = below[0]
    return n * (2 * w_c - mu2) / (mu1 - mu2)
