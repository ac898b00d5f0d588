"""Fundamental cone of a parity-check matrix and exact extreme-ray enumeration.

The cone of an m x n parity-check matrix H is cut out by one inequality
x_l <= sum_{i in I_j \\ {l}} x_i per (check row j, position l in its support)
together with x_i >= 0 for every coordinate.  Extreme rays are enumerated by
the double description method over exact integers: start from the nonnegative
orthant and insert the check inequalities one at a time, keeping only
adjacent positive/negative ray pairs.  Rays are gcd-normalized integer
vectors, so ray lists compare exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .algebra import BitMatrix

__all__ = [
    "FundamentalCone",
    "Ray",
    "RayOverflowError",
    "build",
    "contains",
    "extreme_rays",
    "brute_force_rays",
]

DEFAULT_RAY_CAP = 200_000


class RayOverflowError(RuntimeError):
    """Raised when intermediate or final ray counts exceed the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"ray count {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class Ray:
    """Extreme ray: nonnegative integer coordinates with entry gcd 1."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("zero vector is not a ray")
        if any(c < 0 for c in self.coords):
            raise ValueError("ray coordinates must be nonnegative")
        if math.gcd(*self.coords) != 1:
            raise ValueError("ray coordinates must have gcd 1")

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c)

    def is_binary(self) -> bool:
        return all(c in (0, 1) for c in self.coords)

    def __lt__(self, other: "Ray") -> bool:
        return self.coords < other.coords


@dataclass(frozen=True)
class FundamentalCone:
    """H-representation: rows `a` with contract a . x >= 0, plus provenance.

    Tags are ("check", row, position) for check-derived rows and
    ("nonneg", i) for the orthant rows.
    """

    dim: int
    ineqs: tuple[tuple[int, ...], ...]
    tags: tuple[tuple, ...]

    def check_count(self) -> int:
        return sum(1 for t in self.tags if t[0] == "check")


def build(H: BitMatrix) -> FundamentalCone:
    """Fundamental cone of H; all-zero rows are dropped with a warning."""
    n = H.cols
    ineqs: list[tuple[int, ...]] = []
    tags: list[tuple] = []
    for j, row in enumerate(H.rows):
        if row == 0:
            warnings.warn(f"dropping all-zero check row {j}", stacklevel=2)
            continue
        support = [i for i in range(n) if (row >> i) & 1]
        for ell in support:
            vec = [0] * n
            for i in support:
                vec[i] = 1
            vec[ell] = -1
            ineqs.append(tuple(vec))
            tags.append(("check", j, ell))
    for i in range(n):
        vec = [0] * n
        vec[i] = 1
        ineqs.append(tuple(vec))
        tags.append(("nonneg", i))
    return FundamentalCone(n, tuple(ineqs), tuple(tags))


def contains(K: FundamentalCone, x: Sequence) -> bool:
    """True iff x satisfies every inequality of K (exact arithmetic)."""
    if len(x) != K.dim:
        raise ValueError(f"vector length {len(x)} != cone dimension {K.dim}")
    for a in K.ineqs:
        if sum(c * v for c, v in zip(a, x) if c) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------


def _normalize(vec: list[int]) -> tuple[int, ...]:
    g = math.gcd(*vec)
    if g > 1:
        vec = [c // g for c in vec]
    return tuple(vec)


def _contract_equalities(K: FundamentalCone):
    """Collapse coordinates forced equal by complementary check pairs.

    A weight-2 check row contributes x_a <= x_b and x_b <= x_a, i.e. an
    equality; contracting such coordinate classes shrinks the DD dimension
    without changing the ray set (rays expand back by duplication).
    Returns (class list, reduced inequality list) or None when nothing
    contracts.
    """
    n = K.dim
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    merged = False
    for a, tag in zip(K.ineqs, K.tags):
        if tag[0] != "check":
            continue
        support = [i for i, c in enumerate(a) if c]
        if len(support) == 2:
            ra, rb = find(support[0]), find(support[1])
            if ra != rb:
                parent[ra] = rb
                merged = True
    if not merged:
        return None
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    ordered = sorted(classes.values(), key=lambda c: c[0])
    index_of = {}
    for ci, cls in enumerate(ordered):
        for i in cls:
            index_of[i] = ci
    reduced = []
    for a, tag in zip(K.ineqs, K.tags):
        vec = [0] * len(ordered)
        for i, c in enumerate(a):
            if c:
                vec[index_of[i]] += c
        if any(vec):
            reduced.append((tuple(vec), tag))
        elif tag[0] == "check" and min(vec) < 0:  # pragma: no cover
            reduced.append((tuple(vec), tag))
    return ordered, reduced


def _dd_core(
    dim: int,
    start_rays: Sequence[tuple[int, ...]] | None,
    prior_checks: Sequence[tuple[int, ...]],
    new_checks: Sequence[tuple[int, ...]],
    cap: int,
) -> list[tuple[int, ...]]:
    """DD insertion loop, optionally warm-started.

    `start_rays` must be the complete extreme-ray set of the cone cut out by
    the orthant plus `prior_checks`; the new checks are then inserted one at
    a time.  Insertion order is increasing support size, which empirically
    bounds intermediate growth.
    """
    prior = list(dict.fromkeys(prior_checks))
    prior_set = set(prior)
    pending = sorted(
        {a for a in new_checks if a not in prior_set},
        key=lambda a: (sum(1 for c in a if c), a),
    )
    # all_ineqs = orthant rows, prior checks, then pending; masks index into it
    all_ineqs: list[tuple[int, ...]] = []
    for i in range(dim):
        vec = [0] * dim
        vec[i] = 1
        all_ineqs.append(tuple(vec))
    all_ineqs.extend(prior)
    all_ineqs.extend(pending)
    supports = [tuple(i for i, c in enumerate(a) if c) for a in all_ineqs]

    def tight_mask(coords: tuple[int, ...]) -> int:
        mask = 0
        for idx, (a, sup) in enumerate(zip(all_ineqs, supports)):
            if sum(a[i] * coords[i] for i in sup) == 0:
                mask |= 1 << idx
        return mask

    if start_rays is None:
        start_rays = []
        for i in range(dim):
            vec = [0] * dim
            vec[i] = 1
            start_rays.append(tuple(vec))
    rays = list(start_rays)
    masks = [tight_mask(c) for c in rays]

    processed = (1 << (dim + len(prior))) - 1  # orthant and prior rows hold
    for offset, a in enumerate(pending):
        idx = dim + len(prior) + offset
        sup = supports[idx]
        vals = [sum(a[i] * r[i] for i in sup) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        processed |= 1 << idx
        if not neg:
            continue
        new_rays: dict[tuple[int, ...], int] = {}
        keep_masks = [masks[t] for t in pos + zer]
        for p, m in ((p, m) for p in pos for m in neg):
            T = masks[p] & masks[m] & processed
            if T.bit_count() < dim - 2:
                continue
            # combinatorial adjacency: no third extreme ray tight on all of T
            adjacent = True
            for t, tm in enumerate(masks):
                if t != p and t != m and (tm & T) == T:
                    adjacent = False
                    break
            if not adjacent:
                continue
            vp, vm = vals[p], vals[m]
            combo = [vp * rm - vm * rp for rp, rm in zip(rays[p], rays[m])]
            coords = _normalize(combo)
            if coords not in new_rays:
                new_rays[coords] = tight_mask(coords)
        rays = [rays[t] for t in pos + zer] + list(new_rays)
        masks = keep_masks + list(new_rays.values())
        if len(rays) > cap:
            raise RayOverflowError(len(rays), cap)
    return rays


def _dd_rays(
    dim: int, check_ineqs: Sequence[tuple[int, ...]], cap: int
) -> list[tuple[int, ...]]:
    return _dd_core(dim, None, (), check_ineqs, cap)


def check_row_inequalities(row: int, n: int) -> list[tuple[int, ...]]:
    """The cone inequalities contributed by one parity-check row."""
    support = [i for i in range(n) if (row >> i) & 1]
    out = []
    for ell in support:
        vec = [0] * n
        for i in support:
            vec[i] = 1
        vec[ell] = -1
        out.append(tuple(vec))
    return out


@lru_cache(maxsize=200_000)
def rays_for_check_rows(rows: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    """Extreme rays for the cone of the given parity-check rows, memoized.

    Recursion on row prefixes warm-starts the DD, so enumerating many
    matrices that share leading rows (the redundancy level scans) only pays
    for the last row's inequalities.  Rows must be nonzero.
    """
    if not rows:
        out = []
        for i in range(n):
            vec = [0] * n
            vec[i] = 1
            out.append(tuple(vec))
        return tuple(out)
    parent = rays_for_check_rows(rows[:-1], n)
    prior: list[tuple[int, ...]] = []
    for r in rows[:-1]:
        prior.extend(check_row_inequalities(r, n))
    new = check_row_inequalities(rows[-1], n)
    return tuple(_dd_core(n, parent, prior, new, DEFAULT_RAY_CAP))


def extreme_rays(K: FundamentalCone, max_rays: int = DEFAULT_RAY_CAP) -> list[Ray]:
    """Complete duplicate-free extreme-ray list, lexicographically sorted."""
    contraction = _contract_equalities(K)
    if contraction is None:
        checks = [a for a, t in zip(K.ineqs, K.tags) if t[0] == "check"]
        coords_list = _dd_rays(K.dim, checks, max_rays)
    else:
        classes, reduced = contraction
        red_dim = len(classes)
        checks = [
            vec for vec, tag in reduced if tag[0] == "check" and any(vec)
        ]
        coords_small = _dd_rays(red_dim, checks, max_rays)
        coords_list = []
        for small in coords_small:
            full = [0] * K.dim
            for ci, cls in enumerate(classes):
                for i in cls:
                    full[i] = small[ci]
            coords_list.append(tuple(full))
    out = sorted(Ray(c) for c in coords_list if any(c))
    if len(out) > max_rays:
        raise RayOverflowError(len(out), max_rays)
    return out


# ---------------------------------------------------------------------------
# Independent oracle
# ---------------------------------------------------------------------------


def _nullspace_1d(rows: list[tuple[int, ...]], dim: int) -> tuple[int, ...] | None:
    """If the rows have rank dim-1, return an integer spanning vector."""
    # fraction-free Gaussian elimination over Z
    mat = [list(r) for r in rows]
    piv_cols: list[int] = []
    r = 0
    for c in range(dim):
        sel = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f1, f2 = mat[r][c], mat[i][c]
                mat[i] = [f1 * x - f2 * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
        if r == len(mat):
            break
    if r != dim - 1:
        return None
    free = next(c for c in range(dim) if c not in piv_cols)
    vec = [Fraction(0)] * dim
    vec[free] = Fraction(1)
    for i, c in zip(range(r), piv_cols):
        vec[c] = Fraction(-mat[i][free], mat[i][c])
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def brute_force_rays(K: FundamentalCone, max_dim: int = 7) -> list[Ray]:
    """Oracle ray enumeration by exhausting (n-1)-subsets of inequalities.

    For every (n-1)-subset with a one-dimensional null space, keep the
    spanning vector (sign-fixed) iff it satisfies the whole system.  This is
    independent of the double description path and exact, but exponential;
    intended for n <= 7.
    """
    if K.dim > max_dim:
        raise ValueError(f"brute force limited to dimension {max_dim}")
    if K.dim == 1:
        coords = (1,)
        return [Ray(coords)] if contains(K, coords) else []
    seen: set[tuple[int, ...]] = set()
    uniq = sorted(set(K.ineqs))
    for subset in combinations(uniq, K.dim - 1):
        vec = _nullspace_1d(list(subset), K.dim)
        if vec is None:
            continue
        for cand in (vec, tuple(-v for v in vec)):
            if all(c >= 0 for c in cand) and any(cand) and contains(K, cand):
                seen.add(cand)
                break
    return sorted(Ray(c) for c in seen)
