"""Exact arithmetic substrate: dense F2 linear algebra and F2[x] factorization.

Matrices over F2 are stored row-major as Python integers (bit i of a row is
column i), which keeps row operations single XORs and makes everything
hashable and immutable.  Rationals are ``fractions.Fraction`` throughout;
no fixed-width arithmetic is used anywhere on the exact paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "BitVector",
    "Poly2",
    "rref",
    "kernel_basis",
    "integer_gram",
    "factor_xn_minus_1",
    "divisors",
]


@dataclass(frozen=True)
class BitVector:
    """A length-`n` vector over F2, packed into an int (bit i = coordinate i)."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("BitVector length must be >= 1")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside declared length")

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    def __str__(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))


class BitMatrix:
    """Immutable dense matrix over F2.

    Rows are ints with bit i holding the entry in column i.  Equality and
    hashing are by exact entries, so a BitMatrix can key caches directly.
    """

    __slots__ = ("rows", "cols", "_hash")

    def __init__(self, rows: Iterable[int], cols: int):
        rows = tuple(int(r) for r in rows)
        if cols < 1:
            raise ValueError("BitMatrix needs cols >= 1")
        if not rows:
            raise ValueError("BitMatrix needs at least one row")
        mask = (1 << cols) - 1
        if any(r < 0 or r & ~mask for r in rows):
            raise ValueError("row has bits outside column range")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_hash", hash((rows, cols)))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("BitMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        """Build from strings like "1101"; leftmost character is column 0."""
        cols = len(lines[0])
        rows = []
        for line in lines:
            if len(line) != cols or set(line) - {"0", "1"}:
                raise ValueError(f"bad matrix line: {line!r}")
            rows.append(sum(1 << i for i, ch in enumerate(line) if ch == "1"))
        return cls(rows, cols)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        cols = len(entries[0])
        return cls(
            (sum((int(v) & 1) << i for i, v in enumerate(row)) for row in entries),
            cols,
        )

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls((1 << i for i in range(n)), n)

    # -- basic views ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.cols)

    def row_support(self, i: int) -> tuple[int, ...]:
        r = self.rows[i]
        return tuple(j for j in range(self.cols) if (r >> j) & 1)

    def row_weight(self, i: int) -> int:
        return self.rows[i].bit_count()

    def column_mask(self, j: int) -> int:
        """Column j as a bitmask over row indices."""
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def col_weight(self, j: int) -> int:
        return sum((r >> j) & 1 for r in self.rows)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(
            (self.column_mask(j) for j in range(self.cols)), len(self.rows)
        )

    def to_strings(self) -> list[str]:
        return [
            "".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.rows
        ]

    def to_array(self) -> np.ndarray:
        return np.array(
            [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows],
            dtype=np.int64,
        )

    def mul_vector(self, bits: int) -> int:
        """H * x^T over F2 for a column vector packed into `bits`."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & bits).bit_count() & 1) << i
        return out

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.cols == other.cols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BitMatrix({len(self.rows)}x{self.cols})"

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


# ---------------------------------------------------------------------------
# F2 elimination
# ---------------------------------------------------------------------------


def _rref_rows(rows: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of bitmask rows; returns (rows, pivot cols)."""
    work = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        sel = -1
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                sel = i
                break
        if sel < 0:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
    return work, pivots


def rref(M: BitMatrix) -> tuple[BitMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form over F2: (matrix, rank, pivot columns)."""
    work, pivots = _rref_rows(M.rows, M.cols)
    return BitMatrix(work, M.cols), len(pivots), tuple(pivots)


def rank_of_rows(rows: Sequence[int]) -> int:
    """GF(2) rank of a collection of bitmask rows (no matrix object needed)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {c in F2^n : M c^T = 0}; size = cols - rank(M)."""
    work, pivots = _rref_rows(M.rows, M.cols)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = 1 << f
        for i, p in enumerate(pivots):
            if (work[i] >> f) & 1:
                vec |= 1 << p
        basis.append(BitVector(vec, M.cols))
    return basis


def integer_gram(M: BitMatrix) -> np.ndarray:
    """L = M^T M computed over the integers (not F2).

    L is symmetric; L[i, i] is the weight of column i and L[i, j] counts the
    rows where both columns are 1.
    """
    A = M.to_array()
    return A.T @ A


# ---------------------------------------------------------------------------
# Polynomials over F2
# ---------------------------------------------------------------------------


class Poly2:
    """Polynomial over F2, stored as an int (bit i = coefficient of x^i)."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        if value < 0:
            raise ValueError("negative polynomial encoding")
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly2 is immutable")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "Poly2":
        """Coefficients low degree first."""
        return cls(sum((c & 1) << i for i, c in enumerate(coeffs)))

    @classmethod
    def x_power(cls, k: int) -> "Poly2":
        return cls(1 << k)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return self.value.bit_length() - 1

    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.value.bit_length()) if (self.value >> i) & 1)

    def is_zero(self) -> bool:
        return self.value == 0

    def coeffs(self) -> tuple[int, ...]:
        """Coefficient sequence, low degree first (empty for zero)."""
        return tuple((self.value >> i) & 1 for i in range(self.value.bit_length()))

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        a, b, acc = self.value, other.value, 0
        while b:
            low = b & -b
            acc ^= a << (low.bit_length() - 1)
            b ^= low
        return Poly2(acc)

    def divmod(self, other: "Poly2") -> tuple["Poly2", "Poly2"]:
        if other.value == 0:
            raise ZeroDivisionError("polynomial division by zero")
        num, den = self.value, other.value
        dden = den.bit_length() - 1
        quo = 0
        while num.bit_length() - 1 >= dden and num:
            shift = (num.bit_length() - 1) - dden
            quo |= 1 << shift
            num ^= den << shift
        return Poly2(quo), Poly2(num)

    def __mod__(self, other: "Poly2") -> "Poly2":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly2") -> "Poly2":
        return self.divmod(other)[0]

    def divides(self, other: "Poly2") -> bool:
        return (other % self).value == 0

    def gcd(self, other: "Poly2") -> "Poly2":
        a, b = self, other
        while b.value:
            a, b = b, a % b
        return a

    def pow_mod(self, exp: int, mod: "Poly2") -> "Poly2":
        result = Poly2(1) % mod
        base = self % mod
        while exp:
            if exp & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            exp >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.value == other.value

    def __lt__(self, other: "Poly2") -> bool:
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(("Poly2", self.value))

    def __repr__(self) -> str:
        return f"Poly2({self.value:#x})"

    def __str__(self) -> str:
        if self.value == 0:
            return "0"
        terms = []
        for i in reversed(self.support()):
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return " + ".join(terms)


def _is_irreducible(f: Poly2) -> bool:
    """Rabin test over F2."""
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    x = Poly2(2)
    # x^(2^d) == x mod f, and x^(2^(d/q)) - x coprime to f for prime q | d
    t = x
    for _ in range(d):
        t = (t * t) % f
    if t != x % f:
        return False
    for q in sorted({p for p in _prime_factors(d)}):
        t = x
        for _ in range(d // q):
            t = (t * t) % f
        if (t + x).gcd(f).degree != 0:
            return False
    return True


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


def _distinct_degree_split(f: Poly2) -> list[tuple[Poly2, int]]:
    """Split a square-free f into products of irreducibles of equal degree."""
    out = []
    x = Poly2(2)
    h = x % f
    i = 0
    rest = f
    while rest.degree > 0:
        i += 1
        if 2 * i > rest.degree:
            out.append((rest, rest.degree))
            break
        h = (h * h) % f  # h = x^(2^i) mod f
        g = (h + x).gcd(rest)
        if g.degree > 0:
            out.append((g, i))
            rest = rest // g
    return out


def _equal_degree_split(f: Poly2, d: int, rng: random.Random) -> list[Poly2]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    while True:
        a = Poly2(rng.randrange(1, 1 << f.degree))
        # trace map of a over the degree-d subfield
        c = a % f
        t = a % f
        for _ in range(d - 1):
            t = (t * t) % f
            c = c + t
        g = c.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


def factor_xn_minus_1(n: int) -> list[Poly2]:
    """Irreducible factorization of x^n - 1 over F2, with multiplicity.

    Writes n = odd * 2^v; over F2, x^n - 1 = (x^odd - 1)^(2^v), and the odd
    part is square-free, so only the odd part needs distinct-degree plus
    equal-degree splitting.  Factors are returned sorted, each repeated 2^v
    times; their product is exactly x^n - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    v = 0
    odd = n
    while odd % 2 == 0:
        odd //= 2
        v += 1
    f = Poly2((1 << odd) | 1)  # x^odd + 1
    rng = random.Random(0x5EED ^ n)
    irreducibles: list[Poly2] = []
    for g, d in _distinct_degree_split(f):
        if g.degree == d:
            irreducibles.append(g)
        else:
            irreducibles.extend(_equal_degree_split(g, d, rng))
    for p in irreducibles:
        assert _is_irreducible(p)
    return sorted(irreducibles * (1 << v))


def divisors(factors: Sequence[Poly2]) -> list[Poly2]:
    """All distinct monic divisors formed as subproducts of a factorization."""
    counted: dict[Poly2, int] = {}
    for p in factors:
        counted[p] = counted.get(p, 0) + 1
    divs = [Poly2(1)]
    for p, e in counted.items():
        powers = [Poly2(1)]
        for _ in range(e):
            powers.append(powers[-1] * p)
        divs = [d * q for d in divs for q in powers]
    return sorted(set(divs))
