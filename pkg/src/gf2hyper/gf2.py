"""Bit-packed exact linear algebra over GF(2).

Vectors and matrix rows are Python ints used as bitsets: bit j holds
coordinate j, so a row operation is a single XOR no matter how wide the
row is.  Subspaces are stored in reduced row echelon form with strictly
increasing pivots, which makes equality of spans plain value equality.
"""

from __future__ import annotations

import itertools
from bisect import bisect
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    CapExceeded,
    DimensionMismatch,
    ParseError,
    SingularMatrix,
)

VECTOR_ENUM_CAP = 24            # enumerate_vectors refuses above 2**24 members
SUBSPACE_ENUM_CAP = 1 << 24     # enumerate_subspaces refuses longer streams


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _echelonize(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduce int-packed rows to RREF.

    Returns (basis, pivots), both sorted by pivot column; zero rows are
    dropped and every pivot column is cleared in all other rows.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for row in rows:
        for p, b in zip(pivots, basis):
            if (row >> p) & 1:
                row ^= b
        if row == 0:
            continue
        p = _lowest_bit(row)
        at = bisect(pivots, p)
        pivots.insert(at, p)
        basis.insert(at, row)
        for i, other in enumerate(basis):
            if i != at and (other >> p) & 1:
                basis[i] = other ^ row
    return basis, pivots


def _reduce_against(bits: int, basis: tuple[int, ...], pivots: tuple[int, ...]) -> int:
    for p, b in zip(pivots, basis):
        if (bits >> p) & 1:
            bits ^= b
    return bits


@dataclass(frozen=True)
class Gf2Vector:
    """A packed vector in GF(2)^dim; bit j is coordinate j."""

    bits: int
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("vector dimension must be positive")
        if not 0 <= self.bits < (1 << self.dim):
            raise ValueError("bits set beyond the declared dimension")

    @classmethod
    def zero(cls, dim: int) -> Gf2Vector:
        return cls(0, dim)

    @classmethod
    def unit(cls, j: int, dim: int) -> Gf2Vector:
        return cls(1 << j, dim)

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> Gf2Vector:
        coords = list(coords)
        bits = 0
        for j, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            bits |= c << j
        return cls(bits, len(coords))

    def is_zero(self) -> bool:
        return self.bits == 0

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> j) & 1 for j in range(self.dim))

    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        if self.dim != other.dim:
            raise DimensionMismatch("vector dimensions differ")
        return Gf2Vector(self.bits ^ other.bits, self.dim)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.dim:
            raise IndexError("coordinate out of range")
        return (self.bits >> j) & 1

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coords())

    def __repr__(self) -> str:
        return f"Gf2Vector({self.to_text()!r})"


@dataclass(frozen=True)
class Gf2Matrix:
    """A dense matrix over GF(2) acting on column vectors, v -> Mv.

    Rows are packed ints over n_cols bits; n_rows may be zero (the empty
    basis of the zero subspace in file form).
    """

    rows: tuple[int, ...]
    n_cols: int

    def __post_init__(self):
        if self.n_cols < 1:
            raise ValueError("matrix width must be positive")
        for r in self.rows:
            if not 0 <= r < (1 << self.n_cols):
                raise ValueError("row bits set beyond the declared width")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> Gf2Matrix:
        return cls((0,) * n_rows, n_cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> Gf2Matrix:
        vecs = [Gf2Vector.from_coords(r) for r in rows]
        if not vecs:
            raise ValueError("from_rows needs at least one row")
        width = vecs[0].dim
        if any(v.dim != width for v in vecs):
            raise DimensionMismatch("rows have unequal length")
        return cls(tuple(v.bits for v in vecs), width)

    @classmethod
    def from_row_vectors(cls, vectors: Iterable[Gf2Vector], n_cols: int) -> Gf2Matrix:
        bits = []
        for v in vectors:
            if v.dim != n_cols:
                raise DimensionMismatch("row vector has wrong dimension")
            bits.append(v.bits)
        return cls(tuple(bits), n_cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Gf2Vector]) -> Gf2Matrix:
        cols = list(columns)
        if not cols:
            raise ValueError("from_columns needs at least one column")
        height = cols[0].dim
        if any(c.dim != height for c in cols):
            raise DimensionMismatch("columns have unequal height")
        rows = []
        for i in range(height):
            bits = 0
            for j, c in enumerate(cols):
                bits |= ((c.bits >> i) & 1) << j
            rows.append(bits)
        return cls(tuple(rows), len(cols))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.rows[i], self.n_cols)

    def column(self, j: int) -> Gf2Vector:
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r >> j) & 1) << i
        return Gf2Vector(bits, self.n_rows)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def apply_bits(self, bits: int) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & bits).bit_count() & 1) << i
        return out

    def apply(self, v: Gf2Vector) -> Gf2Vector:
        if v.dim != self.n_cols:
            raise DimensionMismatch("vector dimension does not match matrix width")
        return Gf2Vector(self.apply_bits(v.bits), self.n_rows)

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.n_cols != other.n_rows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for a in self.rows:
            acc = 0
            bits = a
            while bits:
                j = _lowest_bit(bits)
                bits &= bits - 1
                acc ^= other.rows[j]
            out.append(acc)
        return Gf2Matrix(tuple(out), other.n_cols)

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise DimensionMismatch("matrix shapes differ")
        return Gf2Matrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.n_cols)

    def __pow__(self, k: int) -> Gf2Matrix:
        if not self.is_square():
            raise DimensionMismatch("powers need a square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        acc = Gf2Matrix.identity(self.n_cols)
        for _ in range(k):
            acc = acc @ self
        return acc

    def transpose(self) -> Gf2Matrix:
        if self.n_rows == 0:
            raise DimensionMismatch("cannot transpose a matrix with no rows")
        rows = []
        for j in range(self.n_cols):
            bits = 0
            for i, r in enumerate(self.rows):
                bits |= ((r >> j) & 1) << i
            rows.append(bits)
        return Gf2Matrix(tuple(rows), self.n_rows)

    def rref(self) -> Gf2Matrix:
        """Reduced row echelon form, padded with zero rows to keep the shape."""
        basis, _ = _echelonize(self.rows)
        basis += [0] * (self.n_rows - len(basis))
        return Gf2Matrix(tuple(basis), self.n_cols)

    def rank(self) -> int:
        basis, _ = _echelonize(self.rows)
        return len(basis)

    def kernel(self) -> Subspace:
        """The solution space {v : Mv = 0}, canonicalized."""
        basis, pivots = _echelonize(self.rows)
        pivot_set = set(pivots)
        out = []
        for c in range(self.n_cols):
            if c in pivot_set:
                continue
            v = 1 << c
            for i, row in enumerate(basis):
                if (row >> c) & 1:
                    v |= 1 << pivots[i]
            out.append(v)
        return Subspace.span_bits(out, self.n_cols)

    def image(self) -> Subspace:
        """The column space {Mv}, canonicalized."""
        if self.n_rows == 0:
            raise DimensionMismatch("image of an empty matrix is undefined")
        cols = (self.column(j).bits for j in range(self.n_cols))
        return Subspace.span_bits(cols, self.n_rows)

    def map_subspace(self, s: Subspace) -> Subspace:
        """The image {Mv : v in s}, canonicalized."""
        if s.ambient_dim != self.n_cols:
            raise DimensionMismatch("subspace ambient dimension does not match")
        return Subspace.span_bits((self.apply_bits(r) for r in s.rows), self.n_rows)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.n_cols

    def inverse(self) -> Gf2Matrix:
        if not self.is_square():
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.n_cols
        aug = [row | (1 << (n + i)) for i, row in enumerate(self.rows)]
        basis, pivots = _echelonize(aug)
        if pivots != list(range(n)):
            raise SingularMatrix("matrix has no inverse over GF(2)")
        return Gf2Matrix(tuple(r >> n for r in basis), n)

    def to_text(self) -> str:
        return "\n".join(self.row(i).to_text() for i in range(self.n_rows))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^ambient_dim as a canonical RREF basis.

    Canonicity is the equality witness: two Subspace values are equal as
    sets exactly when their fields are equal.
    """

    rows: tuple[int, ...]
    ambient_dim: int
    pivots: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        pivots = []
        for r in self.rows:
            if r == 0 or r >= (1 << self.ambient_dim):
                raise ValueError("basis rows must be nonzero and within the ambient space")
            pivots.append(_lowest_bit(r))
        if any(a >= b for a, b in zip(pivots, pivots[1:])):
            raise ValueError("basis pivots must strictly increase")
        for i, p in enumerate(pivots):
            for k, r in enumerate(self.rows):
                if k != i and (r >> p) & 1:
                    raise ValueError("pivot columns must be cleared in other rows")
        object.__setattr__(self, "pivots", tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls((), ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(tuple(1 << i for i in range(ambient_dim)), ambient_dim)

    @classmethod
    def span_bits(cls, bits: Iterable[int], ambient_dim: int) -> Subspace:
        basis, _ = _echelonize(bits)
        return cls(tuple(basis), ambient_dim)

    @classmethod
    def span(cls, vectors: Iterable[Gf2Vector], ambient_dim: int) -> Subspace:
        collected = []
        for v in vectors:
            if v.dim != ambient_dim:
                raise DimensionMismatch("spanning vector has wrong dimension")
            collected.append(v.bits)
        return cls.span_bits(collected, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[Gf2Vector, ...]:
        return tuple(Gf2Vector(r, self.ambient_dim) for r in self.rows)

    def contains_bits(self, bits: int) -> bool:
        return _reduce_against(bits, self.rows, self.pivots) == 0

    def contains(self, v: Gf2Vector) -> bool:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch("vector dimension does not match ambient space")
        return self.contains_bits(v.bits)

    def contains_subspace(self, other: Subspace) -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return all(self.contains_bits(r) for r in other.rows)

    def sum(self, other: Subspace) -> Subspace:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return Subspace.span_bits(self.rows + other.rows, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        """Zassenhaus on packed rows: eliminate [A|A] and [B|0] blocks."""
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        n = self.ambient_dim
        mask = (1 << n) - 1
        stacked = [r | (r << n) for r in self.rows] + list(other.rows)
        basis, _ = _echelonize(stacked)
        return Subspace.span_bits((r >> n for r in basis if (r & mask) == 0), n)

    def enumerate_vectors(self, cap: int = VECTOR_ENUM_CAP) -> list[Gf2Vector]:
        """All 2**dim members, in subset order of the canonical basis."""
        if self.dim > cap:
            raise CapExceeded(
                f"enumerating 2**{self.dim} vectors exceeds the cap of 2**{cap}",
                required=1 << self.dim,
            )
        out = []
        for mask in range(1 << self.dim):
            bits = 0
            m = mask
            while m:
                i = _lowest_bit(m)
                m &= m - 1
                bits ^= self.rows[i]
            out.append(Gf2Vector(bits, self.ambient_dim))
        return out

    def to_text(self) -> str:
        return "\n".join(Gf2Vector(r, self.ambient_dim).to_text() for r in self.rows)

    def __str__(self) -> str:
        return self.to_text() if self.rows else "(zero subspace)"


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of GF(2)^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << n) - (1 << i)
        den *= (1 << k) - (1 << i)
    return num // den


def subspace_count(n: int) -> int:
    return sum(gaussian_binomial(n, k) for k in range(n + 1))


def enumerate_subspaces(n: int, cap: int = SUBSPACE_ENUM_CAP) -> Iterator[Subspace]:
    """Every subspace of GF(2)^n exactly once, by RREF shape.

    Iterates pivot-column subsets and then the free entries, so each
    canonical basis is produced directly and no deduplication pass is
    needed.
    """
    total = subspace_count(n)
    if total > cap:
        raise CapExceeded(
            f"GF(2)^{n} has {total} subspaces, above the cap of {cap}", required=total
        )
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            free = [
                [c for c in range(n) if c > p and c not in pivot_set] for p in pivots
            ]
            for masks in itertools.product(*(range(1 << len(fc)) for fc in free)):
                rows = []
                for i, p in enumerate(pivots):
                    bits = 1 << p
                    for t, c in enumerate(free[i]):
                        bits |= ((masks[i] >> t) & 1) << c
                    rows.append(bits)
                yield Subspace(tuple(rows), n)


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


def parse_matrix(text: str) -> Gf2Matrix:
    """Parse the normative text format: 'n_rows n_cols' then 0/1 rows."""
    lines = _data_lines(text)
    if not lines:
        raise ParseError("empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("header must be 'n_rows n_cols'")
    try:
        n_rows, n_cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError("header must contain two integers") from exc
    if n_rows < 0 or n_cols < 1:
        raise ParseError("header dimensions out of range")
    if len(lines) - 1 != n_rows:
        raise ParseError(f"expected {n_rows} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != n_cols:
            raise ParseError(f"expected {n_cols} entries per row")
        bits = 0
        for j, tok in enumerate(tokens):
            if tok not in ("0", "1"):
                raise ParseError("entries must be 0 or 1")
            bits |= (tok == "1") << j
        rows.append(bits)
    return Gf2Matrix(tuple(rows), n_cols)


def format_matrix(m: Gf2Matrix) -> str:
    body = m.to_text()
    header = f"{m.n_rows} {m.n_cols}"
    return header + ("\n" + body if body else "")


def parse_subspace(text: str) -> Subspace:
    """Parse basis rows in matrix format and canonicalize the span."""
    m = parse_matrix(text)
    return Subspace.span_bits(m.rows, m.n_cols)


def format_subspace(s: Subspace) -> str:
    header = f"{s.dim} {s.ambient_dim}"
    body = s.to_text()
    return header + ("\n" + body if body else "")
