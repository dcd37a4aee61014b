"""Exact linear algebra over the two-element field.

Vectors are Python ints used as bitsets: bit ``j`` is coordinate ``j``.
A matrix is stored row-major, one int per row, so ``m @ v`` is a parity
of ``row & v`` per row. All elimination pivots on the lowest set bit
(first nonzero column), which makes every basis produced here canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def bits_of(x: int):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class GF2Vector:
    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> GF2Vector:
        return cls(sum(1 << j for j, e in enumerate(entries) if e & 1), len(entries))

    @classmethod
    def zero(cls, length: int) -> GF2Vector:
        return cls(0, length)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __add__(self, other: GF2Vector) -> GF2Vector:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return GF2Vector(self.bits ^ other.bits, self.length)

    __sub__ = __add__

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0


class GF2Matrix:
    """Dense bit-packed matrix. Immutable by convention; operations never mutate."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(rows) if rows is not None else (0,) * nrows
        if len(self.rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(self.rows)}")
        mask = (1 << ncols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits beyond ncols")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> GF2Matrix:
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> GF2Matrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = [sum(1 << j for j, e in enumerate(row) if e & 1) for row in entries]
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> GF2Matrix:
        """Build a matrix whose ``j``-th column is the bitset ``columns[j]``."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            bit = 1 << j
            for r in bits_of(col):
                rows[r] |= bit
        return cls(nrows, len(columns), rows)

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            bit = 1 << i
            for j in bits_of(row):
                cols[j] |= bit
        return cols

    def transpose(self) -> GF2Matrix:
        return GF2Matrix(self.ncols, self.nrows, self.columns())

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.ncols)] for row in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def with_flipped(self, i: int, j: int) -> GF2Matrix:
        rows = list(self.rows)
        rows[i] ^= 1 << j
        return GF2Matrix(self.nrows, self.ncols, rows)

    def apply(self, x: int) -> int:
        """Matrix-vector product on a raw bitset."""
        out = 0
        for i, row in enumerate(self.rows):
            if parity(row & x):
                out |= 1 << i
        return out

    def __matmul__(self, other):
        if isinstance(other, GF2Vector):
            if other.length != self.ncols:
                raise ValueError("dimension mismatch")
            return GF2Vector(self.apply(other.bits), self.nrows)
        if isinstance(other, GF2Matrix):
            if other.nrows != self.ncols:
                raise ValueError("dimension mismatch")
            # row i of the product is the XOR of rows of `other` selected by row i of self
            rows = []
            for row in self.rows:
                acc = 0
                for j in bits_of(row):
                    acc ^= other.rows[j]
                rows.append(acc)
            return GF2Matrix(self.nrows, other.ncols, rows)
        return NotImplemented

    def __add__(self, other: GF2Matrix) -> GF2Matrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return GF2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols})"


# --- elimination ----------------------------------------------------------


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Semi-echelon form: maps pivot (lowest bit) to a row with that lowest bit."""
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            p = low_bit(r)
            q = piv.get(p)
            if q is None:
                piv[p] = r
                break
            r ^= q
    return piv


def _reduce(piv: dict[int, int]) -> list[int]:
    """Back-substitute a semi-echelon form into reduced row echelon form, sorted by pivot."""
    done: dict[int, int] = {}
    for p in sorted(piv, reverse=True):
        r = piv[p]
        x = r & ~(1 << p)
        while x:
            q = low_bit(x)
            x ^= 1 << q
            if q in done:
                r ^= done[q]
        done[p] = r
    return [done[p] for p in sorted(done)]


def rref_rows(rows: Iterable[int]) -> tuple[int, ...]:
    return tuple(_reduce(_echelon(rows)))


def rank(m: GF2Matrix) -> int:
    return len(_echelon(m.rows))


def kernel_basis(m: GF2Matrix) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``."""
    red = _reduce(_echelon(m.rows))
    pivots = [low_bit(r) for r in red]
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivots, red):
            if (r >> f) & 1:
                v |= 1 << p
        vectors.append(v)
    return Subspace.span(m.ncols, vectors)


def image_basis(m: GF2Matrix) -> Subspace:
    """Canonical basis of the column span of ``m``."""
    return Subspace.span(m.nrows, m.columns())


def solve(m: GF2Matrix, target):
    """Return some ``x`` with ``m x = target``, or ``None`` if the system is inconsistent.

    Accepts and returns either raw bitsets or :class:`GF2Vector`. Free variables are set
    to zero, so the solution is deterministic.
    """
    as_vector = isinstance(target, GF2Vector)
    t = target.bits if as_vector else target
    if as_vector and target.length != m.nrows:
        raise ValueError("target length must equal row count")
    n = m.ncols
    aug = 1 << n
    # column n of the augmented row carries the target bit
    rows = [row | (aug if (t >> i) & 1 else 0) for i, row in enumerate(m.rows)]
    piv = _echelon(rows)
    if n in piv:
        return None
    red = _reduce(piv)
    x = 0
    for r in red:
        if r & aug:
            x |= 1 << low_bit(r)
    return GF2Vector(x, n) if as_vector else x


def nullity(m: GF2Matrix) -> int:
    return m.ncols - rank(m)


# --- subspaces ------------------------------------------------------------


class Subspace:
    """A subspace of ``F_2^ambient_dim`` held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, rref_basis: Sequence[int]):
        self.ambient_dim = ambient_dim
        self.basis = tuple(rref_basis)
        self._pivots = tuple(low_bit(r) for r in self.basis)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> Subspace:
        vectors = [v.bits if isinstance(v, GF2Vector) else v for v in vectors]
        for v in vectors:
            if v >> ambient_dim:
                raise ValueError("vector exceeds ambient dimension")
        return cls(ambient_dim, rref_rows(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, [1 << i for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, v: int) -> int:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        for p, r in zip(self._pivots, self.basis):
            if (v >> p) & 1:
                v ^= r
        return v

    def __contains__(self, v) -> bool:
        if isinstance(v, GF2Vector):
            v = v.bits
        return self.reduce(v) == 0

    def coordinates(self, v: int) -> int:
        """Coefficients of ``v`` in the canonical basis, as a bitset over basis rows."""
        out = 0
        w = v
        for k, (p, r) in enumerate(zip(self._pivots, self.basis)):
            if (w >> p) & 1:
                w ^= r
                out |= 1 << k
        if w:
            raise ValueError("vector is not in the subspace")
        return out

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.reduce(v) == 0 for v in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def quotient_dim(self, sub: Subspace) -> int:
        """``dim(self / sub)``; ``sub`` must be contained in ``self``."""
        if not self.contains_subspace(sub):
            raise ValueError("not a subspace")
        return self.dim - sub.dim

    def elements(self):
        """Iterate all ``2**dim`` vectors of the subspace (small spaces only)."""
        for mask in range(1 << self.dim):
            v = 0
            for k in bits_of(mask):
                v ^= self.basis[k]
            yield v

    def _check(self, other: Subspace):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """``s1 ∩ s2`` via the kernel of the stacked basis matrix ``[U | W]``."""
    s1._check(s2)
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(s1.ambient_dim)
    cols = list(s1.basis) + list(s2.basis)
    ker = kernel_basis(GF2Matrix.from_columns(s1.ambient_dim, cols))
    k1 = s1.dim
    mask = (1 << k1) - 1
    vectors = []
    for z in ker.basis:
        v = 0
        for i in bits_of(z & mask):
            v ^= s1.basis[i]
        vectors.append(v)
    return Subspace.span(s1.ambient_dim, vectors)


class Coordinates:
    """Coordinates with respect to an arbitrary (independent) list of vectors.

    Used where a labeled basis that is not in echelon form must be read off,
    e.g. the alternating string basis of the Koszul spaces.
    """

    def __init__(self, vectors: Sequence[int]):
        self.vectors = tuple(vectors)
        piv: dict[int, tuple[int, int]] = {}
        for k, v in enumerate(self.vectors):
            combo = 1 << k
            while v:
                p = low_bit(v)
                if p not in piv:
                    piv[p] = (v, combo)
                    break
                pv, pc = piv[p]
                v ^= pv
                combo ^= pc
            else:
                raise ValueError(f"vector {k} is linearly dependent on earlier ones")
        self._piv = piv

    def __len__(self) -> int:
        return len(self.vectors)

    def __call__(self, v: int) -> int:
        combo = 0
        while v:
            p = low_bit(v)
            hit = self._piv.get(p)
            if hit is None:
                raise ValueError("vector is not in the span")
            v ^= hit[0]
            combo ^= hit[1]
        return combo

    def try_coords(self, v: int):
        try:
            return self(v)
        except ValueError:
            return None
