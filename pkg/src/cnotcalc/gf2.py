"""Dense linear algebra over GF(2).

Vectors and matrices are bit-packed: a row is a Python int whose bit ``j``
holds the coefficient of column ``j``.  Row operations are single XORs, and
arbitrary-precision ints make the width unbounded.  All public values are
immutable; every operation returns fresh objects.
"""

from __future__ import annotations

from typing import Iterable, Optional


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


class BitVec:
    """An immutable vector over GF(2), indexed 0..len-1."""

    __slots__ = ("_n", "_mask")

    def __init__(self, bits: Iterable[int]):
        bits = tuple(bits)
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
            mask |= b << i
        self._n = len(bits)
        self._mask = mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "BitVec":
        v = object.__new__(cls)
        v._n = n
        v._mask = mask & ((1 << n) - 1)
        return v

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls.from_mask(n, 0)

    @property
    def mask(self) -> int:
        return self._mask

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise IndexError(i)
        return (self._mask >> i) & 1

    def __iter__(self):
        return ((self._mask >> i) & 1 for i in range(self._n))

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self._n != other._n:
            raise ValueError(f"length mismatch: {self._n} vs {other._n}")
        return BitVec.from_mask(self._n, self._mask ^ other._mask)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVec)
            and self._n == other._n
            and self._mask == other._mask
        )

    def __hash__(self) -> int:
        return hash((self._n, self._mask))

    def __repr__(self) -> str:
        return f"BitVec([{', '.join(str(b) for b in self)}])"

    def to_tuple(self) -> tuple:
        return tuple(self)


class GF2Matrix:
    """An immutable dense bit matrix; rows are int bitmasks (bit j = column j)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows_of_bits: Iterable[Iterable[int]], cols: Optional[int] = None):
        data = []
        width = 0
        for row in rows_of_bits:
            row = tuple(row)
            mask = 0
            for j, b in enumerate(row):
                if b not in (0, 1):
                    raise ValueError(f"entry {b!r} is not a bit")
                mask |= b << j
            width = max(width, len(row))
            data.append(mask)
        if cols is None:
            cols = width
        elif cols < width:
            raise ValueError(f"cols={cols} smaller than widest row ({width})")
        self.rows = len(data)
        self.cols = cols
        self._data = tuple(data)

    @classmethod
    def from_masks(cls, masks: Iterable[int], cols: int) -> "GF2Matrix":
        m = object.__new__(cls)
        m._data = tuple(masks)
        m.rows = len(m._data)
        m.cols = cols
        full = (1 << cols) - 1
        if any(mask & ~full for mask in m._data):
            raise ValueError("row mask wider than declared column count")
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls.from_masks([0] * rows, cols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls.from_masks([1 << i for i in range(n)], n)

    @property
    def row_masks(self) -> tuple:
        return self._data

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return (self._data[i] >> j) & 1

    def row(self, i: int) -> BitVec:
        return BitVec.from_mask(self.cols, self._data[i])

    def to_lists(self) -> list:
        return [[(m >> j) & 1 for j in range(self.cols)] for m in self._data]

    def mul_vec(self, v: BitVec) -> BitVec:
        if len(v) != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} cols vs vector of {len(v)}")
        out = 0
        for i, m in enumerate(self._data):
            out |= _parity(m & v.mask) << i
        return BitVec.from_mask(self.rows, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(b) for b in row) for row in self.to_lists())
        return f"GF2Matrix({self.rows}x{self.cols}: {body})"


def rref_masks(masks: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form on raw row bitmasks.

    Returns (rows, pivot_columns) with zero rows dropped.  Pivot selection
    always takes the lowest available column, so the result is the unique
    RREF of the row space.
    """
    work = list(masks)
    pivots: list[int] = []
    out: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        src = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if src is None:
            continue
        work[r], work[src] = work[src], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
    out = work[:r]
    return out, pivots


def rref(m: GF2Matrix) -> tuple[GF2Matrix, list[int], int]:
    """Unique reduced row echelon form of ``m``; zero rows are kept, last.

    Returns (reduced matrix, pivot columns in increasing order, rank).
    """
    reduced, pivots = rref_masks(m.row_masks, m.cols)
    rank = len(reduced)
    padded = reduced + [0] * (m.rows - rank)
    return GF2Matrix.from_masks(padded, m.cols), pivots, rank


def solve_affine(a: GF2Matrix, b: BitVec) -> Optional[tuple[BitVec, list[BitVec]]]:
    """Solve a*x = b over GF(2).

    Returns (particular solution, nullspace basis) so that the full solution
    set is particular + span(basis); returns None when inconsistent.
    """
    if a.rows != len(b):
        raise ValueError(f"{a.rows} equations but rhs of length {len(b)}")
    n = a.cols
    aug = [mask | (((b.mask >> i) & 1) << n) for i, mask in enumerate(a.row_masks)]
    reduced, pivots = rref_masks(aug, n + 1)
    if n in pivots:
        return None
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    # Particular solution: free variables zero, pivot variables from the rhs.
    x = 0
    for mask, col in zip(reduced, pivots):
        x |= ((mask >> n) & 1) << col
    basis = []
    for f in free:
        v = 1 << f
        for mask, col in zip(reduced, pivots):
            if (mask >> f) & 1:
                v |= 1 << col
        basis.append(BitVec.from_mask(n, v))
    return BitVec.from_mask(n, x), basis


def project_masks(masks: Iterable[int], nvars: int, cols: Iterable[int]) -> list[int]:
    """Existentially eliminate the given variable columns from an augmented
    system (bit ``nvars`` is the right-hand side).  Returned rows still use
    the original column numbering; eliminated columns are guaranteed clear.
    """
    work = list(masks)
    for col in sorted(set(cols)):
        bit = 1 << col
        src = next((i for i in range(len(work)) if work[i] & bit), None)
        if src is None:
            continue
        pivot = work[src]
        work = [row ^ pivot if row & bit else row for i, row in enumerate(work) if i != src]
    return work


def project_out(m: GF2Matrix, cols: Iterable[int]) -> GF2Matrix:
    """Project variables out of an augmented constraint system.

    ``m`` is [A | b] with the rhs in the last column; ``cols`` are coefficient
    column indices.  The result is the constraint system on the remaining
    variables whose solution set is the image of the original one under
    deletion of the projected coordinates.
    """
    nvars = m.cols - 1
    cols = sorted(set(cols))
    if any(not 0 <= c < nvars for c in cols):
        raise ValueError(f"columns {cols} out of range for {nvars} variables")
    rows = project_masks(m.row_masks, nvars, cols)
    keep = [j for j in range(nvars) if j not in set(cols)]
    remapped = []
    for row in rows:
        new = 0
        for newj, oldj in enumerate(keep):
            new |= ((row >> oldj) & 1) << newj
        new |= ((row >> nvars) & 1) << len(keep)
        remapped.append(new)
    remapped = [r for r in remapped if r]
    return GF2Matrix.from_masks(remapped, len(keep) + 1)
