"""Affine partial isomorphisms between GF(2) vector spaces.

An :class:`AffineRelation` is the graph of a partial map ``n -> m`` that is an
affine bijection between affine subspaces, stored as a canonical constraint
system over the variables ``(x_0 .. x_{n-1}, y_0 .. y_{m-1})``.  Rows are int
bitmasks: bit ``j < n`` is an input coefficient, bit ``n + i`` an output
coefficient, and bit ``n + m`` the right-hand side.

The system is kept in reduced row echelon form with the single row ``0 = 1``
standing for the empty (nowhere-defined) relation, so structural equality of
two relations decides equality of their graphs.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .gf2 import BitVec, GF2Matrix, rref_masks, project_masks

ENUMERATION_LIMIT = 20


class ArityError(ValueError):
    pass


def _canonical(masks: Iterable[int], nvars: int) -> tuple[int, ...]:
    rows, pivots = rref_masks(masks, nvars + 1)
    if nvars in pivots:
        return (1 << nvars,)
    return tuple(rows)


def _remap(mask: int, nvars: int, where: list[int], rhs_to: int) -> int:
    out = 0
    for j in range(nvars):
        if (mask >> j) & 1:
            out |= 1 << where[j]
    if (mask >> nvars) & 1:
        out |= 1 << rhs_to
    return out


class AffineRelation:
    """Canonical affine partial isomorphism from GF(2)^n_in to GF(2)^n_out."""

    __slots__ = ("n_in", "n_out", "_rows")

    def __init__(self, n_in: int, n_out: int, constraint_masks: Iterable[int]):
        if n_in < 0 or n_out < 0:
            raise ArityError("arities must be nonnegative")
        self.n_in = n_in
        self.n_out = n_out
        self._rows = _canonical(constraint_masks, n_in + n_out)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "AffineRelation":
        return cls(n, n, [(1 << j) | (1 << (n + j)) for j in range(n)])

    @classmethod
    def empty(cls, n_in: int, n_out: int) -> "AffineRelation":
        return cls(n_in, n_out, [1 << (n_in + n_out)])

    @classmethod
    def total_affine(cls, linear: GF2Matrix, shift: BitVec) -> "AffineRelation":
        """Graph {(x, linear*x + shift)} of a total affine map."""
        m, n = linear.rows, linear.cols
        if len(shift) != m:
            raise ArityError(f"shift length {len(shift)} != {m} output rows")
        rows = []
        for i in range(m):
            rows.append(
                linear.row_masks[i] | (1 << (n + i)) | (shift[i] << (n + m))
            )
        return cls(n, m, rows)

    @classmethod
    def permutation(cls, perm: list[int]) -> "AffineRelation":
        """Graph {(x, x permuted)}: output i carries input perm[i]."""
        n = len(perm)
        return cls(n, n, [(1 << perm[i]) | (1 << (n + i)) for i in range(n)])

    @classmethod
    def from_graph_points(
        cls, n_in: int, n_out: int, points: Iterable[tuple[BitVec, BitVec]]
    ) -> "AffineRelation":
        """Least affine constraint system containing the given graph points.

        The points must form an affine subspace of GF(2)^(n_in+n_out) for the
        result's graph to equal them exactly; used as an independent
        construction path in oracles.
        """
        nv = n_in + n_out
        pts = []
        for x, y in points:
            if len(x) != n_in or len(y) != n_out:
                raise ArityError("point arity mismatch")
            pts.append(x.mask | (y.mask << n_in))
        if not pts:
            return cls.empty(n_in, n_out)
        # A row (c | r) is valid iff c.p = r for every point p: solve the
        # transposed system by row-reducing the point matrix augmented with 1.
        aug = [p | (1 << nv) for p in pts]
        reduced, pivots = rref_masks(aug, nv + 1)
        pivot_set = set(pivots)
        rows = []
        for f in range(nv + 1):
            if f in pivot_set:
                continue
            row = 1 << f
            for mask, col in zip(reduced, pivots):
                if (mask >> f) & 1:
                    row |= 1 << col
            rows.append(row)
        return cls(n_in, n_out, rows)

    # -- structure ---------------------------------------------------------

    @property
    def constraints(self) -> GF2Matrix:
        """The canonical augmented system, rhs in the last column."""
        return GF2Matrix.from_masks(self._rows, self.n_in + self.n_out + 1)

    @property
    def constraint_masks(self) -> tuple[int, ...]:
        return self._rows

    def is_empty(self) -> bool:
        return self._rows == (1 << (self.n_in + self.n_out),)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineRelation)
            and self.n_in == other.n_in
            and self.n_out == other.n_out
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.n_in, self.n_out, self._rows))

    def __repr__(self) -> str:
        return f"AffineRelation({self.n_in}->{self.n_out}, {len(self._rows)} constraints)"

    # -- category operations -----------------------------------------------

    def compose(self, other: "AffineRelation") -> "AffineRelation":
        """Relational composite: {(x,z) : exists y. (x,y) in self, (y,z) in other}."""
        if self.n_out != other.n_in:
            raise ArityError(
                f"cannot compose {self.n_in}->{self.n_out} with {other.n_in}->{other.n_out}"
            )
        n, m, p = self.n_in, self.n_out, other.n_out
        nv = n + m + p
        # Variable layout: x at 0.., y at n.., z at n+m..
        rows = [
            _remap(r, n + m, list(range(n + m)), nv) for r in self._rows
        ]
        rows += [
            _remap(r, m + p, list(range(n, n + m + p)), nv) for r in other._rows
        ]
        rows = project_masks(rows, nv, range(n, n + m))
        # Surviving variables are x and z; compact them.
        where = list(range(n)) + [0] * m + list(range(n, n + p))
        rows = [_remap(r, nv, where, n + p) for r in rows]
        return AffineRelation(n, p, rows)

    def tensor(self, other: "AffineRelation") -> "AffineRelation":
        """Parallel composite on the disjoint union of wires."""
        n1, m1, n2, m2 = self.n_in, self.n_out, other.n_in, other.n_out
        rhs = n1 + n2 + m1 + m2
        where1 = list(range(n1)) + list(range(n1 + n2, n1 + n2 + m1))
        where2 = list(range(n1, n1 + n2)) + list(range(n1 + n2 + m1, rhs))
        rows = [_remap(r, n1 + m1, where1, rhs) for r in self._rows]
        rows += [_remap(r, n2 + m2, where2, rhs) for r in other._rows]
        return AffineRelation(n1 + n2, m1 + m2, rows)

    def dagger(self) -> "AffineRelation":
        """Graph converse: swap input and output roles."""
        n, m = self.n_in, self.n_out
        where = list(range(m, m + n)) + list(range(m))
        rows = [_remap(r, n + m, where, n + m) for r in self._rows]
        return AffineRelation(m, n, rows)

    def domain_masks(self) -> tuple[int, ...]:
        """Constraint system of the domain, over the n_in input variables."""
        n, m = self.n_in, self.n_out
        rows = project_masks(self._rows, n + m, range(n, n + m))
        where = list(range(n)) + [0] * m
        return _canonical([_remap(r, n + m, where, n) for r in rows], n)

    def restriction(self) -> "AffineRelation":
        """The restriction idempotent: identity on the domain of definition."""
        n = self.n_in
        rows = [_remap(r, n, list(range(n)), 2 * n) for r in self.domain_masks()]
        rows += [(1 << j) | (1 << (n + j)) for j in range(n)]
        return AffineRelation(n, n, rows)

    def meet(self, other: "AffineRelation") -> "AffineRelation":
        """Intersection of graphs."""
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise ArityError("meet requires equal arities")
        return AffineRelation(self.n_in, self.n_out, self._rows + other._rows)

    def is_partial_iso(self) -> bool:
        """No homogeneous solution has zero x-part or zero y-part."""
        return self.partial_iso_violation() is None

    def partial_iso_violation(self) -> Optional[tuple[str, BitVec]]:
        """None for a partial isomorphism, else (side, direction) naming a
        nonzero homogeneous solution whose ``side`` part is zero."""
        if self.is_empty():
            return None
        n, m = self.n_in, self.n_out
        coef = [r & ((1 << (n + m)) - 1) for r in self._rows]
        x_cols = [r & ((1 << n) - 1) for r in coef]
        y_cols = [r >> n for r in coef]
        v = _nontrivial_kernel(y_cols, m)
        if v is not None:
            return ("x", BitVec.from_mask(m, v))
        v = _nontrivial_kernel(x_cols, n)
        if v is not None:
            return ("y", BitVec.from_mask(n, v))
        return None

    def apply(self, x: BitVec) -> Optional[BitVec]:
        """The unique image of x, or None when x is outside the domain."""
        n, m = self.n_in, self.n_out
        if len(x) != n:
            raise ArityError(f"input of length {len(x)} for arity {n}")
        xmask = x.mask
        rows = []
        for r in self._rows:
            const = ((r >> (n + m)) & 1) ^ (bin(r & xmask).count("1") & 1)
            rows.append((r >> n) & ((1 << m) - 1) | (const << m))
        reduced, pivots = rref_masks(rows, m + 1)
        if m in pivots:
            return None
        if len(pivots) != m:
            raise ValueError("relation is not a partial isomorphism: image not unique")
        out = 0
        for mask, col in zip(reduced, pivots):
            out |= ((mask >> m) & 1) << col
        return BitVec.from_mask(m, out)

    def enumerate_graph(self) -> set[tuple[BitVec, BitVec]]:
        """Every (x, y) pair of the graph, by brute-force membership test."""
        n, m = self.n_in, self.n_out
        if n + m > ENUMERATION_LIMIT:
            raise ValueError(f"refusing to enumerate 2^{n + m} assignments")
        rhs_bit = n + m
        points = set()
        for v in range(1 << (n + m)):
            if all(
                (bin(r & v).count("1") & 1) == ((r >> rhs_bit) & 1)
                for r in self._rows
            ):
                points.add(
                    (BitVec.from_mask(n, v), BitVec.from_mask(m, v >> n))
                )
        return points

    def enumerate_domain(self) -> set[BitVec]:
        if self.n_in > ENUMERATION_LIMIT:
            raise ValueError("domain too large to enumerate")
        rows = self.domain_masks()
        out = set()
        for v in range(1 << self.n_in):
            if all(
                (bin(r & v).count("1") & 1) == ((r >> self.n_in) & 1) for r in rows
            ):
                out.add(BitVec.from_mask(self.n_in, v))
        return out

    def is_total(self) -> bool:
        return all(r == 0 for r in self.domain_masks())


def _nontrivial_kernel(rows: list[int], ncols: int) -> Optional[int]:
    reduced, pivots = rref_masks(rows, ncols)
    if len(pivots) == ncols:
        return None
    pivot_set = set(pivots)
    f = next(j for j in range(ncols) if j not in pivot_set)
    v = 1 << f
    for mask, col in zip(reduced, pivots):
        if (mask >> f) & 1:
            v |= 1 << col
    return v


def all_bitvecs(n: int) -> list[BitVec]:
    return [BitVec.from_mask(n, v) for v in range(1 << n)]


__all__ = ["AffineRelation", "ArityError", "all_bitvecs", "ENUMERATION_LIMIT"]
