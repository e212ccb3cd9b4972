"""Clausal normal form for restriction idempotents.

A restriction idempotent on n wires is the identity on an affine subspace of
GF(2)^n, i.e. the solution set of parity equations.  Its canonical clausal
form lists one clause per equation, with the coefficient matrix in reduced
row echelon form; the unsatisfiable system is the single clause (emptyset, 1).
Emitting the clause circuits in order gives a gate-list-identical canonical
circuit for every semantic class of idempotents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .gf2 import rref_masks
from .circuit import Circuit, clause_circuit, identity_circuit
from .relation import AffineRelation


class NotIdempotentError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    """One parity constraint: sum(x_i for i in support) = rhs."""

    support: frozenset[int]
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if self.rhs not in (0, 1):
            raise ValueError("rhs must be a bit")
        if any(i < 0 for i in self.support):
            raise ValueError("negative wire index")

    def mask(self, n: int) -> int:
        out = self.rhs << n
        for i in self.support:
            if i >= n:
                raise ValueError(f"wire {i} out of range for {n} wires")
            out |= 1 << i
        return out


@dataclass(frozen=True)
class ClausalForm:
    """An ordered list of clauses over n wires."""

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))

    @classmethod
    def from_masks(cls, n: int, rows) -> "ClausalForm":
        """Rows are int bitmasks with the rhs at bit ``n``."""
        return cls(n, _clauses_from_masks(rows, n))

    def masks(self) -> list[int]:
        return [c.mask(self.n) for c in self.clauses]

    def is_canonical(self) -> bool:
        return self == gaussian_eliminate(self)


def _clauses_from_masks(rows: Iterable[int], n: int) -> tuple[Clause, ...]:
    out = []
    for r in rows:
        support = frozenset(i for i in range(n) if (r >> i) & 1)
        out.append(Clause(support, (r >> n) & 1))
    return tuple(out)


UNSAT = Clause(frozenset(), 1)


def gaussian_eliminate(cf: ClausalForm) -> ClausalForm:
    """Canonicalize by row reduction on the clause matrix.

    Every elementary step is one of the clause-level moves that preserve the
    solution set: swapping two clauses or replacing {c, c'} by {c, c+c'};
    ``gaussian_eliminate_steps`` exposes the recorded sequence.
    """
    form, _ = gaussian_eliminate_steps(cf)
    return form


def gaussian_eliminate_steps(cf: ClausalForm) -> tuple[ClausalForm, list[tuple]]:
    """Canonical form together with the elementary move sequence.

    Steps are ("swap", i, j) - exchange clauses i and j - and ("add", i, j) -
    replace clause j by clause i + clause j.  Dropping zero clauses and the
    collapse of an inconsistent system to (emptyset, 1) happen afterwards and
    are not recorded as moves.
    """
    n = cf.n
    work = list(cf.masks())
    steps: list[tuple] = []
    r = 0
    for col in range(n):
        bit = 1 << col
        src = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if src is None:
            continue
        if src != r:
            work[r], work[src] = work[src], work[r]
            steps.append(("swap", r, src))
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
                steps.append(("add", r, i))
        r += 1
    rows = [m for m in work if m]
    if any(m == (1 << n) for m in rows):
        return ClausalForm(n, (UNSAT,)), steps
    return ClausalForm(n, _clauses_from_masks(rows, n)), steps


def idempotent_to_clausal(r: AffineRelation) -> ClausalForm:
    """Extract the canonical equation system of a restriction idempotent."""
    if r.n_in != r.n_out:
        raise NotIdempotentError(
            f"arity mismatch: {r.n_in} -> {r.n_out} is not an endo-relation"
        )
    if r != r.restriction():
        raise NotIdempotentError("relation differs from its restriction")
    n = r.n_in
    rows = r.domain_masks()
    if rows == (1 << n,):
        return ClausalForm(n, (UNSAT,))
    reduced, _ = rref_masks(rows, n + 1)
    return ClausalForm(n, _clauses_from_masks(reduced, n))


def clausal_to_circuit(cf: ClausalForm) -> Circuit:
    """Emit the clause circuits in order; no clauses gives the identity."""
    out = identity_circuit(cf.n)
    for c in cf.clauses:
        out = out.compose(clause_circuit(sorted(c.support), c.rhs, cf.n))
    return out


def normalize_idempotent(c: Circuit) -> Circuit:
    """The canonical clausal circuit semantically equal to ``c``.

    Raises :class:`NotIdempotentError` (naming the failed condition) when the
    semantics of ``c`` is not a restriction idempotent.
    """
    return clausal_to_circuit(gaussian_eliminate(idempotent_to_clausal(c.semantics())))
