"""Typed CNOT+ancilla gate lists and their affine relational semantics.

A circuit ``n_in -> n_out`` is an ordered list of gates over four primitives:

* ``cnot c t``  - flip wire ``t`` when wire ``c`` is 1
* ``swap a b``  - exchange two wires
* ``init1 p``   - insert a fresh wire holding 1 at position ``p`` (width +1)
* ``post1 p``   - post-select wire ``p`` on 1 and delete it (width -1)

Wires are absolute indices into the current register, so the width changes
along the gate list; ``validate`` checks the whole trace.  The derived
``init0``/``post0``/``not`` gates expand to primitive sequences eagerly.

``semantics`` maps a circuit to its :class:`AffineRelation` by symbolic
execution: every wire carries an affine expression in the inputs and each
post-selection contributes one domain constraint.  Canonical relations make
``equal_circ`` a decision procedure for circuit equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .gf2 import BitVec
from .relation import AffineRelation, ArityError

CNOT = "cnot"
SWAP = "swap"
INIT1 = "init1"
POST1 = "post1"


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    args: tuple[int, ...]

    def __repr__(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.args))})"

    def shifted(self, offset: int) -> "Gate":
        return Gate(self.kind, tuple(a + offset for a in self.args))


def cnot(control: int, target: int) -> Gate:
    return Gate(CNOT, (control, target))


def swap(a: int, b: int) -> Gate:
    return Gate(SWAP, (a, b))


def init1(pos: int) -> Gate:
    return Gate(INIT1, (pos,))


def post1(pos: int) -> Gate:
    return Gate(POST1, (pos,))


def init0(pos: int) -> tuple[Gate, ...]:
    """|0>: two |1> wires, a cnot onto the lower one, discard the control."""
    return (init1(pos), init1(pos), cnot(pos, pos + 1), post1(pos))


def post0(pos: int) -> tuple[Gate, ...]:
    """<0|: flip with a |1> ancilla, then post-select the flipped wire on 1."""
    return (init1(pos), cnot(pos, pos + 1), post1(pos), post1(pos))


def notg(pos: int) -> tuple[Gate, ...]:
    """not: cnot from a consumed |1> ancilla."""
    return (init1(pos), cnot(pos, pos + 1), post1(pos))


def _flatten(items: Iterable) -> list[Gate]:
    out: list[Gate] = []
    for item in items:
        if isinstance(item, Gate):
            out.append(item)
        else:
            out.extend(_flatten(item))
    return out


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    n_out: Optional[int]
    bad_index: Optional[int] = None
    message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _gate_width(gate: Gate, width: int) -> Optional[str]:
    """None when the gate is legal at the given width, else a reason."""
    k, a = gate.kind, gate.args
    if k == CNOT:
        c, t = a
        if c == t:
            return "control equals target"
        if not (0 <= c < width and 0 <= t < width):
            return f"wire out of range at width {width}"
    elif k == SWAP:
        x, y = a
        if x == y:
            return "swap of a wire with itself"
        if not (0 <= x < width and 0 <= y < width):
            return f"wire out of range at width {width}"
    elif k == INIT1:
        if not 0 <= a[0] <= width:
            return f"insertion index out of range at width {width}"
    elif k == POST1:
        if not 0 <= a[0] < width:
            return f"wire out of range at width {width}"
    else:
        return f"unknown gate kind {k!r}"
    return None


_WIDTH_DELTA = {CNOT: 0, SWAP: 0, INIT1: 1, POST1: -1}


class Circuit:
    """An immutable gate list with fixed input arity."""

    __slots__ = ("n_in", "gates", "_validation")

    def __init__(self, n_in: int, gates: Iterable[Gate] = ()):
        if n_in < 0:
            raise CircuitError("negative input arity")
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "gates", tuple(gates))
        width = n_in
        problem = None
        for i, g in enumerate(self.gates):
            reason = _gate_width(g, width)
            if reason is not None:
                problem = ValidationResult(False, None, i, f"gate {i} {g}: {reason}")
                break
            width += _WIDTH_DELTA[g.kind]
        if problem is None:
            problem = ValidationResult(True, width)
        object.__setattr__(self, "_validation", problem)

    def __setattr__(self, *_):
        raise AttributeError("Circuit is immutable")

    @property
    def n_out(self) -> int:
        v = self._validation
        if not v.ok:
            raise CircuitError(v.message)
        return v.n_out

    def validate(self) -> ValidationResult:
        return self._validation

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Circuit)
            and self.n_in == other.n_in
            and self.gates == other.gates
        )

    def __hash__(self) -> int:
        return hash((self.n_in, self.gates))

    def __repr__(self) -> str:
        return f"Circuit({self.n_in}->{self._validation.n_out}, {list(self.gates)})"

    def __len__(self) -> int:
        return len(self.gates)

    # -- structural operations ----------------------------------------------

    def compose(self, other: "Circuit") -> "Circuit":
        if self.n_out != other.n_in:
            raise ArityError(
                f"cannot compose {self.n_in}->{self.n_out} with {other.n_in}->{other.n_out}"
            )
        return Circuit(self.n_in, self.gates + other.gates)

    def tensor(self, other: "Circuit") -> "Circuit":
        """self on the lower wires, other re-indexed above them."""
        if not (self._validation.ok and other._validation.ok):
            raise CircuitError("tensor of an invalid circuit")
        shifted = tuple(g.shifted(self.n_out) for g in other.gates)
        return Circuit(self.n_in + other.n_in, self.gates + shifted)

    def dagger(self) -> "Circuit":
        """Horizontal flip: reverse the gate list, trading init1 and post1."""
        if not self._validation.ok:
            raise CircuitError(self._validation.message)
        flipped = []
        for g in reversed(self.gates):
            if g.kind == INIT1:
                flipped.append(Gate(POST1, g.args))
            elif g.kind == POST1:
                flipped.append(Gate(INIT1, g.args))
            else:
                flipped.append(g)
        return Circuit(self.n_out, flipped)

    # -- evaluation ----------------------------------------------------------

    def eval_state(self, x: BitVec | Sequence[int]) -> Optional[BitVec]:
        """Run the circuit on a basis state; None when a post-selection fails."""
        bits = list(x)
        if len(bits) != self.n_in:
            raise ArityError(f"input of length {len(bits)} for arity {self.n_in}")
        if not self._validation.ok:
            raise CircuitError(self._validation.message)
        for g in self.gates:
            k, a = g.kind, g.args
            if k == CNOT:
                bits[a[1]] ^= bits[a[0]]
            elif k == SWAP:
                i, j = a
                bits[i], bits[j] = bits[j], bits[i]
            elif k == INIT1:
                bits.insert(a[0], 1)
            else:
                if bits[a[0]] != 1:
                    return None
                del bits[a[0]]
        return BitVec(bits)

    def semantics(self) -> AffineRelation:
        """The affine partial isomorphism computed by the circuit."""
        if not self._validation.ok:
            raise CircuitError(self._validation.message)
        n = self.n_in
        one = 1 << n  # constant-term bit of a wire expression
        wires = [1 << i for i in range(n)]
        dom_rows: list[int] = []
        for g in self.gates:
            k, a = g.kind, g.args
            if k == CNOT:
                wires[a[1]] ^= wires[a[0]]
            elif k == SWAP:
                i, j = a
                wires[i], wires[j] = wires[j], wires[i]
            elif k == INIT1:
                wires.insert(a[0], one)
            else:
                e = wires.pop(a[0])
                # constraint: linear part of e equals 1 xor its constant term
                dom_rows.append((e & (one - 1)) | ((1 ^ (e >> n)) << n))
        m = len(wires)
        rhs = 1 << (n + m)
        rows = [(r & (one - 1)) | (rhs if r & one else 0) for r in dom_rows]
        for i, e in enumerate(wires):
            rows.append((e & (one - 1)) | (1 << (n + i)) | (rhs if e & one else 0))
        rel = AffineRelation(n, m, rows)
        assert rel.is_partial_iso(), "circuit semantics must be a partial isomorphism"
        return rel


def circuit(n_in: int, *items) -> Circuit:
    """Build a circuit from gates and nested gate sequences (macros)."""
    return Circuit(n_in, _flatten(items))


def identity_circuit(n: int) -> Circuit:
    return Circuit(n, ())


def equal_circ(c: Circuit, d: Circuit) -> bool:
    """Decide derivability-equality via the canonical semantics."""
    if c.n_in != d.n_in or c.n_out != d.n_out:
        raise ArityError("equality requires equal arities")
    return c.semantics() == d.semantics()


def permutation_circuit(perm: Sequence[int]) -> Circuit:
    """A swap network sending input wire perm[i] to output position i."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise CircuitError(f"{perm!r} is not a permutation")
    gates = []
    layout = list(range(n))  # layout[pos] = input wire currently at pos
    for pos in range(n):
        src = layout.index(perm[pos])
        if src != pos:
            gates.append(swap(pos, src))
            layout[pos], layout[src] = layout[src], layout[pos]
    return Circuit(n, gates)


# -- named constructions -----------------------------------------------------


def fanout(n: int) -> Circuit:
    """Copy map n -> 2n with outputs ordered (copy1 wires, copy2 wires).

    Built inductively from the single-wire copy (a |0> ancilla written by a
    cnot), with explicit swaps restoring the block output order.
    """
    if n < 0:
        raise ArityError("negative arity")
    if n == 0:
        return Circuit(0)
    if n == 1:
        return circuit(1, init0(0), cnot(1, 0))
    prev = fanout(n - 1).tensor(fanout(1))
    # outputs (A1, A2, b1, b2); rotate b1 down to position n-1
    fix = [swap(j - 1, j) for j in range(2 * n - 2, n - 1, -1)]
    return Circuit(n, prev.gates + tuple(fix))


def fanin(n: int) -> Circuit:
    return fanout(n).dagger()


def omega() -> Circuit:
    """The degenerate 0 -> 0 circuit: nowhere defined."""
    return circuit(0, init1(0), init1(1), cnot(0, 1), post1(0), post1(0))


def omega_nm(n: int, m: int) -> Circuit:
    """The degenerate circuit n -> m."""
    if n < 0 or m < 0:
        raise ArityError("negative arity")
    gates = [post1(0) for _ in range(n)]
    gates += list(omega().gates)
    gates += [init1(i) for i in range(m)]
    return Circuit(n, gates)


def plus_map(n: int) -> Circuit:
    """The total 3n -> 3n map whose third block becomes a xor b xor c.

    Inductive: the first n-1 wires of each block feed the smaller instance
    and the last wires feed the one-wire instance, with swap networks
    regrouping the blocks on the way in and out.
    """
    if n < 0:
        raise ArityError("negative arity")
    if n == 0:
        return Circuit(0)
    if n == 1:
        return circuit(3, cnot(1, 2), cnot(0, 2))
    k = n - 1
    # (a', a_n, b', b_n, c', c_n) -> (a', b', c', a_n, b_n, c_n)
    gather = (
        list(range(k))
        + list(range(n, n + k))
        + list(range(2 * n, 2 * n + k))
        + [k, n + k, 2 * n + k]
    )
    into = permutation_circuit(gather)
    core = plus_map(k).tensor(plus_map(1))
    return into.compose(core).compose(into.dagger())


def hat(bits: BitVec | Sequence[int]) -> Circuit:
    """The total 0 -> n preparation of a basis state."""
    gates: list = []
    for i, b in enumerate(bits):
        gates.append(init1(i) if b else init0(i))
    return circuit(0, *gates)


def swap_block(i: int, n: int) -> Circuit:
    """Rotate wire i up to position 1, cycling wires 1..i; identity for i <= 1.

    The conjugating permutation used by literals: its dagger restores the
    original order.
    """
    if i < 0 or (i > 0 and i >= n):
        raise ArityError(f"swap_block index {i} out of range for {n} wires")
    gates = [swap(j - 1, j) for j in range(i, 1, -1)]
    return Circuit(n, gates)


def literal(i: int, n: int) -> Circuit:
    """On n+1 wires: xor data wire i (1-based, clause wire at 0) onto wire 0.

    A swap-conjugated adjacent cnot; an involution.
    """
    if not 1 <= i <= n:
        raise ArityError(f"literal index {i} out of range for {n} data wires")
    block = swap_block(i, n + 1)
    middle = Circuit(n + 1, (cnot(1, 0),))
    return block.compose(middle).compose(block.dagger())


def clause_circuit(support: Iterable[int], rhs: int, n: int) -> Circuit:
    """Restriction of the identity on n wires to sum(x_i for i in support) = rhs.

    A |0> clause wire collects the parity through literals and is consumed by
    the ancilla matching rhs.
    """
    support = sorted(set(support))
    if support and not (0 <= support[0] and support[-1] < n):
        raise ArityError(f"support {support} out of range for {n} wires")
    if rhs not in (0, 1):
        raise ArityError("rhs must be a bit")
    gates: list = [init0(0)]
    for i in support:
        gates.append(literal(i + 1, n).gates)
    gates.append(post1(0) if rhs else post0(0))
    return circuit(n, *gates)


def is_latchable(c: Circuit) -> bool:
    """Whether c equals the copy-conjugate fanout (c x id) fanin."""
    n = c.n_in
    if c.n_out != n:
        raise ArityError("latchability is defined for endo-circuits")
    latched = fanout(n).compose(c.tensor(identity_circuit(n))).compose(fanin(n))
    return c.semantics() == latched.semantics()
