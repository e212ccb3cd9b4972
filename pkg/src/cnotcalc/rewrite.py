"""The axiom corpus and a local rewrite engine.

Axioms CNT1..CNT9 (the two-sided CNT4 and CNT7 each contribute two rules)
plus the derived-identity fixtures are stored as explicit circuit pairs and
machine-checked for semantic equality at load.

``apply_at`` replaces one contiguous gate segment matching a rule's source
side, under a consistent injective re-indexing of the wires it touches.
Matching is performed on persistent wire identities, so insertions and
deletions inside the segment do not confuse the bookkeeping; a swap network
re-establishes the original wire layout after the replacement.  The engine
demonstrates derivations; it does not search modulo monoidal interchange and
claims no normal forms - ``equal_circ`` is the decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuit import (
    Circuit,
    Gate,
    CircuitError,
    CNOT,
    SWAP,
    INIT1,
    POST1,
    circuit,
    cnot,
    identity_circuit,
    init0,
    init1,
    notg,
    post0,
    post1,
    swap,
    clause_circuit,
    fanin,
    fanout,
    omega,
    omega_nm,
)
from .relation import all_bitvecs


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Circuit
    rhs: Circuit


@dataclass(frozen=True)
class Derivation:
    """A replayable proof: rule applications from a starting circuit."""

    start: Circuit
    steps: tuple[tuple[str, int, str], ...]  # (rule name, gate offset, "lr"|"rl")

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(tuple(s) for s in self.steps))


class RuleLoadError(ValueError):
    pass


def _check(name: str, lhs: Circuit, rhs: Circuit) -> RewriteRule:
    if (lhs.n_in, lhs.n_out) != (rhs.n_in, rhs.n_out):
        raise RuleLoadError(f"rule {name}: sides have different arities")
    if lhs.semantics() != rhs.semantics():
        raise RuleLoadError(f"rule {name}: sides are not semantically equal")
    return RewriteRule(name, lhs, rhs)


def _axiom_circuits() -> dict[str, tuple[Circuit, Circuit]]:
    cnt7a_lhs = circuit(1, init1(0), init1(1), cnot(0, 1), cnot(1, 2), post1(0))
    cnt7a_rhs = circuit(1, init1(0), init1(1), cnot(0, 1), post1(0))
    return {
        # three alternating cnots make a swap
        "CNT1": (
            circuit(2, cnot(0, 1), cnot(1, 0), cnot(0, 1)),
            circuit(2, swap(0, 1)),
        ),
        # cnot is an involution
        "CNT2": (circuit(2, cnot(0, 1), cnot(0, 1)), identity_circuit(2)),
        # cnots sharing the control wire commute
        "CNT3": (
            circuit(3, cnot(1, 0), cnot(1, 2)),
            circuit(3, cnot(1, 2), cnot(1, 0)),
        ),
        # a |1> control stays 1, so it may be cut after the gate
        "CNT4a": (
            circuit(1, init1(0), cnot(0, 1)),
            circuit(1, init1(0), cnot(0, 1), post1(0), init1(0)),
        ),
        "CNT4b": (
            circuit(2, cnot(0, 1), post1(0)),
            circuit(2, post1(0), init1(0), cnot(0, 1), post1(0)),
        ),
        # cnots sharing the operating wire commute
        "CNT5": (
            circuit(3, cnot(0, 1), cnot(2, 1)),
            circuit(3, cnot(2, 1), cnot(0, 1)),
        ),
        # |1><1| is the empty circuit
        "CNT6": (circuit(0, init1(0), post1(0)), identity_circuit(0)),
        # a control holding 0 does nothing
        "CNT7a": (cnt7a_lhs, cnt7a_rhs),
        "CNT7b": (cnt7a_lhs.dagger(), cnt7a_rhs.dagger()),
        # the three-cnot ladder contracts
        "CNT8": (
            circuit(3, cnot(0, 1), cnot(1, 2), cnot(0, 1)),
            circuit(3, cnot(1, 2), cnot(0, 2)),
        ),
        # in a degenerate circuit any wire may be cut
        "CNT9": (
            circuit(1, init1(0), init1(1), cnot(0, 1), post1(0), post1(0)),
            circuit(
                1,
                init1(0),
                init1(1),
                post1(2),
                cnot(0, 1),
                init1(2),
                post1(0),
                post1(0),
            ),
        ),
    }


def _pair(g: Circuit) -> Circuit:
    """The graph pairing <restriction(g), g> as a circuit."""
    rest = g.compose(g.dagger())
    return fanout(g.n_in).compose(rest.tensor(g))


def _lemma_circuits() -> dict[str, tuple[Circuit, Circuit]]:
    cut1 = circuit(1, post1(0), init1(0))
    sample_cnot = circuit(2, cnot(0, 1))
    sample_clause = clause_circuit([0, 1], 1, 2)
    id1 = identity_circuit(1)

    # the degenerate map absorbs anything tensored or composed with it
    fixtures = {
        "omega-absorb": (omega().tensor(omega()), omega()),
        "omega-tensor-absorb": (sample_cnot.tensor(omega()), omega_nm(2, 2)),
        "omega-post-absorb": (omega_nm(1, 2).compose(fanin(1)), omega_nm(1, 1)),
        "omega-pre-absorb": (fanout(1).compose(omega_nm(2, 1)), omega_nm(1, 1)),
        "cnot-triple": (
            circuit(3, cnot(0, 1), cnot(1, 2), cnot(0, 1)),
            circuit(3, cnot(1, 0), cnot(0, 2), cnot(1, 0)),
        ),
        "zero-cancel": (circuit(0, init0(0), post0(0)), identity_circuit(0)),
        "cnot-slide": (
            circuit(3, cnot(0, 1), cnot(1, 2)),
            circuit(3, cnot(0, 2), cnot(1, 2), cnot(0, 1)),
        ),
        "not-slide": (
            circuit(3, cnot(1, 2), notg(1), cnot(1, 0), notg(1)),
            circuit(3, notg(1), cnot(1, 0), notg(1), cnot(1, 2)),
        ),
        "not-involution": (circuit(1, notg(0), notg(0)), id1),
        "copy-discard-zero": (
            fanout(1).compose(circuit(2, post0(1))),
            circuit(1, post0(0), init0(0)),
        ),
        "copy-discard-one": (
            fanout(1).compose(circuit(2, post1(1))),
            cut1,
        ),
        "literal-through-fanin": (
            fanin(1).tensor(id1).compose(circuit(2, cnot(1, 0))),
            circuit(3, cnot(2, 0), cnot(2, 1)).compose(fanin(1).tensor(id1)),
        ),
        "cut-as-clause": (cut1, clause_circuit([0], 1, 1)),
        "latch-witness": (
            fanout(1).compose(cut1.tensor(id1)).compose(fanin(1)),
            cut1,
        ),
        "clause-idem": (sample_clause.compose(sample_clause), sample_clause),
    }

    # graph-pairing route recovers the map itself (instantiated at a sample
    # partial isomorphism): pair f, re-derive the input by pairing the
    # inverse, merge the two input copies, and consume the pair again.
    f = circuit(1, notg(0), post1(0), init1(0))
    pf, pfo = _pair(f), _pair(f.dagger())
    full_copy = (
        pf
        .compose(id1.tensor(pfo))
        .compose(circuit(3, swap(1, 2)))
        .compose(fanin(1).tensor(id1))
        .compose(circuit(2, swap(0, 1)))
        .compose(pfo.dagger())
    )
    fixtures["full-copy"] = (full_copy, f)
    return fixtures


_RULE_CACHE: dict[str, RewriteRule] = {}


def axiom(name: str) -> RewriteRule:
    """One of the eleven defining identities (CNT4/CNT7 come in two forms)."""
    table = _axiom_circuits()
    if name not in table:
        raise RuleLoadError(f"unknown axiom {name!r}; valid: {sorted(table)}")
    if name not in _RULE_CACHE:
        _RULE_CACHE[name] = _check(name, *table[name])
    return _RULE_CACHE[name]


def lemma_fixture(name: str) -> RewriteRule:
    """A derived identity from the fixture corpus."""
    table = _lemma_circuits()
    if name not in table:
        raise RuleLoadError(f"unknown lemma fixture {name!r}; valid: {sorted(table)}")
    key = "lemma:" + name
    if key not in _RULE_CACHE:
        _RULE_CACHE[key] = _check(name, *table[name])
    return _RULE_CACHE[key]


def axiom_names() -> list[str]:
    return sorted(_axiom_circuits())


def lemma_names() -> list[str]:
    return sorted(_lemma_circuits())


def all_rules() -> list[RewriteRule]:
    return [axiom(n) for n in axiom_names()] + [lemma_fixture(n) for n in lemma_names()]


def find_rule(name: str) -> RewriteRule:
    if name in _axiom_circuits():
        return axiom(name)
    return lemma_fixture(name)


# -- rule application ---------------------------------------------------------


def _replay_ids(gates, start_width: int, first_fresh: int):
    """Replay gates over persistent wire ids.

    Returns (events, final_layout, touched_ids).  Events mirror the gates
    with positions resolved to ids; init events carry their fresh id.
    """
    layout = list(range(start_width))
    fresh = first_fresh
    events = []
    touched = set()
    for g in gates:
        k, a = g.kind, g.args
        if k == CNOT or k == SWAP:
            i, j = layout[a[0]], layout[a[1]]
            events.append((k, i, j))
            touched.update((i, j))
            if k == SWAP:
                layout[a[0]], layout[a[1]] = layout[a[1]], layout[a[0]]
        elif k == INIT1:
            events.append((INIT1, fresh))
            touched.add(fresh)
            layout.insert(a[0], fresh)
            fresh += 1
        else:
            wire = layout.pop(a[0])
            events.append((POST1, wire))
            touched.add(wire)
    return events, layout, touched


def _match(rule_events, circ_events) -> Optional[dict]:
    """Injective rule-id -> circuit-id map making the event lists equal."""
    phi: dict[int, int] = {}
    used: set[int] = set()

    def bind(rid, cid) -> bool:
        if rid in phi:
            return phi[rid] == cid
        if cid in used:
            return False
        phi[rid] = cid
        used.add(cid)
        return True

    for re, ce in zip(rule_events, circ_events):
        if re[0] != ce[0]:
            return None
        if not all(bind(r, c) for r, c in zip(re[1:], ce[1:])):
            return None
    return phi


def apply_at(
    c: Circuit, rule: RewriteRule, offset: int, direction: str = "lr"
) -> Optional[Circuit]:
    """Rewrite the segment of ``c`` at ``offset`` along ``rule``; None if the
    segment does not match the source side.  The result is always
    semantically equal to ``c``."""
    if direction not in ("lr", "rl"):
        raise ValueError(f"direction must be 'lr' or 'rl', got {direction!r}")
    if not c.validate():
        raise CircuitError(c.validate().message)
    src, dst = (rule.lhs, rule.rhs) if direction == "lr" else (rule.rhs, rule.lhs)
    k = len(src.gates)
    if offset < 0 or offset + k > len(c.gates):
        return None

    prefix = c.gates[:offset]
    segment = c.gates[offset : offset + k]
    suffix = c.gates[offset + k :]
    w0 = Circuit(c.n_in, prefix).n_out

    circ_events, circ_final, touched = _replay_ids(segment, w0, first_fresh=w0)
    src_events, src_final, _ = _replay_ids(src.gates, src.n_in, first_fresh=src.n_in)
    dst_events, dst_final, _ = _replay_ids(dst.gates, dst.n_in, first_fresh=dst.n_in)

    phi = _match(src_events, circ_events)
    if phi is None:
        return None

    # Pass-through rule inputs never occur in the matched events; pin them to
    # untouched circuit wires so the emitted side can reference them.
    spare = [w for w in range(w0) if w not in touched and w not in set(phi.values())]
    for rid in range(src.n_in):
        if rid not in phi:
            if not spare:
                return None
            phi[rid] = spare.pop(0)

    # Emit the replacement side, inserting fresh wires at the top; positions
    # are recovered from the evolving layout.
    layout = list(range(w0))
    fresh = w0 + k + 1  # beyond any id the segment replay may have created
    emitted: list[Gate] = []
    phi_dst = dict(phi)
    for ev in dst_events:
        kind = ev[0]
        if kind == INIT1:
            phi_dst[ev[1]] = fresh
            emitted.append(init1(len(layout)))
            layout.append(fresh)
            fresh += 1
        elif kind == POST1:
            p = layout.index(phi_dst[ev[1]])
            emitted.append(post1(p))
            del layout[p]
        else:
            i = layout.index(phi_dst[ev[1]])
            j = layout.index(phi_dst[ev[2]])
            emitted.append(Gate(kind, (i, j)))
            if kind == SWAP:
                layout[i], layout[j] = layout[j], layout[i]

    # The surviving wires must land exactly where the original segment left
    # them, with the emitted side's outputs standing in for the source side's
    # position by position.
    want = list(circ_final)
    for q in range(len(src_final)):
        idx = circ_final.index(phi[src_final[q]])
        want[idx] = phi_dst[dst_final[q]]
    for pos in range(len(want)):
        if layout[pos] != want[pos]:
            j = layout.index(want[pos])
            emitted.append(swap(pos, j))
            layout[pos], layout[j] = layout[j], layout[pos]

    return Circuit(c.n_in, prefix + tuple(emitted) + suffix)


def replay(d: Derivation) -> list[Circuit]:
    """All intermediate circuits of a derivation; raises on a failed step."""
    out = [d.start]
    current = d.start
    for i, (name, offset, direction) in enumerate(d.steps):
        rule = find_rule(name)
        nxt = apply_at(current, rule, offset, direction)
        if nxt is None:
            raise ValueError(
                f"step {i}: rule {name} does not match at offset {offset} ({direction})"
            )
        out.append(nxt)
        current = nxt
    return out


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class RuleReport:
    name: str
    semantic_ok: bool
    state_map_ok: bool

    @property
    def ok(self) -> bool:
        return self.semantic_ok and self.state_map_ok


def verify_rules(rules) -> list[RuleReport]:
    reports = []
    for rule in rules:
        sem = rule.lhs.semantics() == rule.rhs.semantics()
        states = all(
            rule.lhs.eval_state(x) == rule.rhs.eval_state(x)
            for x in all_bitvecs(rule.lhs.n_in)
        )
        reports.append(RuleReport(rule.name, sem, states))
    return reports


def verify_all() -> list[RuleReport]:
    """Semantic and exhaustive state-map checks over the whole corpus."""
    return verify_rules(all_rules())
