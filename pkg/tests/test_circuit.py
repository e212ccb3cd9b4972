"""Circuit IR: validation, structure, evaluation, and the semantics functor."""

import pytest

from cnotcalc.gf2 import BitVec
from cnotcalc.relation import AffineRelation, ArityError, all_bitvecs
from cnotcalc.circuit import (
    CircuitError,
    circuit,
    cnot,
    equal_circ,
    identity_circuit,
    init0,
    init1,
    notg,
    omega,
    post1,
    swap,
)
from cnotcalc.fuzzing import random_circuit, trial_rng


def seeded(count, salt):
    return [trial_rng(salt, i) for i in range(count)]


class TestValidation:
    def test_simple_cnot(self):
        c = circuit(2, cnot(0, 1))
        assert c.validate().ok and c.n_out == 2

    def test_target_out_of_range(self):
        c = circuit(1, cnot(0, 1))
        v = c.validate()
        assert not v.ok and v.bad_index == 0
        with pytest.raises(CircuitError):
            c.n_out

    def test_ancilla_pair_on_no_wires(self):
        c = circuit(0, init1(0), post1(0))
        assert c.validate().ok and c.n_out == 0

    def test_control_equals_target(self):
        assert not circuit(2, cnot(1, 1)).validate().ok

    def test_post_on_empty_register(self):
        assert not circuit(0, post1(0)).validate().ok

    def test_width_trace_through_macros(self):
        c = circuit(1, init0(0), notg(1), init1(2))
        assert c.validate().ok and c.n_out == 3


class TestStructure:
    def test_compose_identity(self):
        c = circuit(2, cnot(0, 1), swap(0, 1))
        assert identity_circuit(2).compose(c) == c
        assert c.compose(identity_circuit(2)) == c

    def test_compose_arity_checked(self):
        with pytest.raises(ArityError):
            circuit(1, init1(0)).compose(circuit(1))

    def test_tensor_reindexes_upper_block(self):
        ket1 = circuit(0, init1(0))
        c = identity_circuit(1).tensor(ket1)
        assert c.n_in == 1 and c.n_out == 2
        assert c.eval_state([0]) == BitVec([0, 1])
        assert c.eval_state([1]) == BitVec([1, 1])

    def test_tensor_with_width_changes(self):
        bra1 = circuit(1, post1(0))
        c = bra1.tensor(bra1)
        assert c.gates == (post1(0), post1(0))
        assert c.eval_state([1, 1]) == BitVec([])
        assert c.eval_state([0, 1]) is None


class TestDagger:
    def test_cnot_self_dual(self):
        c = circuit(2, cnot(0, 1))
        assert c.dagger() == c

    def test_ket_to_bra(self):
        assert circuit(0, init1(0)).dagger() == circuit(1, post1(0))

    def test_involutive_gate_for_gate(self):
        for rng in seeded(30, salt=41):
            c = random_circuit(rng, rng.randrange(5), 20)
            assert c.dagger().dagger() == c

    def test_semantics_commutes_with_dagger(self):
        for rng in seeded(30, salt=42):
            c = random_circuit(rng, rng.randrange(5), 20)
            assert c.dagger().semantics() == c.semantics().dagger()


class TestEvalState:
    def test_cnot(self):
        assert circuit(2, cnot(0, 1)).eval_state([1, 0]) == BitVec([1, 1])

    def test_omega_undefined(self):
        assert omega().eval_state([]) is None

    def test_omega_intermediate_states(self):
        # first post-selection passes, the second sees 0 and fails
        c = circuit(0, init1(0), init1(1), cnot(0, 1), post1(0))
        assert c.eval_state([]) == BitVec([0])

    def test_length_checked(self):
        with pytest.raises(ArityError):
            circuit(1, notg(0)).eval_state([0, 1])


class TestSemantics:
    def test_double_cnot_is_identity(self):
        c = circuit(2, cnot(0, 1), cnot(0, 1))
        assert c.semantics() == AffineRelation.identity(2)

    def test_omega_is_empty(self):
        assert omega().semantics() == AffineRelation.empty(0, 0)

    def test_functorial_on_compose(self):
        for rng in seeded(30, salt=43):
            c = random_circuit(rng, rng.randrange(5), 15)
            d = random_circuit(rng, c.n_out, 15)
            assert c.compose(d).semantics() == c.semantics().compose(d.semantics())

    def test_functorial_on_tensor(self):
        for rng in seeded(30, salt=44):
            c = random_circuit(rng, rng.randrange(4), 12)
            d = random_circuit(rng, rng.randrange(4), 12)
            assert c.tensor(d).semantics() == c.semantics().tensor(d.semantics())

    def test_oracle_agreement(self):
        # gatewise evaluation equals relational application, exhaustively
        # over every input, for arities up to 8
        for rng in seeded(60, salt=45):
            c = random_circuit(rng, rng.randrange(9), 25)
            rel = c.semantics()
            for x in all_bitvecs(c.n_in):
                assert c.eval_state(x) == rel.apply(x)

    def test_invalid_circuit_rejected(self):
        with pytest.raises(CircuitError):
            circuit(1, cnot(0, 1)).semantics()


def gate_relation(gate, width):
    """The relation of a single gate at the given register width."""
    k, a = gate.kind, gate.args
    n = width
    if k == "cnot":
        c, t = a
        rows = [(1 << j) | (1 << (n + j)) for j in range(n) if j != t]
        rows.append((1 << c) | (1 << t) | (1 << (n + t)))
        return AffineRelation(n, n, rows)
    if k == "swap":
        i, j = a
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return AffineRelation.permutation(perm)
    if k == "init1":
        p = a[0]
        m = n + 1
        rows = [(1 << (n + p)) | (1 << (n + m))]  # fresh output holds 1
        src = [j for j in range(m) if j != p]
        rows += [(1 << j) | (1 << (n + src[j])) for j in range(n)]
        return AffineRelation(n, m, rows)
    p = a[0]
    m = n - 1
    rows = [(1 << p) | (1 << (n + m))]  # consumed input must be 1
    src = [j for j in range(n) if j != p]
    rows += [(1 << src[i]) | (1 << (n + i)) for i in range(m)]
    return AffineRelation(n, m, rows)


def fold_semantics(c):
    """Reference semantics: compose the per-gate relations in order."""
    rel = AffineRelation.identity(c.n_in)
    width = c.n_in
    for g in c.gates:
        rel = rel.compose(gate_relation(g, width))
        width = rel.n_out
    return rel


class TestSemanticsAgainstGateFold:
    def test_matches_per_gate_composition(self):
        for rng in seeded(50, salt=52):
            c = random_circuit(rng, rng.randrange(5), 20)
            assert c.semantics() == fold_semantics(c)

    def test_matches_on_named_constructions(self):
        from cnotcalc.circuit import clause_circuit, fanout, omega_nm, plus_map

        for c in [fanout(2), omega_nm(2, 1), plus_map(1), clause_circuit([0, 1], 1, 2)]:
            assert c.semantics() == fold_semantics(c)


class TestEqualCirc:
    def test_cnt1_swap(self):
        lhs = circuit(2, cnot(0, 1), cnot(1, 0), cnot(0, 1))
        assert equal_circ(lhs, circuit(2, swap(0, 1)))

    def test_cnt9_cut(self):
        lhs = circuit(1, init1(0), init1(1), cnot(0, 1), post1(0), post1(0))
        rhs = circuit(
            1, init1(0), init1(1), post1(2), cnot(0, 1), init1(2), post1(0), post1(0)
        )
        assert equal_circ(lhs, rhs)

    def test_distinct_total_maps(self):
        assert not equal_circ(identity_circuit(1), circuit(1, notg(0)))

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            equal_circ(identity_circuit(1), identity_circuit(2))


class TestInverseLawsAtCircuitLevel:
    def test_regularity(self):
        for rng in seeded(25, salt=46):
            c = random_circuit(rng, rng.randrange(5), 18)
            ccc = c.compose(c.dagger()).compose(c)
            assert equal_circ(ccc, c)

    def test_restrictions_commute(self):
        for rng in seeded(25, salt=47):
            n = rng.randrange(5)
            c = random_circuit(rng, n, 18)
            d = random_circuit(rng, n, 18)
            cbar = c.compose(c.dagger())
            dbar = d.compose(d.dagger())
            assert equal_circ(cbar.compose(dbar), dbar.compose(cbar))


class TestBasisClosureAndDegeneracy:
    def test_post_free_circuits_are_total(self):
        # circuits over cnot/swap/init gates send basis states to basis states
        for rng in seeded(40, salt=48):
            n = rng.randrange(5)
            c = random_circuit(rng, n, 20, allow_post=False)
            for x in all_bitvecs(n):
                assert c.eval_state(x) is not None
            assert c.semantics().is_total()

    def test_preparations_total_or_degenerate(self):
        for rng in seeded(60, salt=49):
            rel = random_circuit(rng, 0, 25).semantics()
            assert rel.is_total() or rel.is_empty()

    def test_absorption(self):
        for rng in seeded(20, salt=50):
            c = random_circuit(rng, rng.randrange(4), 15)
            if not c.semantics().is_empty():
                continue
            d = random_circuit(rng, rng.randrange(4), 10)
            assert c.tensor(d).semantics().is_empty()
            e = random_circuit(rng, c.n_out, 10)
            assert c.compose(e).semantics().is_empty()
