"""CNOT circuit calculus over GF(2) affine partial isomorphisms."""

from .gf2 import BitVec, GF2Matrix, rref, solve_affine, project_out
from .relation import AffineRelation
from .circuit import (
    Circuit,
    Gate,
    circuit,
    identity_circuit,
    permutation_circuit,
    cnot,
    swap,
    init1,
    post1,
    init0,
    post0,
    notg,
    equal_circ,
    fanout,
    fanin,
    omega,
    omega_nm,
    plus_map,
    hat,
    swap_block,
    literal,
    clause_circuit,
    is_latchable,
)
from .rewrite import (
    RewriteRule,
    Derivation,
    axiom,
    lemma_fixture,
    all_rules,
    apply_at,
    replay,
    verify_all,
    verify_rules,
)
from .normalize import (
    Clause,
    ClausalForm,
    idempotent_to_clausal,
    clausal_to_circuit,
    gaussian_eliminate,
    normalize_idempotent,
)
from .synth import AffineMapSpec, synth_total_graph, synth

__all__ = [
    "BitVec",
    "GF2Matrix",
    "rref",
    "solve_affine",
    "project_out",
    "AffineRelation",
    "Circuit",
    "Gate",
    "circuit",
    "identity_circuit",
    "permutation_circuit",
    "cnot",
    "swap",
    "init1",
    "post1",
    "init0",
    "post0",
    "notg",
    "equal_circ",
    "fanout",
    "fanin",
    "omega",
    "omega_nm",
    "plus_map",
    "hat",
    "swap_block",
    "literal",
    "clause_circuit",
    "is_latchable",
    "RewriteRule",
    "Derivation",
    "axiom",
    "lemma_fixture",
    "all_rules",
    "apply_at",
    "replay",
    "verify_all",
    "verify_rules",
    "Clause",
    "ClausalForm",
    "idempotent_to_clausal",
    "clausal_to_circuit",
    "gaussian_eliminate",
    "normalize_idempotent",
    "AffineMapSpec",
    "synth_total_graph",
    "synth",
]
