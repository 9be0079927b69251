"""Workbench for the algebra and sequent calculus of epistemic actions."""

from .algebra import (
    EpistemicSystem,
    Module,
    Quantale,
    ValidationReport,
    box_m,
    box_q,
    co_residual,
    compose,
    dyn_box,
    kernel,
    kernel_join,
    left_residual,
    right_residual,
    stabilizer,
    theorem_conditions,
    update,
    validate_system,
)
from .kripke import (
    ActionModel,
    KripkeStateModel,
    Precondition,
    Scenario,
    bms_to_system,
    build_scenario,
    lying_scenario,
    mitm_scenario,
    muddy_scenario,
)
from .lattice import (
    LatticeMap,
    PowersetLattice,
    TableLattice,
    powerset_lattice,
    right_adjoint,
)
from .rules import AssumptionBase, ProofTree, Vocabulary, axioms_of, check_proof, check_step
from .search import SearchConfig, prove
from .semantics import Environment, eval_m, eval_q, fold_m, fold_q, holds
from .syntax import Sequent, Signature, parse_m, parse_q, parse_sequent, print_sequent

__all__ = [name for name in dir() if not name.startswith("_")]
