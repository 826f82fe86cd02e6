"""Bounded Petri net synthesis from labeled transition systems.

Synthesis is driven by regions: supports over the states plus signatures
over the events, checked against one of five b-bounded net-type families.
The package carries polynomial deciders where they exist, an exhaustive
oracle for small instances, hardness-instance generators, text formats,
and a CLI.
"""

from .modsolve import ModSystem, make_system, solve, verify
from .nets import CapExceeded, PetriNet, fire, marking_name, reachability_graph
from .nettypes import (
    FAMILIES,
    Group,
    NetType,
    Pair,
    delta_tau,
    format_event,
    legal,
    make_type,
    parse_event,
)
from .oracle import BudgetExceeded, OracleBudget, OracleReport, oracle_decide
from .polysynth import (
    AbstractRegion,
    DecisionReport,
    SpanningData,
    SynthesisReport,
    base_system,
    build_spanning,
    concrete_to_abstract,
    decide_essa_rzpt,
    decide_essp_rzpt,
    decide_ssa,
    decide_ssp,
    essa_system,
    fundamental_cycle,
    synthesize_rzpt,
)
from .reduction import (
    AlphaWitness,
    Cm1in3Formula,
    GadgetUnion,
    alpha_witness_region,
    brute_model,
    build_union,
    is_model,
    joining,
    lemma6_case,
    lemma6_region,
    linear_joining,
    ppt_essp_witness,
)
from .regions import (
    Region,
    RegionCheck,
    WitnessReport,
    WitnessSet,
    build_witness,
    check_witness,
    solves,
    support_from_signature,
    synthesized_net,
    validate_region,
)
from .ts import (
    SeparationAtom,
    TransitionSystem,
    ValidationReport,
    deterministic_isomorphism,
    enumerate_atoms,
    essa_atoms,
    grade,
    is_linear,
    linear_terminal,
    ssa_atoms,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractRegion",
    "AlphaWitness",
    "BudgetExceeded",
    "CapExceeded",
    "Cm1in3Formula",
    "DecisionReport",
    "FAMILIES",
    "GadgetUnion",
    "Group",
    "ModSystem",
    "NetType",
    "OracleBudget",
    "OracleReport",
    "Pair",
    "PetriNet",
    "Region",
    "RegionCheck",
    "SeparationAtom",
    "SpanningData",
    "SynthesisReport",
    "TransitionSystem",
    "ValidationReport",
    "WitnessReport",
    "WitnessSet",
    "alpha_witness_region",
    "base_system",
    "brute_model",
    "build_spanning",
    "build_union",
    "build_witness",
    "check_witness",
    "concrete_to_abstract",
    "decide_essa_rzpt",
    "decide_essp_rzpt",
    "decide_ssa",
    "decide_ssp",
    "delta_tau",
    "deterministic_isomorphism",
    "enumerate_atoms",
    "essa_atoms",
    "essa_system",
    "fire",
    "format_event",
    "fundamental_cycle",
    "grade",
    "is_linear",
    "is_model",
    "joining",
    "legal",
    "lemma6_case",
    "lemma6_region",
    "linear_joining",
    "linear_terminal",
    "make_system",
    "make_type",
    "marking_name",
    "oracle_decide",
    "parse_event",
    "ppt_essp_witness",
    "reachability_graph",
    "solve",
    "solves",
    "ssa_atoms",
    "support_from_signature",
    "synthesize_rzpt",
    "synthesized_net",
    "validate",
    "validate_region",
    "verify",
]
