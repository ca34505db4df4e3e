"""Proto-algorithms over finite domains.

Define non-interactive and interactive proto-algorithms, validate them, run
their step semantics, compute the relations they compute, and decide
isomorphism, simulation and equivalence with checkable witnesses.
"""
from .bridge import (ExpansionSpec, classify_triviality, expand_to_interactive, is_expansion,
                     to_non_interactive, verify_embedding)
from .equivalence import (EquivalenceWitness, IsoWitness, SimulationWitness, check_equivalence,
                          check_hierarchy, check_isomorphism, greatest_simulation,
                          oracle_equivalence_exists, oracle_simulation_exists,
                          validate_equivalence_witness, validate_iso_witness,
                          validate_simulation_witness, verify_simulation_consequences)
from .io import (parse_definition, parse_witness, read_definition, serialize_definition,
                 serialize_witness, write_definition)
from .model import (INTERACTIVE, NON_INTERACTIVE, AlgorithmGraph, Alphabet, Interpretation,
                    ProtoAlgorithm, ValidationReport, classify_determinism,
                    has_predicate_only_cycle, validate, validate_alphabet, validate_graph,
                    validate_interpretation, vertex_degrees)
from .semantics import (ALGORITHMIC, COMPUTATIONAL, Run, State, astep, computed_relation,
                        cstep, divergence_reachable, enumerate_states, extract_inputs,
                        extract_output, extract_outputs, run_set, semi_runs)

__version__ = "0.1.0"

__all__ = [
    "ExpansionSpec",
    "classify_triviality",
    "expand_to_interactive",
    "is_expansion",
    "to_non_interactive",
    "verify_embedding",
    "EquivalenceWitness",
    "IsoWitness",
    "SimulationWitness",
    "check_equivalence",
    "check_hierarchy",
    "check_isomorphism",
    "greatest_simulation",
    "oracle_equivalence_exists",
    "oracle_simulation_exists",
    "validate_equivalence_witness",
    "validate_iso_witness",
    "validate_simulation_witness",
    "verify_simulation_consequences",
    "parse_definition",
    "parse_witness",
    "read_definition",
    "serialize_definition",
    "serialize_witness",
    "write_definition",
    "INTERACTIVE",
    "NON_INTERACTIVE",
    "AlgorithmGraph",
    "Alphabet",
    "Interpretation",
    "ProtoAlgorithm",
    "ValidationReport",
    "classify_determinism",
    "has_predicate_only_cycle",
    "validate",
    "validate_alphabet",
    "validate_graph",
    "validate_interpretation",
    "vertex_degrees",
    "ALGORITHMIC",
    "COMPUTATIONAL",
    "Run",
    "State",
    "astep",
    "computed_relation",
    "cstep",
    "divergence_reachable",
    "enumerate_states",
    "extract_inputs",
    "extract_output",
    "extract_outputs",
    "run_set",
    "semi_runs",
]
