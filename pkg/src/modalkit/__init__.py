"""modalkit: decision procedures and countermodels for K, T, K4 and GL."""

from .axiomatic import (
    Derivation,
    Hypothesis,
    KAxiom,
    LOGICS,
    Logic,
    MP,
    RN,
    SchemaAxiom,
    Step,
    check_derivation,
    deduction_transform,
    get_logic,
    is_k_axiom,
    mlk_regression_suite,
    substitute_derivation,
)
from .canonical import (
    McsWorld,
    OracleUndetermined,
    SizeLimit,
    StandardModel,
    TheoremSignal,
    conjoin,
    consistent,
    lindenbaum_extend,
    oracle_verdict,
    standard_model,
)
from .errors import PreconditionViolated
from .formula import (
    And,
    Atom,
    Box,
    Diam,
    FALSE,
    Falsum,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    ParseError,
    TRUE,
    Verum,
    atoms,
    eliminate_diamonds,
    parse,
    pretty,
    size,
    subformulas,
    subsentences,
    substitute,
)
from .semantics import (
    FrameClass,
    FrameProperty,
    KripkeModel,
    UnknownWorld,
    bisimilar_agree,
    check_property,
    correspondence_check,
    fmp_bound,
    holds,
    in_class,
    is_bisimulation,
    maximal_bisimulation,
    model_from_json,
    model_to_json,
    valid_in_class_bounded,
    valid_in_model,
)
from .tableau import (
    Branch,
    NonTheorem,
    NotSaturated,
    ProofNode,
    SearchOutcome,
    Theorem,
    Undetermined,
    countermodel_dot,
    decide,
    extract_countermodel,
    proof_from_json,
    proof_to_json,
    replay_proof,
)

__version__ = "0.1.0"
