"""Boundary-controlled irreversible port-Hamiltonian systems on 1D domains.

Declarative model definitions (structure matrices plus thermodynamic
closure), structure-aware finite differences, boundary-port construction,
fixed-step simulation, and per-step auditing of the energy and entropy
balance laws.
"""

from ._backend import BACKEND
from .brackets import (
    CoEnergy,
    DrivingForces,
    bracket_one,
    bracket_s,
    bracket_zero,
    co_energy,
    driving_forces,
)
from .discretization import (
    DiffOperator,
    PortBinding,
    RhsResult,
    apply_rhs,
    dense_operator,
    integrate,
    quadrature_weights,
    stack_co_energy,
)
from .errors import (
    BciphsError,
    DimensionMismatch,
    InadmissibleState,
    InvalidKinetics,
    InvalidParametrization,
    ParseError,
    SchemaError,
    SingularGram,
    SingularP1,
    StepRejected,
    TooLarge,
)
from .models import (
    MODEL_BUILDERS,
    ModelDefinition,
    build_model,
    diffusion_reaction_ab,
    heat_conduction,
    p_system_reversible,
    p_system_viscous,
)
from .ports import (
    BoundaryTrace,
    PortParametrization,
    assemble_Pe,
    boundary_trace,
    build_ports,
    default_xi,
    evaluate_ports,
    pairing_defect,
    random_xi,
    rank_factor,
    validate_bcphs,
    xi_report,
)
from .simulator import (
    AuditSummary,
    BalanceReport,
    BoundarySignal,
    RunResult,
    audit_energy,
    audit_entropy,
    run,
    step,
)
from .structure import (
    AdmissibleRegion,
    FieldState,
    Grid,
    StructureMatrices,
    ThermoClosure,
    ValidationReport,
    check_admissible,
    sample_states,
    validate_closure,
    validate_structure,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AdmissibleRegion",
    "AuditSummary",
    "BalanceReport",
    "BciphsError",
    "BoundarySignal",
    "BoundaryTrace",
    "CoEnergy",
    "DiffOperator",
    "DimensionMismatch",
    "DrivingForces",
    "FieldState",
    "Grid",
    "InadmissibleState",
    "InvalidKinetics",
    "InvalidParametrization",
    "MODEL_BUILDERS",
    "ModelDefinition",
    "ParseError",
    "PortBinding",
    "PortParametrization",
    "RhsResult",
    "RunResult",
    "SchemaError",
    "SingularGram",
    "SingularP1",
    "StepRejected",
    "StructureMatrices",
    "ThermoClosure",
    "TooLarge",
    "ValidationReport",
    "apply_rhs",
    "assemble_Pe",
    "audit_energy",
    "audit_entropy",
    "boundary_trace",
    "bracket_one",
    "bracket_s",
    "bracket_zero",
    "build_model",
    "build_ports",
    "check_admissible",
    "co_energy",
    "default_xi",
    "dense_operator",
    "diffusion_reaction_ab",
    "driving_forces",
    "evaluate_ports",
    "heat_conduction",
    "integrate",
    "p_system_reversible",
    "p_system_viscous",
    "pairing_defect",
    "quadrature_weights",
    "random_xi",
    "rank_factor",
    "run",
    "sample_states",
    "stack_co_energy",
    "step",
    "validate_bcphs",
    "validate_closure",
    "validate_structure",
    "xi_report",
]
