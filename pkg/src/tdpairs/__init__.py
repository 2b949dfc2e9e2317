"""Exact verification toolkit for tridiagonal pairs of q-geometric type and their U_q(sl2-hat) modules."""

from .instances import (
    AntiautResult,
    Instance,
    ModuleSpec,
    evaluation_module,
    find_antiautomorphism,
    instance_from_spec,
    scan_irreducibility,
    tdpair_from_module,
    tensor_module,
)
from .linalg import Decomposition, FieldConfig, Matrix, Subspace
from .pair import PairReport, ShapeVector, TridiagonalPair, verify_tridiagonal_pair
from .qgeom import OperatorQuartet, build_quartet
from .report import Check, Falsification, RelationReport
from .suite import Perturbation, SuiteReport, run_suite
from .uq import (
    AlternateOctet,
    ChevalleyOctet,
    WeightData,
    alternate_from_chevalley,
    assemble_module_structure,
    check_alternate_relations,
    check_chevalley_relations,
    chevalley_from_alternate,
    uniqueness_smoke_test,
    weight_decomposition,
)

__all__ = [
    "AlternateOctet", "AntiautResult", "Check", "ChevalleyOctet", "Decomposition", "Falsification",
    "FieldConfig", "Instance", "Matrix", "ModuleSpec", "OperatorQuartet", "PairReport", "Perturbation",
    "RelationReport", "ShapeVector", "Subspace", "SuiteReport", "TridiagonalPair", "WeightData",
    "alternate_from_chevalley", "assemble_module_structure", "build_quartet", "check_alternate_relations",
    "check_chevalley_relations", "chevalley_from_alternate", "evaluation_module", "find_antiautomorphism",
    "instance_from_spec", "run_suite", "scan_irreducibility", "tdpair_from_module", "tensor_module",
    "uniqueness_smoke_test", "verify_tridiagonal_pair", "weight_decomposition",
]
