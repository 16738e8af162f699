from app.services.connectives.checks import AxiomReport, check_adjoint, check_axioms, grid_triples, grid_values
from app.services.connectives.families import (
    GOEDEL,
    LUKASIEWICZ,
    PRODUCT,
    Aggregator,
    ConnectiveFamily,
    builtin_families,
)
from app.services.connectives.registry import ConnectiveRegistry, connective_registry

__all__ = [
    "AxiomReport",
    "check_adjoint",
    "check_axioms",
    "grid_triples",
    "grid_values",
    "GOEDEL",
    "LUKASIEWICZ",
    "PRODUCT",
    "Aggregator",
    "ConnectiveFamily",
    "builtin_families",
    "ConnectiveRegistry",
    "connective_registry",
]
