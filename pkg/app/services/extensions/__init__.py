from app.services.extensions.stratification import (
    Partition,
    ResidualApproximator,
    SplitResult,
    StratifiedSemantics,
    check_operator_stratifiable,
    is_stratifiable,
    restrict,
    restrict_and_transform,
    stratified_semantics,
    suggest_partition,
)
from app.services.extensions.ultimate import (
    UltimateApproximator,
    UltimateMethod,
    is_ultimate_stable_model,
    ultimate_approximator,
    ultimate_kripke_kleene,
    ultimate_well_founded,
)

__all__ = [
    "Partition",
    "ResidualApproximator",
    "SplitResult",
    "StratifiedSemantics",
    "check_operator_stratifiable",
    "is_stratifiable",
    "restrict",
    "restrict_and_transform",
    "stratified_semantics",
    "suggest_partition",
    "UltimateApproximator",
    "UltimateMethod",
    "is_ultimate_stable_model",
    "ultimate_approximator",
    "ultimate_kripke_kleene",
    "ultimate_well_founded",
]
