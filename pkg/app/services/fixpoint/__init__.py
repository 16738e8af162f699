from app.services.fixpoint.iteration import iterate, lfp_monotone
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult, FixpointStatus
from app.services.fixpoint.service import SemanticsService, grid_points, semantics_service

__all__ = [
    "iterate",
    "lfp_monotone",
    "ConvergencePolicy",
    "FixpointResult",
    "FixpointStatus",
    "SemanticsService",
    "grid_points",
    "semantics_service",
]
