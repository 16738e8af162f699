from app.services.approximate_wf.crosscheck import CrosscheckReport, crosscheck
from app.services.approximate_wf.operators import (
    ApproximateWellFoundedOperators,
    aw,
    aw_model,
    aw_trace,
    s_p,
    tp_ls,
    zeta,
    zeta_inverse,
)

__all__ = [
    "CrosscheckReport",
    "crosscheck",
    "ApproximateWellFoundedOperators",
    "aw",
    "aw_model",
    "aw_trace",
    "s_p",
    "tp_ls",
    "zeta",
    "zeta_inverse",
]
