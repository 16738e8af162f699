from app.services.semantics.approximators import Approximator, StandardApproximator, approximator
from app.services.semantics.evaluation import eval_formula, eval_formula_pair, evaluate
from app.services.semantics.operators import is_model, reduct, satisfies, tp

__all__ = [
    "Approximator",
    "StandardApproximator",
    "approximator",
    "eval_formula",
    "eval_formula_pair",
    "evaluate",
    "is_model",
    "reduct",
    "satisfies",
    "tp",
]
