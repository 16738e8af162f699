from typing import Mapping

from app.models.lattice import Atom, Interpretation, TruthValue, negate
from app.models.program import Agg, AtomRef, Conj, Const, Disj, Formula, NegAtom
from app.services.connectives.registry import ConnectiveRegistry, connective_registry


def evaluate(
    formula: Formula,
    positive: Mapping[Atom, TruthValue],
    negative: Mapping[Atom, TruthValue],
    registry: ConnectiveRegistry = connective_registry,
) -> TruthValue:
    """
    Evaluate a formula reading atoms from `positive` and negated atoms ~p
    as 1 - negative[p].

    With positive == negative this is ordinary evaluation under one
    interpretation; with (L, U) it is the pair evaluation of the approximator.
    """
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, AtomRef):
        return positive[formula.atom]
    if isinstance(formula, NegAtom):
        return negate(negative[formula.atom])
    if isinstance(formula, Conj):
        family = registry.family(formula.family)
        return family.conj(
            evaluate(formula.left, positive, negative, registry),
            evaluate(formula.right, positive, negative, registry),
        )
    if isinstance(formula, Disj):
        family = registry.family(formula.family)
        return family.disj(
            evaluate(formula.left, positive, negative, registry),
            evaluate(formula.right, positive, negative, registry),
        )
    if isinstance(formula, Agg):
        aggregator = registry.aggregator(formula.name)
        return aggregator([evaluate(arg, positive, negative, registry) for arg in formula.args])
    raise TypeError(f"not a formula: {formula!r}")


def eval_formula(interpretation: Interpretation, formula: Formula,
                 registry: ConnectiveRegistry = connective_registry) -> TruthValue:
    """
    Truth value of a formula under one interpretation.

    Raises:
        UnknownAtomError: If the formula mentions an atom outside the interpretation
    """
    return evaluate(formula, interpretation, interpretation, registry)


def eval_formula_pair(lower: Interpretation, upper: Interpretation, formula: Formula,
                      registry: ConnectiveRegistry = connective_registry) -> TruthValue:
    """
    Pair evaluation: positive atoms read `lower`, ~p reads 1 - upper(p).

    Defined on arbitrary pairs, consistent or not.
    """
    return evaluate(formula, lower, upper, registry)
