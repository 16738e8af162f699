"""
Immediate consequence operator, model checking and the reduct.
"""
import logging
from typing import Dict, Mapping

from app.core.exceptions import InternalConsistencyError, SignatureMismatchError
from app.models.lattice import ZERO, Atom, Interpretation, TruthValue, zero_like
from app.models.program import Program, Rule, substitute_atoms
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.semantics.evaluation import eval_formula, evaluate

logger = logging.getLogger(__name__)


def check_signature(program: Program, interpretation: Interpretation) -> None:
    if interpretation.signature != program.signature:
        raise SignatureMismatchError(
            f"interpretation over {sorted(interpretation.signature)} "
            f"does not match program signature {sorted(program.signature)}"
        )


def consequence(
    program: Program,
    positive: Mapping[Atom, TruthValue],
    negative: Mapping[Atom, TruthValue],
    registry: ConnectiveRegistry = connective_registry,
) -> Interpretation:
    """
    Per head, the maximum over its rules of weight /\\_i body value, with
    bodies evaluated by `evaluate(body, positive, negative)`. Heads without
    rules get 0.
    """
    sample = next(iter(positive.values()), ZERO)
    zero = zero_like(sample)
    values: Dict[Atom, TruthValue] = {}
    for atom, rules in program.rules_by_head().items():
        best = zero
        for rule in rules:
            family = registry.family(rule.family)
            value = family.conj(rule.weight, evaluate(rule.body, positive, negative, registry))
            if value > best:
                best = value
        values[atom] = best
    return Interpretation._trusted(values)


def tp(program: Program, interpretation: Interpretation,
       registry: ConnectiveRegistry = connective_registry) -> Interpretation:
    """
    Immediate consequence operator T_P.

    Args:
        program: Program whose signature matches the interpretation
        interpretation: Current interpretation I

    Returns:
        T_P(I): for each atom, the best rule conclusion (0 without rules)

    Raises:
        SignatureMismatchError: If I is not over the program signature
    """
    check_signature(program, interpretation)
    return consequence(program, interpretation, interpretation, registry)


def satisfies(program: Program, interpretation: Interpretation, rule: Rule,
              registry: ConnectiveRegistry = connective_registry) -> bool:
    """Rule satisfaction: weight <= impl(I(head), I(body))."""
    family = registry.family(rule.family)
    body_value = eval_formula(interpretation, rule.body, registry)
    return rule.weight <= family.impl(interpretation[rule.head], body_value)


def is_model(program: Program, interpretation: Interpretation,
             registry: ConnectiveRegistry = connective_registry) -> bool:
    """
    I is a model iff T_P(I) <= I.

    In exact arithmetic the answer is cross-checked against rule-by-rule
    satisfaction; the two agree for adjoint pairs.

    Raises:
        InternalConsistencyError: If the two characterizations disagree
    """
    by_operator = tp(program, interpretation, registry).leq(interpretation)
    exact = not any(isinstance(value, float) for value in interpretation.values())
    if exact:
        by_rules = all(satisfies(program, interpretation, rule, registry) for rule in program.rules)
        if by_rules != by_operator:
            raise InternalConsistencyError(
                f"model check disagrees for {interpretation!r}: T_P(I) <= I is {by_operator}, "
                f"rule satisfaction is {by_rules}; check the adjointness of the families in use"
            )
    return by_operator


def reduct(program: Program, interpretation: Interpretation) -> Program:
    """
    Positive program P_I: every negated occurrence ~p becomes the constant 1 - I(p).

    Positive occurrences, heads, weights and families are unchanged.
    """
    check_signature(program, interpretation)
    negative = dict(interpretation)
    rules = tuple(
        Rule(rule.head, substitute_atoms(rule.body, negative=negative), rule.weight, rule.family)
        for rule in program.rules
    )
    return Program(rules, program.signature)
