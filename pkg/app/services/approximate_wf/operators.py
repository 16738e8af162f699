"""
The approximate-interpretation construction of the well-founded semantics.

Programs are first normalized to one rule per atom. Connectives are lifted
to bound pairs component-wise, and negation maps (l, u) to (1 - u, 1 - l).
The closed-world operator s_P and the operator AW_P = T_P ⊕ s_P are built
on top; the least fixpoint of AW_P is the approximate well-founded model.
"""
import logging
from typing import Dict, List, Tuple

from app.models.approximate import ApproximateInterpretation, Bounds
from app.models.lattice import Atom, Interpretation, InterpretationPair, negate
from app.models.program import Agg, AtomRef, Conj, Const, Disj, Formula, NegAtom, Program
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.fixpoint.iteration import iterate
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult, FixpointStatus
from app.services.syntax.analysis import join_rules_per_atom

logger = logging.getLogger(__name__)

AW_OPERATOR = "AW_P"


def zeta(approximate: ApproximateInterpretation) -> InterpretationPair:
    """The pair (L, U) with X(p) = (L(p), U(p))."""
    lower = Interpretation._trusted({atom: bounds[0] for atom, bounds in approximate.items()})
    upper = Interpretation._trusted({atom: bounds[1] for atom, bounds in approximate.items()})
    return InterpretationPair(lower, upper)


def zeta_inverse(pair: InterpretationPair) -> ApproximateInterpretation:
    return ApproximateInterpretation._trusted(
        {atom: (pair.lower[atom], pair.upper[atom]) for atom in pair.atoms}
    )


def is_normalized(program: Program) -> bool:
    """Exactly one rule per signature atom."""
    heads = [rule.head for rule in program.rules]
    return len(heads) == len(set(heads)) == len(program.signature)


class ApproximateWellFoundedOperators:
    """Operators of the approximate-interpretation construction for one program."""

    def __init__(self, program: Program, registry: ConnectiveRegistry = connective_registry):
        self.program = program if is_normalized(program) else join_rules_per_atom(program)
        self.registry = registry
        self._rules = {rule.head: rule for rule in self.program.rules}

    def evaluate(self, formula: Formula, approximate: ApproximateInterpretation) -> Bounds:
        if isinstance(formula, Const):
            return formula.value, formula.value
        if isinstance(formula, AtomRef):
            return approximate[formula.atom]
        if isinstance(formula, NegAtom):
            lower, upper = approximate[formula.atom]
            return negate(upper), negate(lower)
        if isinstance(formula, (Conj, Disj)):
            family = self.registry.family(formula.family)
            function = family.conj if isinstance(formula, Conj) else family.disj
            left = self.evaluate(formula.left, approximate)
            right = self.evaluate(formula.right, approximate)
            return function(left[0], right[0]), function(left[1], right[1])
        if isinstance(formula, Agg):
            aggregator = self.registry.aggregator(formula.name)
            args = [self.evaluate(arg, approximate) for arg in formula.args]
            return aggregator([arg[0] for arg in args]), aggregator([arg[1] for arg in args])
        raise TypeError(f"not a formula: {formula!r}")

    def tp(self, approximate: ApproximateInterpretation) -> ApproximateInterpretation:
        values: Dict[Atom, Bounds] = {}
        for atom in approximate.atoms:
            rule = self._rules[atom]
            family = self.registry.family(rule.family)
            lower, upper = self.evaluate(rule.body, approximate)
            values[atom] = (family.conj(rule.weight, lower), family.conj(rule.weight, upper))
        return ApproximateInterpretation._trusted(values)

    def closed_world(self, approximate: ApproximateInterpretation, policy: ConvergencePolicy) -> FixpointResult:
        """<=t-least fixpoint of Y -> X_f ⊗ T_P(X ⊕ Y), iterated from X_f."""
        false = ApproximateInterpretation.false(approximate.atoms, policy.mode)
        return iterate(
            lambda y: false.meet_precision(self.tp(approximate.join_precision(y))),
            false,
            policy.without_trace(),
            lambda a, b: a.leq_truth(b),
            "s_P",
        )

    def aw(self, approximate: ApproximateInterpretation, policy: ConvergencePolicy) -> ApproximateInterpretation:
        return self._aw_step(approximate, policy)[0]

    def _aw_step(self, approximate: ApproximateInterpretation,
                 policy: ConvergencePolicy) -> Tuple[ApproximateInterpretation, FixpointStatus]:
        closed = self.closed_world(approximate, policy).require_converged()
        return self.tp(approximate).join_precision(closed.value), closed.status

    def aw_model(self, policy: ConvergencePolicy) -> FixpointResult:
        """Least fixpoint of AW_P from the unknown interpretation; within epsilon if any s_P step was."""
        start = ApproximateInterpretation.unknown(self.program.atoms, policy.mode)
        inner_statuses = set()

        def step(approximate: ApproximateInterpretation) -> ApproximateInterpretation:
            value, status = self._aw_step(approximate, policy)
            inner_statuses.add(status)
            return value

        result = iterate(step, start, policy, lambda a, b: a.leq_precision(b), AW_OPERATOR)
        if result.status is FixpointStatus.CONVERGED and FixpointStatus.CONVERGED_WITHIN_EPSILON in inner_statuses:
            result.status = FixpointStatus.CONVERGED_WITHIN_EPSILON
        logger.info("Approximate well-founded model: %s after %d steps", result.status.value, result.steps)
        return result


def tp_ls(program: Program, approximate: ApproximateInterpretation,
          registry: ConnectiveRegistry = connective_registry) -> ApproximateInterpretation:
    """Consequence operator on approximate interpretations (program normalized first)."""
    return ApproximateWellFoundedOperators(program, registry).tp(approximate)


def s_p(program: Program, approximate: ApproximateInterpretation, policy: ConvergencePolicy,
        registry: ConnectiveRegistry = connective_registry) -> ApproximateInterpretation:
    """
    Closed-world operator.

    Raises:
        IterationBudgetExhausted: If the inner fixpoint does not converge
    """
    return ApproximateWellFoundedOperators(program, registry).closed_world(approximate, policy).require_converged().value


def aw(program: Program, approximate: ApproximateInterpretation, policy: ConvergencePolicy,
       registry: ConnectiveRegistry = connective_registry) -> ApproximateInterpretation:
    """AW_P(X) = T_P(X) ⊕ s_P(X)."""
    return ApproximateWellFoundedOperators(program, registry).aw(approximate, policy)


def aw_model(program: Program, policy: ConvergencePolicy,
             registry: ConnectiveRegistry = connective_registry) -> FixpointResult:
    """<=p-least fixpoint of AW_P, iterated from X_bottom."""
    return ApproximateWellFoundedOperators(program, registry).aw_model(policy)


def aw_trace(program: Program, policy: ConvergencePolicy,
             registry: ConnectiveRegistry = connective_registry) -> List[ApproximateInterpretation]:
    """Every approximate interpretation visited on the way to the AW model."""
    result = aw_model(program, policy.with_trace(), registry)
    return list(result.trace or [])
