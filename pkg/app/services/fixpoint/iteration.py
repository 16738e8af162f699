"""
Generic least-fixpoint iteration.

Iterates start, op(start), op(op(start)), ... until the value stabilizes
under the convergence policy. The ordering passed in is used to detect
non-ascending iterates, which indicate a non-monotone operator.
"""
import logging
from typing import Callable, TypeVar

from app.core.exceptions import NonMonotoneIterationError
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult, FixpointStatus

logger = logging.getLogger(__name__)

T = TypeVar("T")


def iterate(
    op: Callable[[T], T],
    start: T,
    policy: ConvergencePolicy,
    leq: Callable[[T, T], bool],
    name: str = "operator",
) -> FixpointResult:
    """
    Iterate a monotone operator from `start` until it stabilizes.

    Args:
        op: Operator, monotone for `leq`
        start: Start value, below the least fixpoint
        policy: Convergence policy
        leq: Order the iterates must ascend in
        name: Operator label for the trace and the logs

    Returns:
        FixpointResult; status iteration_budget_exhausted when
        max_iterations applications did not reach a fixpoint

    Raises:
        NonMonotoneIterationError: If an iterate is not above its predecessor
    """
    current = start
    trace = [start] if policy.trace else None
    steps = 0
    for _ in range(policy.max_iterations):
        following = op(current)
        if following == current:
            logger.debug("%s converged after %d steps", name, steps)
            return FixpointResult(current, FixpointStatus.CONVERGED, steps, name, trace)
        distance = current.distance(following)
        if not leq(current, following) and not policy.close_enough(distance):
            raise NonMonotoneIterationError(
                f"{name}: iterate {steps + 1} is not above iterate {steps}; "
                "the operator is not monotone on these inputs"
            )
        steps += 1
        logger.debug("%s step %d", name, steps)
        if trace is not None:
            trace.append(following)
        current = following
        if policy.close_enough(distance):
            logger.warning("%s stopped within epsilon after %d steps", name, steps)
            return FixpointResult(current, FixpointStatus.CONVERGED_WITHIN_EPSILON, steps, name, trace)

    logger.warning("%s exhausted its budget of %d iterations", name, policy.max_iterations)
    return FixpointResult(current, FixpointStatus.ITERATION_BUDGET_EXHAUSTED, steps, name, trace)


def lfp_monotone(
    op: Callable[[T], T],
    start: T,
    policy: ConvergencePolicy,
    name: str = "T_P",
) -> FixpointResult:
    """Least fixpoint of a <=-monotone operator on interpretations, iterated from `start` (normally bottom)."""
    return iterate(op, start, policy, lambda a, b: a.leq(b), name)
