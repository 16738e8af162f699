"""
Cross-checks between the bilattice constructions and the
approximate-interpretation construction.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from app.models.approximate import ApproximateInterpretation
from app.models.lattice import Interpretation, InterpretationPair
from app.models.program import Program
from app.models.report import PropertyCheck
from app.services.approximate_wf.operators import ApproximateWellFoundedOperators, zeta, zeta_inverse
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.fixpoint.iteration import lfp_monotone
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult
from app.services.fixpoint.service import SemanticsService
from app.services.sampling import random_approximate, random_interpretation
from app.services.semantics.approximators import StandardApproximator
from app.services.semantics.operators import reduct, tp

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 100


@dataclass
class CrosscheckReport:
    """Outcome of comparing the two well-founded constructions on one program."""
    well_founded: Optional[FixpointResult] = None
    aw_model: Optional[FixpointResult] = None
    checks: List[PropertyCheck] = field(default_factory=list)
    aw_visits_stable_trace: bool = False

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def check_well_founded_agreement(wf: FixpointResult, aw: FixpointResult) -> PropertyCheck:
    check = PropertyCheck("zeta(AW model) == well-founded fixpoint", checked=1)
    if zeta(aw.value) != wf.value:
        check.fail(f"zeta(AW model) = {zeta(aw.value)!r}, well-founded = {wf.value!r}")
    return check


def check_consequence_agreement(operators: ApproximateWellFoundedOperators, approximator: StandardApproximator,
                                rng: random.Random, samples: int, mode) -> PropertyCheck:
    """zeta(T_P(X)) == A_P(zeta(X)) on random, possibly inconsistent, X."""
    check = PropertyCheck("zeta(T_P(X)) == A_P(zeta(X))")
    for _ in range(samples):
        approximate = random_approximate(operators.program.atoms, rng, mode=mode)
        check.checked += 1
        left = zeta(operators.tp(approximate))
        right = approximator.apply(zeta(approximate))
        if left != right:
            return check.fail(f"X = {approximate!r}: {left!r} vs {right!r}")
    return check


def check_closed_world_agreement(operators: ApproximateWellFoundedOperators, approximator: StandardApproximator,
                                 rng: random.Random, samples: int, policy: ConvergencePolicy,
                                 visited: Iterable[ApproximateInterpretation] = ()) -> PropertyCheck:
    """
    zeta(s_P(X)) == (bottom, lfp of snd A_P(L, .)) with (L, U) = zeta(X).

    The equality needs U above that least fixpoint, since X ⊕ Y caps the
    upper bounds at U. It is checked on random L with U = top and on the
    iterates of AW_P, which satisfy this.
    """
    check = PropertyCheck("zeta(s_P(X)) == (bottom, lfp snd A_P(L, .))")
    inner = policy.without_trace()
    atoms = operators.program.atoms
    top = Interpretation.top(atoms, policy.mode)
    sampled = [
        zeta_inverse(InterpretationPair(random_interpretation(atoms, rng, mode=policy.mode), top))
        for _ in range(samples)
    ]
    for approximate in itertools.chain(sampled, visited):
        lower = zeta(approximate).lower
        bottom = Interpretation.bottom(atoms, policy.mode)
        check.checked += 1
        closed = zeta(operators.closed_world(approximate, inner).require_converged().value)
        upper = lfp_monotone(lambda z: approximator.upper_bound(lower, z), bottom, inner).require_converged().value
        expected = InterpretationPair(bottom, upper)
        if closed != expected:
            return check.fail(f"X = {approximate!r}: {closed!r} vs {expected!r}")
    return check


def check_reduct_agreement(program: Program, approximator: StandardApproximator,
                           rng: random.Random, samples: int, mode) -> PropertyCheck:
    """fst A_P(J, I) == T_{P_I}(J) on random J, I."""
    check = PropertyCheck("fst A_P(J, I) == T_(P_I)(J)")
    for _ in range(samples):
        j = random_interpretation(program.atoms, rng, mode=mode)
        i = random_interpretation(program.atoms, rng, mode=mode)
        check.checked += 1
        left = approximator.lower_bound(j, i)
        right = tp(reduct(program, i), j, approximator.registry)
        if left != right:
            return check.fail(f"J = {j!r}, I = {i!r}: {left!r} vs {right!r}")
    return check


def crosscheck(program: Program, policy: ConvergencePolicy, samples: int = DEFAULT_SAMPLES, seed: int = 0,
               registry: ConnectiveRegistry = connective_registry) -> CrosscheckReport:
    """
    Compare the well-founded fixpoint of the stable approximator with the
    approximate well-founded model, and check the operator-level
    equivalences behind it on sampled inputs.

    Args:
        program: Program to check
        policy: Convergence policy (exact comparison needs exact mode)
        samples: Random inputs per sampled property
        seed: Seed for the sampled inputs

    Returns:
        CrosscheckReport; `passed` is True iff every check passed
    """
    rng = random.Random(seed)
    traced = policy.with_trace()
    service = SemanticsService(registry)
    operators = ApproximateWellFoundedOperators(program, registry)
    approximator = StandardApproximator(program, registry)

    report = CrosscheckReport()
    report.well_founded = service.well_founded(program, traced).require_converged()
    report.aw_model = operators.aw_model(traced).require_converged()
    report.checks.append(check_well_founded_agreement(report.well_founded, report.aw_model))
    report.checks.append(check_consequence_agreement(operators, approximator, rng, samples, policy.mode))
    report.checks.append(check_closed_world_agreement(
        operators, approximator, rng, samples, policy, report.aw_model.trace or ()
    ))
    report.checks.append(check_reduct_agreement(program, approximator, rng, samples, policy.mode))

    visited = {zeta(item) for item in report.aw_model.trace or []}
    report.aw_visits_stable_trace = all(pair in visited for pair in report.well_founded.trace or [])

    for check in report.checks:
        logger.info(check.describe())
    return report

