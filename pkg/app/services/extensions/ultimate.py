"""
Ultimate approximator: per atom, the infimum and supremum of T_P over the
box of interpretations between the two components of a pair.

Bodies are monotone in positively occurring atoms and antimonotone in
negated ones, so atoms occurring with a single polarity in a head's rules
are fixed at the box corner that minimizes (or maximizes) the head. Only
atoms occurring both ways have to be searched, either over a finite set
of breakpoint candidates (family G) or over a grid.
"""
import itertools
import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.core.config import get_grid_cap
from app.core.exceptions import EnumerationLimitError, UltimateMethodError
from app.models.lattice import (
    HALF,
    ArithmeticMode,
    Atom,
    Interpretation,
    InterpretationPair,
    TruthValue,
    negate,
    to_truth_value,
    zero_like,
)
from app.models.program import Polarity, Program, Rule, formula_connectives
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult
from app.services.fixpoint.service import SemanticsService
from app.services.semantics.approximators import Annotations, Approximator
from app.services.semantics.evaluation import evaluate
from app.services.syntax.analysis import head_polarities

logger = logging.getLogger(__name__)

CANDIDATE_AGGREGATORS = frozenset({"min", "max"})


class UltimateMethod(str, Enum):
    EXACT_PER_HEAD = "exact_per_head"
    GRID = "grid"


class UltimateApproximator(Approximator):
    """
    Most precise approximator of T_P.

    With `exact_per_head`, heads whose body atoms have a single polarity get
    the corner values (annotation "corner"); heads with mixed-polarity atoms
    are searched over breakpoint candidates (annotation "candidates"), which
    requires family G connectives and min/max aggregators. With `grid`, every
    atom that is not pinned to a corner is searched over the grid of step
    1/resolution plus the interval endpoints (annotation "grid").

    Inconsistent pairs: single-polarity atoms keep the corner reading;
    mixed-polarity atoms range over [min(L(p), U(p)), max(L(p), U(p))].
    """

    def __init__(self, program: Program, method: UltimateMethod = UltimateMethod.EXACT_PER_HEAD,
                 resolution: Optional[int] = None, registry: ConnectiveRegistry = connective_registry,
                 grid_cap: Optional[int] = None):
        super().__init__(program, registry)
        self.method = UltimateMethod(method)
        if self.method is UltimateMethod.GRID and (resolution is None or resolution < 1):
            raise ValueError("the grid method needs a resolution 1/n with n >= 1")
        self.resolution = resolution
        self.grid_cap = grid_cap or get_grid_cap()
        self._rules = program.rules_by_head()
        self._polarities = {head: head_polarities(program, head) for head in program.atoms}
        self._mixed = {
            head: sorted(atom for atom, polarity in found.items() if polarity is Polarity.BOTH)
            for head, found in self._polarities.items()
        }
        constants = program.constants()
        self._constants = constants | {negate(value) for value in constants}
        if self.method is UltimateMethod.EXACT_PER_HEAD:
            self._check_candidate_method()

    def _check_candidate_method(self) -> None:
        for head, mixed in self._mixed.items():
            if not mixed:
                continue
            if not self._goedel_only(self._rules[head]):
                raise UltimateMethodError(
                    f"atom {head!r} has rules with mixed-polarity atoms {mixed} outside family G; "
                    "use --method grid"
                )
            if len(mixed) > 1:
                logger.warning(
                    "Ultimate bounds for %s search %d mixed-polarity atoms over candidates; "
                    "exactness is only established for one", head, len(mixed),
                )

    def _goedel_only(self, rules: Sequence[Rule]) -> bool:
        for rule in rules:
            families, aggregators = formula_connectives(rule.body)
            families.add(rule.family)
            if {self.registry.canonical_family_id(family) for family in families} != {"G"}:
                return False
            if not aggregators <= CANDIDATE_AGGREGATORS:
                return False
        return True

    @property
    def name(self) -> str:
        return "A_P^ult"

    def apply(self, pair: InterpretationPair) -> InterpretationPair:
        return self.apply_annotated(pair)[0]

    def apply_annotated(self, pair: InterpretationPair) -> Tuple[InterpretationPair, Annotations]:
        self._check(pair)
        lower: Dict[Atom, TruthValue] = {}
        upper: Dict[Atom, TruthValue] = {}
        methods: Annotations = {}
        for head in self.program.atoms:
            lower[head], upper[head], methods[head] = self._bounds(head, pair)
        return InterpretationPair(Interpretation._trusted(lower), Interpretation._trusted(upper)), methods

    def _head_value(self, rules: Sequence[Rule], positive: Dict[Atom, TruthValue],
                    negative: Dict[Atom, TruthValue], zero: TruthValue) -> TruthValue:
        best = zero
        for rule in rules:
            family = self.registry.family(rule.family)
            value = family.conj(rule.weight, evaluate(rule.body, positive, negative, self.registry))
            if value > best:
                best = value
        return best

    def _bounds(self, head: Atom, pair: InterpretationPair) -> Tuple[TruthValue, TruthValue, str]:
        rules = self._rules[head]
        zero = zero_like(pair.lower[head])
        if not rules:
            return zero, zero, "corner"

        if self.method is UltimateMethod.GRID:
            searched = [
                atom for atom, polarity in self._polarities[head].items()
                if polarity is Polarity.BOTH or pair.lower[atom] <= pair.upper[atom]
            ]
            candidates = {atom: self._grid_candidates(pair, atom) for atom in searched}
            method = "grid"
        elif self._mixed[head]:
            candidates = {atom: self._breakpoint_candidates(pair, atom) for atom in self._mixed[head]}
            method = "candidates"
        else:
            candidates = {}
            method = "corner"

        # corners: positive atoms read L for the infimum, U for the supremum; ~p the other way round
        inf_positive, inf_negative = dict(pair.lower), dict(pair.upper)
        sup_positive, sup_negative = dict(pair.upper), dict(pair.lower)
        if not candidates:
            return (
                self._head_value(rules, inf_positive, inf_negative, zero),
                self._head_value(rules, sup_positive, sup_negative, zero),
                method,
            )

        atoms = sorted(candidates)
        size = 1
        for atom in atoms:
            size *= len(candidates[atom])
        if size > self.grid_cap:
            raise EnumerationLimitError(
                f"ultimate bounds for {head!r} need {size} evaluations, above the cap of {self.grid_cap} "
                "(FLP_GRID_CAP); use a coarser grid"
            )

        infimum: Optional[TruthValue] = None
        supremum: Optional[TruthValue] = None
        for values in itertools.product(*(candidates[atom] for atom in atoms)):
            point = dict(zip(atoms, values))
            inf_positive.update(point)
            inf_negative.update(point)
            sup_positive.update(point)
            sup_negative.update(point)
            low = self._head_value(rules, inf_positive, inf_negative, zero)
            high = self._head_value(rules, sup_positive, sup_negative, zero)
            if infimum is None or low < infimum:
                infimum = low
            if supremum is None or high > supremum:
                supremum = high
        return infimum, supremum, method

    @staticmethod
    def _hull(pair: InterpretationPair, atom: Atom) -> Tuple[TruthValue, TruthValue]:
        a, b = pair.interval(atom)
        return (a, b) if a <= b else (b, a)

    def _breakpoint_candidates(self, pair: InterpretationPair, atom: Atom) -> List[TruthValue]:
        low, high = self._hull(pair, atom)
        sample = pair.lower[atom]
        found: Set[TruthValue] = {low, high, self._convert(HALF, sample)}
        found |= {self._convert(value, sample) for value in self._constants}
        for other in pair.atoms:
            for value in pair.interval(other):
                found.add(value)
                found.add(negate(value))
        return sorted(value for value in found if low <= value <= high)

    def _grid_candidates(self, pair: InterpretationPair, atom: Atom) -> List[TruthValue]:
        low, high = self._hull(pair, atom)
        sample = pair.lower[atom]
        points = {self._convert(Fraction(k, self.resolution), sample) for k in range(self.resolution + 1)}
        return sorted({low, high} | {value for value in points if low <= value <= high})

    @staticmethod
    def _convert(value: TruthValue, sample: TruthValue) -> TruthValue:
        mode = ArithmeticMode.APPROXIMATE if isinstance(sample, float) else ArithmeticMode.EXACT
        return to_truth_value(value, mode)


def _approximator(program: Program, method, resolution: Optional[int],
                  registry: ConnectiveRegistry) -> UltimateApproximator:
    return UltimateApproximator(program, method, resolution, registry)


def _annotate(result: FixpointResult, approx: UltimateApproximator) -> FixpointResult:
    result.methods = approx.apply_annotated(result.value)[1]
    return result


def ultimate_approximator(program: Program, pair: InterpretationPair,
                          method: UltimateMethod = UltimateMethod.EXACT_PER_HEAD, resolution: Optional[int] = None,
                          registry: ConnectiveRegistry = connective_registry) -> InterpretationPair:
    """
    Raises:
        UltimateMethodError: If exact_per_head meets mixed polarity outside family G
        EnumerationLimitError: If a head needs more evaluations than FLP_GRID_CAP
    """
    return _approximator(program, method, resolution, registry).apply(pair)


def ultimate_kripke_kleene(program: Program, policy: ConvergencePolicy,
                           method: UltimateMethod = UltimateMethod.EXACT_PER_HEAD, resolution: Optional[int] = None,
                           registry: ConnectiveRegistry = connective_registry) -> FixpointResult:
    """<=p-least fixpoint of the ultimate approximator, with per-atom method annotations."""
    approx = _approximator(program, method, resolution, registry)
    return _annotate(SemanticsService(registry).kripke_kleene(program, policy, approx), approx)


def ultimate_well_founded(program: Program, policy: ConvergencePolicy,
                          method: UltimateMethod = UltimateMethod.EXACT_PER_HEAD, resolution: Optional[int] = None,
                          registry: ConnectiveRegistry = connective_registry) -> FixpointResult:
    """Well-founded fixpoint of the ultimate approximator, with per-atom method annotations."""
    approx = _approximator(program, method, resolution, registry)
    return _annotate(SemanticsService(registry).well_founded(program, policy, approx), approx)


def is_ultimate_stable_model(program: Program, interpretation: Interpretation, policy: ConvergencePolicy,
                             method: UltimateMethod = UltimateMethod.EXACT_PER_HEAD,
                             resolution: Optional[int] = None,
                             registry: ConnectiveRegistry = connective_registry) -> bool:
    """True iff (I, I) is a fixpoint of the stable approximator built on the ultimate approximator."""
    approx = _approximator(program, method, resolution, registry)
    return SemanticsService(registry).is_partial_stable(
        program, InterpretationPair.exact(interpretation), policy, approx
    )
