"""
Grid-based axiom checkers for connective families and aggregators.

Checks evaluate the axioms on finite samples. They are a registration gate
for user-defined connectives, not a proof: a family passing the 1/50 grid may
still violate an axiom between grid points.
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.models.lattice import ONE, ZERO, TruthValue
from app.services.connectives.families import Aggregator, ConnectiveFamily

Triple = Tuple[TruthValue, TruthValue, TruthValue]


@dataclass
class AxiomReport:
    """Outcome of a sampled axiom check."""
    subject: str
    passed: bool = True
    checked: int = 0
    law: Optional[str] = None
    counterexample: Optional[Tuple[TruthValue, ...]] = None
    laws: List[str] = field(default_factory=list)

    def fail(self, law: str, witness: Tuple[TruthValue, ...]) -> "AxiomReport":
        self.passed = False
        self.law = law
        self.counterexample = witness
        return self

    def describe(self) -> str:
        if self.passed:
            return f"{self.subject}: {self.checked} samples, all laws hold"
        values = ", ".join(str(v) for v in self.counterexample or ())
        return f"{self.subject}: violates '{self.law}' at ({values})"


def grid_values(resolution: int) -> List[Fraction]:
    """0, 1/n, ..., 1 for n = resolution."""
    if resolution < 1:
        raise ValueError("grid resolution must be a positive integer")
    return [Fraction(k, resolution) for k in range(resolution + 1)]


def grid_triples(resolution: int) -> Iterable[Triple]:
    values = grid_values(resolution)
    return itertools.product(values, repeat=3)


def check_adjoint(family: ConnectiveFamily, samples: Iterable[Triple]) -> AxiomReport:
    """
    Check x & y <= z  iff  y <= impl(z, x) on every sample triple.

    Returns:
        AxiomReport with the first counterexample, if any
    """
    report = AxiomReport(subject=f"family {family.id} adjointness")
    for x, y, z in samples:
        report.checked += 1
        if (family.conj(x, y) <= z) != (y <= family.impl(z, x)):
            return report.fail("x & y <= z iff y <= z <- x", (x, y, z))
    return report


def check_axioms(connective: Union[ConnectiveFamily, Aggregator], samples: Iterable[Triple]) -> AxiomReport:
    """
    Check conjunctor/disjunctor bounds and units and implicator
    (anti)monotonicity for a family, or argument-wise monotonicity for an
    aggregator.
    """
    if isinstance(connective, Aggregator):
        return _check_aggregator(connective, samples)

    family = connective
    report = AxiomReport(subject=f"family {family.id} axioms")
    conj, disj, impl = family.conj, family.disj, family.impl
    for x, y, z in samples:
        report.checked += 1
        xy = conj(x, y)
        if not (ZERO <= xy <= x and xy <= y):
            return report.fail("x & y <= x and x & y <= y", (x, y))
        if conj(x, ONE) != x or conj(ONE, x) != x:
            return report.fail("x & 1 = x = 1 & x", (x,))
        x_or_y = disj(x, y)
        if not (x <= x_or_y <= ONE and y <= x_or_y):
            return report.fail("x <= x | y and y <= x | y", (x, y))
        if disj(x, ZERO) != x or disj(ZERO, x) != x:
            return report.fail("x | 0 = x = 0 | x", (x,))
        if y <= z:
            if not (conj(x, y) <= conj(x, z) and conj(y, x) <= conj(z, x)):
                return report.fail("conjunctor monotone in each argument", (x, y, z))
            if not (disj(x, y) <= disj(x, z) and disj(y, x) <= disj(z, x)):
                return report.fail("disjunctor monotone in each argument", (x, y, z))
            if not impl(y, x) <= impl(z, x):
                return report.fail("implicator monotone in its first argument", (y, z, x))
            if not impl(x, z) <= impl(x, y):
                return report.fail("implicator antimonotone in its second argument", (x, y, z))
    return report


def _check_aggregator(aggregator: Aggregator, samples: Iterable[Triple]) -> AxiomReport:
    report = AxiomReport(subject=f"aggregator {aggregator.name} monotonicity")
    for x, y, z in samples:
        report.checked += 1
        if y > z:
            continue
        for args_low, args_high in _raised_argument_vectors(x, y, z, aggregator.min_arity):
            low, high = aggregator(args_low), aggregator(args_high)
            if not ZERO <= low <= ONE:
                return report.fail("aggregator stays in [0,1]", tuple(args_low))
            if low > high:
                return report.fail("aggregator monotone in each argument", tuple(args_low) + tuple(args_high))
    return report


def _raised_argument_vectors(x, y, z, min_arity: int) -> Iterable[Tuple[Sequence[TruthValue], Sequence[TruthValue]]]:
    # (…, y, …) against (…, z, …) with y <= z, in every position of arity 1..3
    for arity in range(max(1, min_arity), 4):
        for position in range(arity):
            low = [x] * arity
            high = [x] * arity
            low[position] = y
            high[position] = z
            yield low, high
