"""
Stratification of programs over a partition of their atoms.

A program is stratifiable over (S_1, ..., S_k) when every dependency
q -> p goes from a stratum to the same or a later one. The well-founded
fixpoint and stable models can then be computed stratum by stratum: the
lower strata are solved first, and their result is substituted into the
rules of the upper strata as constants. When the lower result is not
exact, the lower bound of an upper stratum reads the solved atoms at their
pessimistic value and the upper bound at their optimistic one.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from app.core.exceptions import InternalConsistencyError, PartitionError
from app.models.lattice import Atom, Interpretation, InterpretationPair
from app.models.program import Program, Rule, substitute_atoms
from app.models.report import PropertyCheck
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult
from app.services.fixpoint.service import SemanticsService
from app.services.sampling import random_pair
from app.services.semantics.approximators import Approximator, StandardApproximator
from app.services.semantics.operators import consequence
from app.services.syntax.analysis import dependency_graph, depends

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1000


@dataclass(frozen=True)
class Partition:
    """Ordered, pairwise disjoint strata of atoms. Strata may be empty."""
    strata: Tuple[FrozenSet[Atom], ...]

    def __post_init__(self):
        seen = set()
        for stratum in self.strata:
            shared = seen & stratum
            if shared:
                raise PartitionError(f"strata are not disjoint: {sorted(shared)} occur twice")
            seen |= stratum

    @classmethod
    def of(cls, *strata: Iterable[Atom]) -> "Partition":
        return cls(tuple(frozenset(stratum) for stratum in strata))

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """
        Parse "a,b|c,d" into the strata {a, b} and {c, d}.

        Raises:
            PartitionError: If an atom is listed twice
        """
        strata = []
        for chunk in text.split("|"):
            atoms = [atom.strip() for atom in chunk.split(",") if atom.strip()]
            if len(atoms) != len(set(atoms)):
                raise PartitionError(f"stratum {chunk.strip()!r} lists an atom twice")
            strata.append(frozenset(atoms))
        return cls(tuple(strata))

    def __str__(self) -> str:
        return "|".join(",".join(sorted(stratum)) for stratum in self.strata)

    @property
    def atoms(self) -> FrozenSet[Atom]:
        return frozenset().union(*self.strata)

    def stratum_of(self, atom: Atom) -> int:
        for index, stratum in enumerate(self.strata):
            if atom in stratum:
                return index
        raise PartitionError(f"atom {atom!r} is in no stratum of {self}")

    def validate(self, program: Program) -> None:
        """
        Raises:
            PartitionError: If the strata do not cover exactly the program's signature
        """
        missing = program.signature - self.atoms
        extra = self.atoms - program.signature
        if missing or extra:
            problems = []
            if missing:
                problems.append(f"missing {sorted(missing)}")
            if extra:
                problems.append(f"not in the signature {sorted(extra)}")
            raise PartitionError(f"partition {self} does not cover the program: " + "; ".join(problems))

    def split(self) -> Tuple[FrozenSet[Atom], "Partition"]:
        """First stratum and the partition of the remaining strata."""
        if not self.strata:
            raise PartitionError("empty partition")
        return self.strata[0], Partition(self.strata[1:])


def is_stratifiable(program: Program, partition: Partition) -> bool:
    """
    True iff q -> p, q in S_i and p in S_j imply i <= j.

    Raises:
        PartitionError: If the partition does not cover the signature
    """
    partition.validate(program)
    for q, p in depends(program):
        if partition.stratum_of(q) > partition.stratum_of(p):
            logger.debug("%s depends on %s from a later stratum", p, q)
            return False
    return True


def require_stratifiable(program: Program, partition: Partition) -> None:
    if not is_stratifiable(program, partition):
        raise PartitionError(f"program is not stratifiable over {partition}")


def check_operator_stratifiable(program: Program, partition: Partition, samples: int = DEFAULT_SAMPLES,
                                seed: int = 0, registry: ConnectiveRegistry = connective_registry) -> PropertyCheck:
    """
    Sample pairs agreeing on a union of lower strata and check that the
    approximator's outputs agree there too, for every cut of the partition.

    Returns:
        PropertyCheck with the first disagreeing pair as witness
    """
    partition.validate(program)
    check = PropertyCheck(f"A_P stratifiable over {partition}")
    rng = random.Random(seed)
    approximator = StandardApproximator(program, registry)
    atoms = program.atoms
    cuts = [frozenset().union(*partition.strata[:k]) for k in range(1, len(partition.strata))]
    for _ in range(samples):
        first = random_pair(atoms, rng)
        other = random_pair(atoms, rng)
        check.checked += 1
        for lower in cuts:
            upper = program.signature - lower
            second = first.restrict(lower).merge(other.restrict(upper))
            left = approximator.apply(first).restrict(lower)
            right = approximator.apply(second).restrict(lower)
            if left != right:
                return check.fail(f"{first!r} and {second!r} agree on {sorted(lower)} but map to {left!r} vs {right!r}")
    return check


def restrict(program: Program, atoms: Iterable[Atom]) -> Program:
    """Rules whose head is in `atoms`, over the signature `atoms`."""
    atoms = frozenset(atoms)
    return Program(tuple(rule for rule in program.rules if rule.head in atoms), atoms)


def transform(program: Program, lower: InterpretationPair, optimistic: bool = False) -> Program:
    """
    Rules for the atoms outside `lower`'s signature, with every positive
    occurrence of a solved atom p replaced by its lower bound and every ~p
    by 1 - its upper bound. With `optimistic`, p reads its upper bound and
    ~p reads 1 - its lower bound.
    """
    solved = lower.signature
    reading = lower.swapped() if optimistic else lower
    positive = dict(reading.lower)
    negative = dict(reading.upper)
    rules = tuple(
        Rule(rule.head, substitute_atoms(rule.body, positive, negative), rule.weight, rule.family)
        for rule in program.rules
        if rule.head not in solved
    )
    return Program(rules, program.signature - solved)


def restrict_and_transform(program: Program, partition: Partition, lower: InterpretationPair,
                           optimistic: bool = False) -> Program:
    """
    Residual program over the strata above `lower`.

    Args:
        program: Program stratifiable over the partition
        partition: Partition of the program's signature
        lower: Pair over the union of the first strata
        optimistic: Read solved atoms at the bounds that maximize the bodies

    Raises:
        PartitionError: If the program is not stratifiable or `lower` does
            not range over a union of leading strata
    """
    require_stratifiable(program, partition)
    prefixes = [frozenset().union(*partition.strata[:k]) for k in range(len(partition.strata) + 1)]
    if lower.signature not in prefixes:
        raise PartitionError(f"{sorted(lower.signature)} is not a union of leading strata of {partition}")
    return transform(program, lower, optimistic)


class ResidualApproximator(Approximator):
    """
    A_P on one stratum, with the lower strata fixed to a solved pair.

    Equal to the standard approximator of the whole program restricted to
    the stratum: the lower bound reads solved atoms through the pessimistic
    residual program and the upper bound through the optimistic one.
    """

    def __init__(self, program: Program, solved: InterpretationPair, stratum: Iterable[Atom],
                 registry: ConnectiveRegistry = connective_registry):
        stratum = frozenset(stratum)
        self.pessimistic = restrict(transform(program, solved), stratum)
        self.optimistic = restrict(transform(program, solved, optimistic=True), stratum)
        super().__init__(self.pessimistic, registry)

    @property
    def name(self) -> str:
        return "A_P"

    def lower_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return consequence(self.pessimistic, lower, upper, self.registry)

    def upper_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return consequence(self.optimistic, upper, lower, self.registry)

    def apply(self, pair: InterpretationPair) -> InterpretationPair:
        self._check(pair)
        return InterpretationPair(
            self.lower_bound(pair.lower, pair.upper),
            self.upper_bound(pair.lower, pair.upper),
        )


@dataclass
class SplitResult:
    """Glued split fixpoint, the per-stratum results and the monolithic one it was checked against."""
    value: InterpretationPair
    strata: List[FixpointResult] = field(default_factory=list)
    monolithic: Optional[FixpointResult] = None

    @property
    def steps(self) -> int:
        return sum(result.steps for result in self.strata)


class StratifiedSemantics:
    """Stratum-by-stratum evaluation, checked against the monolithic computation."""

    def __init__(self, registry: ConnectiveRegistry = connective_registry):
        self.registry = registry
        self.service = SemanticsService(registry)

    def _fold_well_founded(self, program: Program, partition: Partition,
                           policy: ConvergencePolicy) -> Tuple[InterpretationPair, List[FixpointResult]]:
        empty = Interpretation({})
        solved = InterpretationPair(empty, empty)
        results: List[FixpointResult] = []
        for stratum in partition.strata:
            approx = ResidualApproximator(program, solved, stratum, self.registry)
            result = self.service.well_founded(approx.program, policy, approx).require_converged()
            logger.debug("Stratum %s: %r", sorted(stratum), result.value)
            results.append(result)
            solved = solved.merge(result.value)
        return solved, results

    def split_well_founded(self, program: Program, partition: Partition,
                           policy: ConvergencePolicy) -> SplitResult:
        """
        Well-founded fixpoint computed stratum by stratum.

        Raises:
            PartitionError: If the program is not stratifiable over the partition
            InternalConsistencyError: If the glued result differs from the monolithic one
        """
        require_stratifiable(program, partition)
        value, results = self._fold_well_founded(program, partition, policy)
        monolithic = self.service.well_founded(program, policy).require_converged()
        if not policy.same(value, monolithic.value):
            raise InternalConsistencyError(
                f"split well-founded fixpoint {value!r} differs from the monolithic {monolithic.value!r}"
            )
        logger.info("Split well-founded fixpoint over %s agrees with the monolithic one", partition)
        return SplitResult(value, results, monolithic)

    def _fold_stable(self, program: Program, partition: Partition, interpretation: Interpretation,
                     policy: ConvergencePolicy) -> bool:
        stratum, rest = partition.split()
        below = interpretation.restrict(stratum)
        if not self.service.is_stable_model(restrict(program, stratum), below, policy):
            return False
        if not rest.strata:
            return True
        residual = transform(program, InterpretationPair.exact(below))
        return self._fold_stable(residual, rest, interpretation.restrict(residual.signature), policy)

    def split_stable_check(self, program: Program, partition: Partition, interpretation: Interpretation,
                           policy: ConvergencePolicy) -> bool:
        """
        Decide stability stratum by stratum.

        Raises:
            PartitionError: If the program is not stratifiable over the partition
            InternalConsistencyError: If the verdict differs from the monolithic one
        """
        require_stratifiable(program, partition)
        split = self._fold_stable(program, partition, interpretation, policy)
        monolithic = self.service.is_stable_model(program, interpretation, policy)
        if split != monolithic:
            raise InternalConsistencyError(
                f"split stable check says {split} for {interpretation!r}, monolithic check says {monolithic}"
            )
        return split


def suggest_partition(program: Program) -> Partition:
    """
    Heuristic partition: strongly connected components of the dependency
    graph, in topological order. The program is always stratifiable over it.
    """
    condensed = nx.condensation(dependency_graph(program))
    members = nx.get_node_attributes(condensed, "members")
    order = nx.lexicographical_topological_sort(condensed, key=lambda node: min(members[node]))
    partition = Partition(tuple(frozenset(members[node]) for node in order))
    logger.info("Suggested partition (heuristic): %s", partition)
    return partition


# Singleton instance
stratified_semantics = StratifiedSemantics()
