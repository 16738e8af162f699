"""
Registry of connective families and aggregators.

User families are grid-checked for the conjunctor and implicator laws and
for adjointness before they are accepted.
"""
import logging
from typing import Dict, Iterable, Optional

from app.core.exceptions import ArithmeticModeError, ConnectiveRegistrationError, UnknownConnectiveError
from app.models.lattice import ArithmeticMode
from app.models.program import Program
from app.services.connectives.checks import check_adjoint, check_axioms, grid_triples
from app.services.connectives.families import (
    BUILTIN_AGGREGATORS,
    BUILTIN_FAMILIES,
    FAMILY_ALIASES,
    Aggregator,
    ConnectiveFamily,
)

logger = logging.getLogger(__name__)

REGISTRATION_GRID = 50


class ConnectiveRegistry:
    """
    Lookup table for connective families and aggregators.

    Built-ins are trusted. User-defined connectives must pass the axiom and
    adjointness checks on the 1/50 grid before they are accepted.
    """

    def __init__(self, families: Iterable[ConnectiveFamily] = BUILTIN_FAMILIES,
                 aggregators: Iterable[Aggregator] = BUILTIN_AGGREGATORS):
        self._families: Dict[str, ConnectiveFamily] = {family.id: family for family in families}
        self._aggregators: Dict[str, Aggregator] = {agg.name: agg for agg in aggregators}

    @staticmethod
    def canonical_family_id(family_id: str) -> str:
        return FAMILY_ALIASES.get(family_id, family_id)

    def family(self, family_id: str) -> ConnectiveFamily:
        """
        Resolve a family id (aliases such as "Ł" included).

        Raises:
            UnknownConnectiveError: If no such family is registered
        """
        try:
            return self._families[self.canonical_family_id(family_id)]
        except KeyError:
            raise UnknownConnectiveError(
                f"unknown connective family {family_id!r}; registered: {sorted(self._families)}"
            )

    def aggregator(self, name: str) -> Aggregator:
        """
        Raises:
            UnknownConnectiveError: If no such aggregator is registered
        """
        try:
            return self._aggregators[name]
        except KeyError:
            raise UnknownConnectiveError(
                f"unknown aggregator {name!r}; registered: {sorted(self._aggregators)}"
            )

    def has_family(self, family_id: str) -> bool:
        return self.canonical_family_id(family_id) in self._families

    def has_aggregator(self, name: str) -> bool:
        return name in self._aggregators

    @property
    def family_ids(self):
        return sorted(self._families)

    @property
    def aggregator_names(self):
        return sorted(self._aggregators)

    def register_family(self, family: ConnectiveFamily, resolution: Optional[int] = None) -> None:
        """
        Add a user-defined family after grid-checking it.

        Args:
            family: Family to register; its id must be new
            resolution: Grid resolution of the gate (default 50)

        Raises:
            ConnectiveRegistrationError: If the id is taken or a check fails
        """
        if self.has_family(family.id):
            raise ConnectiveRegistrationError(f"family {family.id!r} is already registered")
        resolution = resolution or REGISTRATION_GRID
        for report in (
            check_axioms(family, grid_triples(resolution)),
            check_adjoint(family, grid_triples(resolution)),
        ):
            if not report.passed:
                raise ConnectiveRegistrationError(report.describe())
        self._families[family.id] = family
        logger.info("Registered connective family %s", family.id)

    def register_aggregator(self, aggregator: Aggregator, resolution: Optional[int] = None) -> None:
        """
        Raises:
            ConnectiveRegistrationError: If the name is taken or monotonicity fails
        """
        if self.has_aggregator(aggregator.name):
            raise ConnectiveRegistrationError(f"aggregator {aggregator.name!r} is already registered")
        report = check_axioms(aggregator, grid_triples(resolution or REGISTRATION_GRID))
        if not report.passed:
            raise ConnectiveRegistrationError(report.describe())
        self._aggregators[aggregator.name] = aggregator
        logger.info("Registered aggregator %s", aggregator.name)

    def ensure_available(self, program: Program, mode: ArithmeticMode = ArithmeticMode.EXACT) -> None:
        """
        Check every connective of the program is registered and usable in the mode.

        Raises:
            UnknownConnectiveError: If a family or aggregator is missing
            ArithmeticModeError: If an inexact family is used in exact mode
        """
        families, aggregators = program.connectives()
        for family_id in sorted(families):
            family = self.family(family_id)
            if mode is ArithmeticMode.EXACT and not family.exact:
                raise ArithmeticModeError(
                    f"family {family.id} needs approximate mode (--mode approx); "
                    "exact iteration may not terminate"
                )
        for name in sorted(aggregators):
            self.aggregator(name)


# Singleton instance
connective_registry = ConnectiveRegistry()
