"""
Built-in truth-function families and aggregators.

A family bundles a conjunctor, a disjunctor and the implicator forming an
adjoint pair with the conjunctor. Implicators take (head value, body value)
in that order: a rule head <-{w} body is satisfied by I iff
w <= impl(I(head), I(body)).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from app.models.lattice import TruthValue, one_like, zero_like

BinaryFunction = Callable[[TruthValue, TruthValue], TruthValue]


@dataclass(frozen=True)
class ConnectiveFamily:
    """
    Conjunctor, disjunctor and residual implicator sharing one index.

    `exact` marks families whose operations keep rational inputs inside a
    finite closure, so exact fixpoint iteration terminates.
    """
    id: str
    conj: BinaryFunction
    disj: BinaryFunction
    impl: BinaryFunction
    exact: bool = True
    description: str = ""


@dataclass(frozen=True)
class Aggregator:
    """Named n-ary truth function, monotone in every argument."""
    name: str
    function: Callable[[Sequence[TruthValue]], TruthValue]
    min_arity: int = 1

    def __call__(self, args: Sequence[TruthValue]) -> TruthValue:
        return self.function(args)


# Gödel

def minimum(x: TruthValue, y: TruthValue) -> TruthValue:
    return min(x, y)


def maximum(x: TruthValue, y: TruthValue) -> TruthValue:
    return max(x, y)


def goedel_implication(head: TruthValue, body: TruthValue) -> TruthValue:
    return head if body > head else one_like(head)


# Łukasiewicz

def lukasiewicz_conj(x: TruthValue, y: TruthValue) -> TruthValue:
    return max(zero_like(x), x + y - 1)


def lukasiewicz_disj(x: TruthValue, y: TruthValue) -> TruthValue:
    return min(one_like(x), x + y)


def lukasiewicz_implication(head: TruthValue, body: TruthValue) -> TruthValue:
    return min(one_like(head), 1 - body + head)


# Product (Goguen implication)

def product(x: TruthValue, y: TruthValue) -> TruthValue:
    return x * y


def probabilistic_sum(x: TruthValue, y: TruthValue) -> TruthValue:
    return x + y - x * y


def goguen_implication(head: TruthValue, body: TruthValue) -> TruthValue:
    if body <= head:
        return one_like(head)
    return head / body


GOEDEL = ConnectiveFamily(
    id="G",
    conj=minimum,
    disj=maximum,
    impl=goedel_implication,
    description="Gödel: min, max, Gödel implication",
)

LUKASIEWICZ = ConnectiveFamily(
    id="L",
    conj=lukasiewicz_conj,
    disj=lukasiewicz_disj,
    impl=lukasiewicz_implication,
    description="Łukasiewicz: bounded difference, bounded sum, Łukasiewicz implication",
)

PRODUCT = ConnectiveFamily(
    id="Prod",
    conj=product,
    disj=probabilistic_sum,
    impl=goguen_implication,
    exact=False,
    description="Product: product t-norm, probabilistic sum, Goguen implication (approximate mode only)",
)


def _mean(args: Sequence[TruthValue]) -> TruthValue:
    total = sum(args[1:], args[0])
    if isinstance(total, float):
        return total / len(args)
    return Fraction(total) / len(args)


MIN_AGGREGATOR = Aggregator("min", lambda args: min(args))
MAX_AGGREGATOR = Aggregator("max", lambda args: max(args))
MEAN_AGGREGATOR = Aggregator("mean", _mean)

BUILTIN_FAMILIES = (GOEDEL, LUKASIEWICZ, PRODUCT)
BUILTIN_AGGREGATORS = (MIN_AGGREGATOR, MAX_AGGREGATOR, MEAN_AGGREGATOR)

# Alternative spellings accepted in program text
FAMILY_ALIASES = {"Ł": "L", "Luk": "L", "Godel": "G", "P": "Prod"}


def builtin_families() -> frozenset:
    """The shipped families G, Ł and Prod."""
    return frozenset(BUILTIN_FAMILIES)
