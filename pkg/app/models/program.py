"""
Abstract syntax of normal fuzzy logic programs.

Formulas follow the normal-formula grammar: constants, atoms, negated atoms,
family-indexed conjunction and disjunction, and named aggregators. Negation
only ever wraps an atom. All nodes are frozen dataclasses, so formulas,
rules and programs are hashable values.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from app.models.lattice import ONE, Atom, TruthValue, negate


@dataclass(frozen=True)
class Const:
    value: TruthValue


@dataclass(frozen=True)
class AtomRef:
    atom: Atom


@dataclass(frozen=True)
class NegAtom:
    atom: Atom


@dataclass(frozen=True)
class Conj:
    family: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Disj:
    family: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Agg:
    name: str
    args: Tuple["Formula", ...]


Formula = Union[Const, AtomRef, NegAtom, Conj, Disj, Agg]
Leaf = Union[Const, AtomRef, NegAtom]


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOTH = "both"

    def combine(self, other: "Polarity") -> "Polarity":
        return self if self is other else Polarity.BOTH


def children(formula: Formula) -> Tuple[Formula, ...]:
    if isinstance(formula, (Conj, Disj)):
        return (formula.left, formula.right)
    if isinstance(formula, Agg):
        return formula.args
    return ()


def iter_leaves(formula: Formula) -> Iterable[Leaf]:
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, (Const, AtomRef, NegAtom)):
            yield node
        else:
            stack.extend(reversed(children(node)))


def formula_atoms(formula: Formula) -> Set[Atom]:
    """Atoms occurring in the formula, positively or negatively."""
    return {leaf.atom for leaf in iter_leaves(formula) if not isinstance(leaf, Const)}


def polarities(formula: Formula) -> Dict[Atom, Polarity]:
    """Polarity with which each atom occurs in the formula."""
    found: Dict[Atom, Polarity] = {}
    for leaf in iter_leaves(formula):
        if isinstance(leaf, Const):
            continue
        polarity = Polarity.NEGATIVE if isinstance(leaf, NegAtom) else Polarity.POSITIVE
        found[leaf.atom] = found[leaf.atom].combine(polarity) if leaf.atom in found else polarity
    return found


def map_leaves(formula: Formula, replace: Callable[[Leaf], Formula]) -> Formula:
    """Rebuild the formula with every leaf passed through `replace`."""
    if isinstance(formula, (Const, AtomRef, NegAtom)):
        return replace(formula)
    if isinstance(formula, Conj):
        return Conj(formula.family, map_leaves(formula.left, replace), map_leaves(formula.right, replace))
    if isinstance(formula, Disj):
        return Disj(formula.family, map_leaves(formula.left, replace), map_leaves(formula.right, replace))
    return Agg(formula.name, tuple(map_leaves(arg, replace) for arg in formula.args))


def substitute_atoms(
    formula: Formula,
    positive: Optional[Dict[Atom, TruthValue]] = None,
    negative: Optional[Dict[Atom, TruthValue]] = None,
) -> Formula:
    """
    Replace positive occurrences of atoms by Const(positive[p]) and negated
    occurrences ~p by Const(1 - negative[p]). Atoms missing from a map are kept.
    """
    positive = positive or {}
    negative = negative or {}

    def replace(leaf: Leaf) -> Formula:
        if isinstance(leaf, AtomRef) and leaf.atom in positive:
            return Const(positive[leaf.atom])
        if isinstance(leaf, NegAtom) and leaf.atom in negative:
            return Const(negate(negative[leaf.atom]))
        return leaf

    return map_leaves(formula, replace)


def formula_constants(formula: Formula) -> Set[TruthValue]:
    return {leaf.value for leaf in iter_leaves(formula) if isinstance(leaf, Const)}


def formula_connectives(formula: Formula) -> Tuple[Set[str], Set[str]]:
    """(family ids, aggregator names) used inside the formula."""
    families: Set[str] = set()
    aggregators: Set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, (Conj, Disj)):
            families.add(node.family)
        elif isinstance(node, Agg):
            aggregators.add(node.name)
        stack.extend(children(node))
    return families, aggregators


@dataclass(frozen=True)
class Rule:
    """Weighted rule head <-[family]{weight} body."""
    head: Atom
    body: Formula
    weight: TruthValue = ONE
    family: str = "G"

    @property
    def atoms(self) -> Set[Atom]:
        return {self.head} | formula_atoms(self.body)


@dataclass(frozen=True)
class Program:
    """
    Finite sequence of rules over a signature.

    The signature holds every atom occurring in the rules plus the explicitly
    declared ones; atoms without rules evaluate to 0 under the consequence
    operator.
    """
    rules: Tuple[Rule, ...]
    signature: FrozenSet[Atom] = field(default_factory=frozenset)

    def __post_init__(self):
        used = set()
        for rule in self.rules:
            used |= rule.atoms
        missing = used - self.signature
        if missing:
            # signature always covers the rules; extend silently
            object.__setattr__(self, "signature", frozenset(self.signature | used))

    @classmethod
    def build(cls, rules: Iterable[Rule], declared: Iterable[Atom] = ()) -> "Program":
        return cls(tuple(rules), frozenset(declared))

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        """Signature in lexicographic order."""
        return tuple(sorted(self.signature))

    def rules_for(self, head: Atom) -> List[Rule]:
        return [rule for rule in self.rules if rule.head == head]

    def rules_by_head(self) -> Dict[Atom, List[Rule]]:
        grouped: Dict[Atom, List[Rule]] = {atom: [] for atom in self.atoms}
        for rule in self.rules:
            grouped[rule.head].append(rule)
        return grouped

    def is_positive(self) -> bool:
        return not any(
            isinstance(leaf, NegAtom) for rule in self.rules for leaf in iter_leaves(rule.body)
        )

    def constants(self) -> Set[TruthValue]:
        """Every truth constant written in the program, weights included."""
        found: Set[TruthValue] = set()
        for rule in self.rules:
            found.add(rule.weight)
            found |= formula_constants(rule.body)
        return found

    def connectives(self) -> Tuple[Set[str], Set[str]]:
        families: Set[str] = set()
        aggregators: Set[str] = set()
        for rule in self.rules:
            families.add(rule.family)
            rule_families, rule_aggregators = formula_connectives(rule.body)
            families |= rule_families
            aggregators |= rule_aggregators
        return families, aggregators

    def map_constants(self, convert: Callable[[TruthValue], TruthValue]) -> "Program":
        """Same program with every weight and constant converted."""

        def replace(leaf: Leaf) -> Formula:
            return Const(convert(leaf.value)) if isinstance(leaf, Const) else leaf

        rules = tuple(
            Rule(rule.head, map_leaves(rule.body, replace), convert(rule.weight), rule.family)
            for rule in self.rules
        )
        return Program(rules, self.signature)
