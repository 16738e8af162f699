"""
Truth values, interpretations and interpretation pairs.

Truth values are exact rationals (fractions.Fraction) in the default mode and
doubles in approximate mode; a run never mixes the two. Interpretations are
immutable total maps from the program signature to truth values, ordered
pointwise. Pairs of interpretations form the bilattice with the truth order
<=t and the precision order <=p.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from app.core.exceptions import SignatureMismatchError, UnknownAtomError

TruthValue = Union[Fraction, float]
Atom = str

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class ArithmeticMode(str, Enum):
    """How truth values are stored during a run."""
    EXACT = "exact"
    APPROXIMATE = "approx"


def to_truth_value(value: Union[TruthValue, int, str], mode: ArithmeticMode = ArithmeticMode.EXACT) -> TruthValue:
    """
    Convert a number or numeric string into a truth value of the given mode.

    Raises:
        ValueError: If the value is not a number in [0,1]
    """
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a truth value: {value!r}")
    converted: TruthValue = float(value) if mode is ArithmeticMode.APPROXIMATE else Fraction(value)
    if not 0 <= converted <= 1:
        raise ValueError(f"truth value {value} outside [0,1]")
    return converted


def negate(value: TruthValue) -> TruthValue:
    """Standard negation x -> 1 - x, an antimonotone involution."""
    if isinstance(value, float):
        return 1.0 - value
    return ONE - value


def zero_like(value: TruthValue) -> TruthValue:
    """0 in the arithmetic of `value`."""
    return 0.0 if isinstance(value, float) else ZERO


def one_like(value: TruthValue) -> TruthValue:
    """1 in the arithmetic of `value`."""
    return 1.0 if isinstance(value, float) else ONE


class Interpretation(Mapping[Atom, TruthValue]):
    """
    Immutable total map from a finite set of atoms to truth values.

    Iteration order is lexicographic by atom name, which keeps every printed
    or serialized form deterministic.
    """

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[Atom, TruthValue]):
        for atom, value in values.items():
            if not 0 <= value <= 1:
                raise ValueError(f"truth value {value} for {atom!r} outside [0,1]")
        self._values: Dict[Atom, TruthValue] = {atom: values[atom] for atom in sorted(values)}
        self._hash = None

    @classmethod
    def _trusted(cls, values: Dict[Atom, TruthValue]) -> "Interpretation":
        # values already validated and ordered by the caller
        instance = cls.__new__(cls)
        instance._values = values
        instance._hash = None
        return instance

    @classmethod
    def constant(cls, atoms: Iterable[Atom], value: TruthValue) -> "Interpretation":
        return cls({atom: value for atom in atoms})

    @classmethod
    def bottom(cls, atoms: Iterable[Atom], mode: ArithmeticMode = ArithmeticMode.EXACT) -> "Interpretation":
        """The interpretation mapping every atom to 0."""
        return cls.constant(atoms, to_truth_value(0, mode))

    @classmethod
    def top(cls, atoms: Iterable[Atom], mode: ArithmeticMode = ArithmeticMode.EXACT) -> "Interpretation":
        """The interpretation mapping every atom to 1."""
        return cls.constant(atoms, to_truth_value(1, mode))

    def __getitem__(self, atom: Atom) -> TruthValue:
        try:
            return self._values[atom]
        except KeyError:
            raise UnknownAtomError(f"atom {atom!r} is not in the signature {sorted(self._values)}")

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Interpretation):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{atom}: {value}" for atom, value in self._values.items())
        return "{" + body + "}"

    @property
    def signature(self) -> frozenset:
        return frozenset(self._values)

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return tuple(self._values)

    def _check_signature(self, other: "Interpretation") -> None:
        if self._values.keys() != other._values.keys():
            raise SignatureMismatchError(
                f"signatures differ: {sorted(self._values)} vs {sorted(other._values)}"
            )

    def leq(self, other: "Interpretation") -> bool:
        """Pointwise order I <= J."""
        self._check_signature(other)
        return all(value <= other._values[atom] for atom, value in self._values.items())

    def meet(self, other: "Interpretation") -> "Interpretation":
        self._check_signature(other)
        return Interpretation._trusted(
            {atom: min(value, other._values[atom]) for atom, value in self._values.items()}
        )

    def join(self, other: "Interpretation") -> "Interpretation":
        self._check_signature(other)
        return Interpretation._trusted(
            {atom: max(value, other._values[atom]) for atom, value in self._values.items()}
        )

    def distance(self, other: "Interpretation") -> TruthValue:
        """Sup-norm distance max_p |I(p) - J(p)|."""
        self._check_signature(other)
        return max((abs(value - other._values[atom]) for atom, value in self._values.items()), default=ZERO)

    def restrict(self, atoms: Iterable[Atom]) -> "Interpretation":
        """I restricted to the given atoms (all of which must be in the signature)."""
        return Interpretation._trusted({atom: self[atom] for atom in sorted(set(atoms))})

    def merge(self, other: "Interpretation") -> "Interpretation":
        """Glue two interpretations over disjoint signatures."""
        overlap = self.signature & other.signature
        if overlap:
            raise SignatureMismatchError(f"cannot glue interpretations sharing atoms {sorted(overlap)}")
        merged = dict(self._values)
        merged.update(other._values)
        return Interpretation._trusted({atom: merged[atom] for atom in sorted(merged)})


@dataclass(frozen=True)
class InterpretationPair:
    """
    Element (lower, upper) of the bilattice of interpretations.

    Consistency (lower <= upper) is queryable rather than enforced, because
    the stable approximator evaluates arbitrary pairs.
    """
    lower: Interpretation
    upper: Interpretation

    def __post_init__(self):
        self.lower._check_signature(self.upper)

    @classmethod
    def least_precise(cls, atoms: Iterable[Atom], mode: ArithmeticMode = ArithmeticMode.EXACT) -> "InterpretationPair":
        """The pair (bottom, top), <=p-below every pair over the same atoms."""
        atoms = list(atoms)
        return cls(Interpretation.bottom(atoms, mode), Interpretation.top(atoms, mode))

    @classmethod
    def exact(cls, interpretation: Interpretation) -> "InterpretationPair":
        return cls(interpretation, interpretation)

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return self.lower.atoms

    @property
    def signature(self) -> frozenset:
        return self.lower.signature

    def is_consistent(self) -> bool:
        return self.lower.leq(self.upper)

    def is_exact(self) -> bool:
        return self.lower == self.upper

    def swapped(self) -> "InterpretationPair":
        return InterpretationPair(self.upper, self.lower)

    def restrict(self, atoms: Iterable[Atom]) -> "InterpretationPair":
        atoms = list(atoms)
        return InterpretationPair(self.lower.restrict(atoms), self.upper.restrict(atoms))

    def merge(self, other: "InterpretationPair") -> "InterpretationPair":
        return InterpretationPair(self.lower.merge(other.lower), self.upper.merge(other.upper))

    def distance(self, other: "InterpretationPair") -> TruthValue:
        return max(self.lower.distance(other.lower), self.upper.distance(other.upper))

    def interval(self, atom: Atom) -> Tuple[TruthValue, TruthValue]:
        return self.lower[atom], self.upper[atom]

    def __repr__(self) -> str:
        return f"({self.lower!r}, {self.upper!r})"


def leq_truth(a: InterpretationPair, b: InterpretationPair) -> bool:
    """Truth order: both bounds move up."""
    return a.lower.leq(b.lower) and a.upper.leq(b.upper)


def leq_precision(a: InterpretationPair, b: InterpretationPair) -> bool:
    """Precision order: b's interval is contained in a's."""
    return a.lower.leq(b.lower) and b.upper.leq(a.upper)


def meet_precision(a: InterpretationPair, b: InterpretationPair) -> InterpretationPair:
    """Greatest lower bound under <=p: (min of lowers, max of uppers)."""
    return InterpretationPair(a.lower.meet(b.lower), a.upper.join(b.upper))


def join_precision(a: InterpretationPair, b: InterpretationPair) -> InterpretationPair:
    """Least upper bound under <=p: (max of lowers, min of uppers)."""
    return InterpretationPair(a.lower.join(b.lower), a.upper.meet(b.upper))
