"""
Approximate interpretations: each atom mapped to a (lower, upper) pair of
truth values. Isomorphic to interpretation pairs.
"""
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from app.core.exceptions import SignatureMismatchError, UnknownAtomError
from app.models.lattice import ArithmeticMode, Atom, TruthValue, ZERO, to_truth_value

Bounds = Tuple[TruthValue, TruthValue]


class ApproximateInterpretation(Mapping[Atom, Bounds]):
    """Immutable total map from atoms to (lower, upper) bounds, ordered by atom name."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[Atom, Bounds]):
        for atom, (lower, upper) in values.items():
            if not (0 <= lower <= 1 and 0 <= upper <= 1):
                raise ValueError(f"bounds ({lower}, {upper}) for {atom!r} outside [0,1]")
        self._values: Dict[Atom, Bounds] = {atom: tuple(values[atom]) for atom in sorted(values)}
        self._hash = None

    @classmethod
    def _trusted(cls, values: Dict[Atom, Bounds]) -> "ApproximateInterpretation":
        instance = cls.__new__(cls)
        instance._values = values
        instance._hash = None
        return instance

    @classmethod
    def constant(cls, atoms: Iterable[Atom], bounds: Bounds) -> "ApproximateInterpretation":
        return cls({atom: bounds for atom in atoms})

    @classmethod
    def unknown(cls, atoms: Iterable[Atom], mode: ArithmeticMode = ArithmeticMode.EXACT) -> "ApproximateInterpretation":
        """X_bottom: every atom (0, 1)."""
        return cls.constant(atoms, (to_truth_value(0, mode), to_truth_value(1, mode)))

    @classmethod
    def false(cls, atoms: Iterable[Atom], mode: ArithmeticMode = ArithmeticMode.EXACT) -> "ApproximateInterpretation":
        """X_f: every atom (0, 0)."""
        zero = to_truth_value(0, mode)
        return cls.constant(atoms, (zero, zero))

    def __getitem__(self, atom: Atom) -> Bounds:
        try:
            return self._values[atom]
        except KeyError:
            raise UnknownAtomError(f"atom {atom!r} is not in the signature {sorted(self._values)}")

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ApproximateInterpretation):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{atom}: ({lower}, {upper})" for atom, (lower, upper) in self._values.items())
        return "{" + body + "}"

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return tuple(self._values)

    def _check_signature(self, other: "ApproximateInterpretation") -> None:
        if self._values.keys() != other._values.keys():
            raise SignatureMismatchError(
                f"signatures differ: {sorted(self._values)} vs {sorted(other._values)}"
            )

    def _combine(self, other: "ApproximateInterpretation", lower_op, upper_op) -> "ApproximateInterpretation":
        self._check_signature(other)
        return ApproximateInterpretation._trusted({
            atom: (lower_op(lower, other._values[atom][0]), upper_op(upper, other._values[atom][1]))
            for atom, (lower, upper) in self._values.items()
        })

    def meet_precision(self, other: "ApproximateInterpretation") -> "ApproximateInterpretation":
        """X ⊗ Y: min of lowers, max of uppers."""
        return self._combine(other, min, max)

    def join_precision(self, other: "ApproximateInterpretation") -> "ApproximateInterpretation":
        """X ⊕ Y: max of lowers, min of uppers."""
        return self._combine(other, max, min)

    def leq_truth(self, other: "ApproximateInterpretation") -> bool:
        self._check_signature(other)
        return all(
            lower <= other._values[atom][0] and upper <= other._values[atom][1]
            for atom, (lower, upper) in self._values.items()
        )

    def leq_precision(self, other: "ApproximateInterpretation") -> bool:
        self._check_signature(other)
        return all(
            lower <= other._values[atom][0] and other._values[atom][1] <= upper
            for atom, (lower, upper) in self._values.items()
        )

    def distance(self, other: "ApproximateInterpretation") -> TruthValue:
        self._check_signature(other)
        return max(
            (
                max(abs(lower - other._values[atom][0]), abs(upper - other._values[atom][1]))
                for atom, (lower, upper) in self._values.items()
            ),
            default=ZERO,
        )
