"""
Seeded random sampling of interpretations and pairs on a rational grid,
used by the property cross-checks.
"""
import random
from fractions import Fraction
from typing import Iterable

from app.models.approximate import ApproximateInterpretation
from app.models.lattice import ArithmeticMode, Interpretation, InterpretationPair, to_truth_value

SAMPLE_RESOLUTION = 10


def _value(rng: random.Random, resolution: int, mode: ArithmeticMode):
    return to_truth_value(Fraction(rng.randint(0, resolution), resolution), mode)


def random_interpretation(atoms: Iterable[str], rng: random.Random, resolution: int = SAMPLE_RESOLUTION,
                          mode: ArithmeticMode = ArithmeticMode.EXACT) -> Interpretation:
    return Interpretation({atom: _value(rng, resolution, mode) for atom in atoms})


def random_pair(atoms: Iterable[str], rng: random.Random, consistent: bool = True,
                resolution: int = SAMPLE_RESOLUTION,
                mode: ArithmeticMode = ArithmeticMode.EXACT) -> InterpretationPair:
    """Random pair; with `consistent` each lower bound is at most its upper bound."""
    atoms = list(atoms)
    lower, upper = {}, {}
    for atom in atoms:
        a, b = _value(rng, resolution, mode), _value(rng, resolution, mode)
        if consistent and a > b:
            a, b = b, a
        lower[atom], upper[atom] = a, b
    return InterpretationPair(Interpretation(lower), Interpretation(upper))


def random_approximate(atoms: Iterable[str], rng: random.Random, resolution: int = SAMPLE_RESOLUTION,
                       mode: ArithmeticMode = ArithmeticMode.EXACT) -> ApproximateInterpretation:
    """Random approximate interpretation; bounds need not be ordered."""
    return ApproximateInterpretation({
        atom: (_value(rng, resolution, mode), _value(rng, resolution, mode)) for atom in atoms
    })
