"""
Canonical text forms for truth values, interpretations and pairs.
"""
from fractions import Fraction
from typing import Mapping

from app.models.lattice import InterpretationPair, TruthValue


def format_fraction(value: TruthValue) -> str:
    """
    Canonical exact text: "0", "1", "3/10"; floats keep their repr.

    The output is accepted back by the program parser.
    """
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: TruthValue, places: int = 6) -> str:
    """Decimal approximation with at least one fractional digit: 0.3, 1.0, 0.333333."""
    text = f"{float(value):.{places}f}".rstrip("0")
    if text.endswith("."):
        text += "0"
    return text


def format_interpretation(values: Mapping[str, TruthValue]) -> str:
    body = ", ".join(f"{atom}: {format_fraction(values[atom])}" for atom in sorted(values))
    return "{" + body + "}"


def format_pair(pair: InterpretationPair) -> str:
    return f"({format_interpretation(pair.lower)}, {format_interpretation(pair.upper)})"


def format_intervals(pair: InterpretationPair) -> str:
    """One line per atom, "p ∈ [3/10, 1]"."""
    return "\n".join(
        f"{atom} ∈ [{format_fraction(pair.lower[atom])}, {format_fraction(pair.upper[atom])}]"
        for atom in pair.atoms
    )
