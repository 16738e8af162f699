"""
Pretty-printer producing text that parse_program reads back to the same AST.
"""
from typing import List

from app.models.lattice import ONE
from app.models.program import Agg, AtomRef, Conj, Const, Disj, Formula, NegAtom, Program, Rule
from app.services.reporting.formatting import format_fraction

DEFAULT_FAMILY = "G"

_DISJ_LEVEL = 0
_CONJ_LEVEL = 1
_UNIT_LEVEL = 2


def _level(formula: Formula) -> int:
    if isinstance(formula, Disj):
        return _DISJ_LEVEL
    if isinstance(formula, Conj):
        return _CONJ_LEVEL
    return _UNIT_LEVEL


def _tag(family: str, default_family: str) -> str:
    return "" if family == default_family else f"[{family}]"


def _format(formula: Formula, needed: int, default_family: str) -> str:
    text = _format_bare(formula, default_family)
    return f"({text})" if _level(formula) < needed else text


def _format_bare(formula: Formula, default_family: str) -> str:
    if isinstance(formula, Const):
        return format_fraction(formula.value)
    if isinstance(formula, AtomRef):
        return formula.atom
    if isinstance(formula, NegAtom):
        return f"~{formula.atom}"
    if isinstance(formula, Agg):
        args = ", ".join(_format(arg, _DISJ_LEVEL, default_family) for arg in formula.args)
        return f"{formula.name}({args})"
    if isinstance(formula, Conj):
        left = _format(formula.left, _CONJ_LEVEL, default_family)
        right = _format(formula.right, _UNIT_LEVEL, default_family)
        return f"{left} /\\{_tag(formula.family, default_family)} {right}"
    left = _format(formula.left, _DISJ_LEVEL, default_family)
    right = _format(formula.right, _CONJ_LEVEL, default_family)
    return f"{left} \\/{_tag(formula.family, default_family)} {right}"


def format_formula(formula: Formula, default_family: str = DEFAULT_FAMILY) -> str:
    """Render a formula with the fewest parentheses the left-associative grammar allows."""
    return _format(formula, _DISJ_LEVEL, default_family)


def format_rule(rule: Rule, default_family: str = DEFAULT_FAMILY) -> str:
    parts = [rule.head, "<-"]
    if rule.family != default_family:
        parts.append(f"[{rule.family}]")
    if rule.weight != ONE:
        parts.append("{" + format_fraction(rule.weight) + "}")
    parts.append(format_formula(rule.body, default_family))
    return " ".join(parts) + "."


def format_program(program: Program, default_family: str = DEFAULT_FAMILY) -> str:
    """
    Render a program, one rule per line.

    Atoms that occur in no rule are listed in a leading "atoms" declaration
    so the signature survives the round trip.
    """
    lines: List[str] = []
    used = set()
    for rule in program.rules:
        used |= rule.atoms
    declared_only = sorted(program.signature - used)
    if declared_only:
        lines.append("atoms " + ", ".join(declared_only) + ".")
    lines.extend(format_rule(rule, default_family) for rule in program.rules)
    return "\n".join(lines) + ("\n" if lines else "")
