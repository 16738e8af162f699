from app.services.syntax.analysis import (
    body_polarities,
    dependency_graph,
    depends,
    head_polarities,
    join_rules_per_atom,
)
from app.services.syntax.parser import parse_program
from app.services.syntax.printer import format_formula, format_program, format_rule

__all__ = [
    "body_polarities",
    "dependency_graph",
    "depends",
    "head_polarities",
    "join_rules_per_atom",
    "parse_program",
    "format_formula",
    "format_program",
    "format_rule",
]
