"""
Parser for normal fuzzy logic program text (.flp).

Grammar, PEG style:

    program  := {decl | rule} EOF
    decl     := "atoms" atom {"," atom} "."
    rule     := atom "<-" ["[" family "]"] ["{" constant "}"] body "."
    body     := conj {"\\/" ["[" family "]"] conj}
    conj     := unit {"/\\" ["[" family "]"] unit}
    unit     := constant | aggname "(" body {"," body} ")" | "~" atom
              | atom | "(" body ")"

Constants are decimals or num/den fractions in [0,1]; "%" starts a comment.
Negation applies to atoms only. Negated compounds are recognised by the
grammar so they can be rejected with a precise message.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional as Opt

from arpeggio import EOF, NoMatch, Optional, ParserPython, PTNodeVisitor, ZeroOrMore, visit_parse_tree
from arpeggio import RegExMatch as _

from app.core.config import get_default_family
from app.core.exceptions import ConstantRangeError, NestedNegationError, ProgramSyntaxError, UnknownConnectiveError
from app.models.lattice import ONE
from app.models.program import Agg, AtomRef, Conj, Const, Disj, NegAtom, Program, Rule
from app.services.connectives.registry import ConnectiveRegistry, connective_registry


def comment():          return _(r"%.*")
def atom():             return _(r"[A-Za-z][A-Za-z0-9_]*")
def aggname():          return _(r"[A-Za-z][A-Za-z0-9_]*")
def family():           return _(r"[^\W\d_]\w*")
def constant():         return _(r"\d+/\d+|\d+(\.\d+)?|\.\d+")
def family_tag():       return "[", family, "]"
def weight():           return "{", constant, "}"
def aggregate():        return aggname, "(", body, ZeroOrMore(",", body), ")"
def negation():         return "~", atom
def negated_compound(): return "~", [negation, negated_compound, ("(", body, ")"), aggregate, constant]
def unit():             return [constant, aggregate, negated_compound, negation, atom, ("(", body, ")")]
def conj_op():          return "/\\", Optional(family_tag)
def disj_op():          return "\\/", Optional(family_tag)
def conj():             return unit, ZeroOrMore(conj_op, unit)
def body():             return conj, ZeroOrMore(disj_op, conj)
def rule():             return atom, "<-", Optional(family_tag), Optional(weight), body, "."
def decl():             return "atoms", atom, ZeroOrMore(",", atom), "."
def program():          return ZeroOrMore([decl, rule]), EOF


def build_parser() -> ParserPython:
    # parsers hold per-parse state, so one per call
    return ParserPython(program, comment, autokwd=True)


@dataclass(frozen=True)
class _Operator:
    family: str


@dataclass(frozen=True)
class _Declaration:
    atoms: tuple


class ProgramVisitor(PTNodeVisitor):
    """Turns the Arpeggio parse tree into the program AST."""

    def __init__(self, parser: ParserPython, default_family: str, registry: ConnectiveRegistry):
        super().__init__()
        self.parser = parser
        self.default_family = default_family
        self.registry = registry

    def _location(self, node):
        return self.parser.pos_to_linecol(node.position)

    def visit_atom(self, node, ch):
        return str(node.value)

    def visit_aggname(self, node, ch):
        return str(node.value)

    def visit_family(self, node, ch):
        name = str(node.value)
        if not self.registry.has_family(name):
            line, column = self._location(node)
            raise UnknownConnectiveError(
                f"unknown connective family {name!r} at line {line}, column {column}; "
                f"registered: {self.registry.family_ids}"
            )
        return self.registry.canonical_family_id(name)

    def visit_constant(self, node, ch):
        text = str(node.value)
        line, column = self._location(node)
        try:
            value = Fraction(text)
        except ZeroDivisionError:
            raise ProgramSyntaxError(f"zero denominator in constant {text!r}", line, column)
        if value > 1:
            raise ConstantRangeError(f"constant {text} outside [0,1]", line, column)
        return value

    def visit_family_tag(self, node, ch):
        return ch.results["family"][0]

    def visit_weight(self, node, ch):
        return ch.results["constant"][0]

    def visit_aggregate(self, node, ch):
        name = ch.results["aggname"][0]
        if not self.registry.has_aggregator(name):
            line, column = self._location(node)
            raise UnknownConnectiveError(
                f"unknown aggregator {name!r} at line {line}, column {column}; "
                f"registered: {self.registry.aggregator_names}"
            )
        return Agg(name, tuple(ch.results["body"]))

    def visit_negation(self, node, ch):
        return NegAtom(ch.results["atom"][0])

    def visit_negated_compound(self, node, ch):
        line, column = self._location(node)
        raise NestedNegationError(
            "negation applies to atoms only (write ~p, not ~(...), ~~p or ~c)", line, column
        )

    def visit_unit(self, node, ch):
        if "constant" in ch.results:
            return Const(ch.results["constant"][0])
        if "atom" in ch.results:
            return AtomRef(ch.results["atom"][0])
        return next(value for value in ch if not isinstance(value, str))

    def visit_conj_op(self, node, ch):
        tags = ch.results.get("family_tag")
        return _Operator(tags[0] if tags else self.default_family)

    visit_disj_op = visit_conj_op

    def visit_conj(self, node, ch):
        return self._fold(ch, Conj)

    def visit_body(self, node, ch):
        return self._fold(ch, Disj)

    @staticmethod
    def _fold(ch, connective):
        # left-associative: a op b op c == (a op b) op c
        items = [value for value in ch if not isinstance(value, str)]
        formula = items[0]
        for index in range(1, len(items), 2):
            formula = connective(items[index].family, formula, items[index + 1])
        return formula

    def visit_rule(self, node, ch):
        tags = ch.results.get("family_tag")
        weights = ch.results.get("weight")
        return Rule(
            head=ch.results["atom"][0],
            body=ch.results["body"][0],
            weight=weights[0] if weights else ONE,
            family=tags[0] if tags else self.default_family,
        )

    def visit_decl(self, node, ch):
        return _Declaration(tuple(ch.results.get("atom", ())))

    def visit_program(self, node, ch):
        rules = []
        declared = []
        for item in ch:
            if isinstance(item, Rule):
                rules.append(item)
            elif isinstance(item, _Declaration):
                declared.extend(item.atoms)
        return Program.build(rules, declared)


def parse_program(text: str, default_family: Opt[str] = None,
                  registry: ConnectiveRegistry = connective_registry) -> Program:
    """
    Parse program text into a Program.

    Args:
        text: Program source
        default_family: Family for untagged rules and connectives
            (defaults to FLP_DEFAULT_FAMILY, normally "G")
        registry: Registry used to resolve families and aggregators

    Returns:
        Program with rules in source order

    Raises:
        ProgramSyntaxError: On lexical or grammar errors, nested negation
            or constants outside [0,1]
        UnknownConnectiveError: On unregistered families or aggregators
    """
    family_id = default_family or get_default_family()
    if not registry.has_family(family_id):
        raise UnknownConnectiveError(f"unknown default family {family_id!r}")
    family_id = registry.canonical_family_id(family_id)

    parser = build_parser()
    try:
        tree = parser.parse(text)
    except NoMatch as error:
        line, column = parser.pos_to_linecol(error.position)
        expected = ", ".join(sorted({str(candidate.name) for candidate in getattr(error, "rules", ())}))
        raise ProgramSyntaxError(f"unexpected input, expected {expected}", line, column)

    if not tree:
        return Program.build([])
    return visit_parse_tree(tree, ProgramVisitor(parser, family_id, registry))
