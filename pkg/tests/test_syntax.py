"""
Tests for the program parser, the pretty-printer and dependency analysis.
"""
import random
from fractions import Fraction
from typing import Set

import pytest

from app.core.exceptions import (
    ConstantRangeError,
    NestedNegationError,
    ProgramSyntaxError,
    UnknownConnectiveError,
)
from app.models.lattice import ONE
from app.models.program import Agg, AtomRef, Conj, Const, Disj, Formula, NegAtom, Polarity, Program, Rule
from app.services.sampling import random_interpretation
from app.services.semantics import tp
from app.services.syntax import (
    body_polarities,
    dependency_graph,
    depends,
    format_formula,
    format_program,
    join_rules_per_atom,
    parse_program,
)
from tests.factories import random_program


def occurring_atoms(formula: Formula) -> Set[str]:
    if isinstance(formula, (AtomRef, NegAtom)):
        return {formula.atom}
    if isinstance(formula, (Conj, Disj)):
        return occurring_atoms(formula.left) | occurring_atoms(formula.right)
    if isinstance(formula, Agg):
        return set().union(*(occurring_atoms(arg) for arg in formula.args))
    return set()


class TestParser:
    """Test parsing of program text"""

    def test_example_program(self, p1):
        """Test the positive example parses into two rules over {r, s}"""
        assert p1.signature == frozenset({"r", "s"})
        assert p1.rules == (
            Rule("r", Disj("G", Const(Fraction(3, 10)), Conj("G", AtomRef("s"), Const(Fraction(6, 10))))),
            Rule("s", AtomRef("s")),
        )

    def test_family_tags_and_weight(self):
        """Test rule and connective family tags and rule weights"""
        program = parse_program(r"p <-[L]{1/2} a /\[L] b \/ c.")
        rule = program.rules[0]
        assert rule.family == "L"
        assert rule.weight == Fraction(1, 2)
        assert rule.body == Disj("G", Conj("L", AtomRef("a"), AtomRef("b")), AtomRef("c"))

    def test_family_alias(self):
        """Test alternative family spellings resolve to the canonical id"""
        program = parse_program(r"p <- a /\[Ł] b.")
        assert program.rules[0].body.family == "L"

    def test_default_family_override(self):
        """Test untagged connectives use the default family"""
        program = parse_program(r"p <- a /\ b.", default_family="L")
        assert program.rules[0].family == "L"
        assert program.rules[0].body == Conj("L", AtomRef("a"), AtomRef("b"))

    def test_aggregator(self):
        """Test aggregator application with a negated argument"""
        program = parse_program("p <- max(a, ~b, 0.2).")
        assert program.rules[0].body == Agg("max", (AtomRef("a"), NegAtom("b"), Const(Fraction(1, 5))))

    def test_left_associative(self):
        """Test a \\/ b \\/ c groups to the left"""
        program = parse_program(r"p <- a \/ b \/ c.")
        assert program.rules[0].body == Disj("G", Disj("G", AtomRef("a"), AtomRef("b")), AtomRef("c"))

    def test_declared_atoms_and_comments(self):
        """Test atoms declarations and % comments"""
        program = parse_program("% header\natoms x, y.\np <- x. % trailing\n")
        assert program.atoms == ("p", "x", "y")
        assert len(program.rules) == 1

    def test_empty_program(self):
        """Test an empty text is the empty program"""
        assert parse_program("") == Program.build([])

    def test_nested_negation(self):
        """Test negation of compound formulas is rejected"""
        with pytest.raises(NestedNegationError):
            parse_program(r"p <- ~(a /\ b).")
        with pytest.raises(NestedNegationError):
            parse_program("p <- ~~a.")

    def test_constant_out_of_range(self):
        """Test constants above 1 are rejected with their position"""
        with pytest.raises(ConstantRangeError) as error:
            parse_program("p <- 1.5.")
        assert error.value.line == 1

    def test_zero_denominator(self):
        """Test fractions with a zero denominator are rejected"""
        with pytest.raises(ProgramSyntaxError):
            parse_program("p <- 1/0.")

    def test_unknown_family(self):
        """Test unregistered family tags are rejected"""
        with pytest.raises(UnknownConnectiveError):
            parse_program(r"p <- a /\[Zadeh] b.")

    def test_unknown_aggregator(self):
        """Test unregistered aggregators are rejected"""
        with pytest.raises(UnknownConnectiveError):
            parse_program("p <- median(a, b).")

    def test_syntax_error_location(self):
        """Test grammar errors report the line"""
        with pytest.raises(ProgramSyntaxError) as error:
            parse_program("p <- a.\nq <- b")
        assert error.value.line == 2

    def test_syntax_errors_are_value_errors(self):
        """Test input errors derive from ValueError"""
        with pytest.raises(ValueError):
            parse_program("p <-")


class TestPrinter:
    """Test the pretty-printer"""

    def test_minimal_parentheses(self):
        """Test parentheses only where grouping needs them"""
        formula = Conj("G", Disj("G", AtomRef("a"), AtomRef("b")), NegAtom("c"))
        assert format_formula(formula) == r"(a \/ b) /\ ~c"
        assert format_formula(Disj("G", AtomRef("a"), Conj("G", AtomRef("b"), AtomRef("c")))) == r"a \/ b /\ c"

    def test_round_trip_examples(self, p1, p2, p3, p4):
        """Test parse(format(P)) == P on the example programs"""
        for program in (p1, p2, p3, p4):
            assert parse_program(format_program(program)) == program

    def test_round_trip_random(self):
        """Test parse(format(P)) == P on random programs, including unused atoms"""
        rng = random.Random(7)
        for _ in range(200):
            program = random_program(rng)
            assert parse_program(format_program(program)) == program

    def test_round_trip_tags(self):
        """Test non-default families and weights survive the round trip"""
        program = parse_program(r"p <-[L]{3/10} max(a, ~b) /\[Prod] c.")
        assert parse_program(format_program(program)) == program


class TestAnalysis:
    """Test dependency analysis and rule normalization"""

    def test_depends(self, p1, p2):
        """Test the dependency relation of the examples"""
        assert depends(p1) == {("s", "r"), ("s", "s")}
        assert depends(p2) == {("q", "p"), ("r", "p"), ("p", "q"), ("s", "q"), ("s", "r"), ("s", "s")}

    def test_dependency_graph_polarity(self, p2, p4):
        """Test edges carry the polarity of the body atom"""
        graph = dependency_graph(p2)
        assert graph.edges["q", "p"]["polarity"] == "negative"
        assert graph.edges["r", "p"]["polarity"] == "positive"
        assert dependency_graph(p4).edges["p", "p"]["polarity"] == "both"

    def test_body_polarities(self):
        """Test mixed occurrences in one body"""
        body = parse_program(r"p <- a /\ ~a \/ ~b.").rules[0].body
        assert body_polarities(body) == {"a": Polarity.BOTH, "b": Polarity.NEGATIVE}

    def test_join_rules(self, p4):
        """Test one joined rule per atom"""
        joined = join_rules_per_atom(p4)
        assert joined.rules == (
            Rule("p", Disj("G", Conj("G", Const(ONE), AtomRef("p")), Conj("G", Const(ONE), NegAtom("p")))),
        )

    def test_join_rules_atom_without_rules(self):
        """Test atoms without rules get the constant 0"""
        joined = join_rules_per_atom(parse_program("atoms q. p <- q."))
        assert joined.rules_for("q")[0].body == Const(Fraction(0))

    def test_join_rules_keeps_consequences(self):
        """Test T_P of the joined program equals T_P of the original on random programs"""
        rng = random.Random(17)
        for _ in range(200):
            program = random_program(rng)
            joined = join_rules_per_atom(program)
            for _ in range(20):
                value = random_interpretation(program.atoms, rng)
                assert tp(joined, value) == tp(program, value)

    def test_depends_is_occurrence(self):
        """Test depends lists exactly the (body atom, head) pairs found by walking every body"""
        rng = random.Random(19)
        for _ in range(300):
            program = random_program(rng)
            expected = {(atom, rule.head) for rule in program.rules for atom in occurring_atoms(rule.body)}
            assert depends(program) == expected
