"""
Tests for the ultimate approximator and the semantics built on it.
"""
import logging
import random

import pytest

from app.core.exceptions import EnumerationLimitError, UltimateMethodError
from app.models.lattice import InterpretationPair, leq_precision
from app.services.extensions import (
    UltimateApproximator,
    UltimateMethod,
    is_ultimate_stable_model,
    ultimate_approximator,
    ultimate_kripke_kleene,
    ultimate_well_founded,
)
from app.services.fixpoint import SemanticsService
from app.services.sampling import random_pair
from app.services.semantics import StandardApproximator
from app.services.syntax import parse_program
from tests.factories import interpretation, pair, random_program, single_polarity

HALF_TO_ONE = pair({"p": "0.5"}, {"p": 1})


def single_polarity_programs(rng: random.Random, count: int, max_atoms: int = 5):
    found = 0
    while found < count:
        program = random_program(rng, max_atoms=max_atoms)
        if single_polarity(program):
            found += 1
            yield program


class TestSelfLoop:
    """Test p <- p. p <- ~p, where the ultimate approximator is strictly more precise"""

    def test_single_application(self, p4):
        """Test the bounds on (bottom, top)"""
        start = InterpretationPair.least_precise(["p"])
        assert ultimate_approximator(p4, start) == HALF_TO_ONE
        assert StandardApproximator(p4).apply(start) == start

    def test_kripke_kleene(self, p4, exact):
        """Test the ultimate Kripke-Kleene fixpoint is ({p: 1/2}, {p: 1})"""
        result = ultimate_kripke_kleene(p4, exact)
        assert result.value == HALF_TO_ONE
        assert result.methods == {"p": "candidates"}

    def test_well_founded(self, p4, exact):
        """Test the ultimate well-founded fixpoint improves on (bottom, top)"""
        result = ultimate_well_founded(p4, exact)
        assert result.value == HALF_TO_ONE
        ordinary = SemanticsService().well_founded(p4, exact).value
        assert ordinary == InterpretationPair.least_precise(["p"])
        assert leq_precision(ordinary, result.value)

    def test_grid_method(self, p4, exact):
        """Test the grid method reaches the same fixpoints"""
        result = ultimate_kripke_kleene(p4, exact, UltimateMethod.GRID, resolution=10)
        assert result.value == HALF_TO_ONE
        assert result.methods == {"p": "grid"}
        assert ultimate_well_founded(p4, exact, UltimateMethod.GRID, resolution=10).value == HALF_TO_ONE

    def test_half_is_not_ultimately_stable(self, p4, exact):
        """Test p = 1/2 is stable but not an ultimate stable fixpoint"""
        assert SemanticsService().is_stable_model(p4, interpretation(p="0.5"), exact)
        assert not is_ultimate_stable_model(p4, interpretation(p="0.5"), exact)


class TestMethods:
    """Test method selection, annotations and limits"""

    def test_corner_annotation(self, p2, exact):
        """Test single-polarity heads are annotated corner"""
        result = ultimate_kripke_kleene(p2, exact)
        assert set(result.methods.values()) == {"corner"}

    def test_mixed_polarity_outside_goedel(self):
        """Test candidates are refused for Łukasiewicz bodies with mixed polarity"""
        program = parse_program(r"p <-[L] p \/[L] ~p.")
        with pytest.raises(UltimateMethodError):
            UltimateApproximator(program)
        UltimateApproximator(program, UltimateMethod.GRID, resolution=4)

    def test_grid_needs_resolution(self, p4):
        """Test the grid method without a resolution"""
        with pytest.raises(ValueError):
            UltimateApproximator(p4, UltimateMethod.GRID)

    def test_grid_cap(self, p4):
        """Test a grid above the cap is refused"""
        approx = UltimateApproximator(p4, UltimateMethod.GRID, resolution=10, grid_cap=3)
        with pytest.raises(EnumerationLimitError):
            approx.apply(InterpretationPair.least_precise(["p"]))

    def test_several_mixed_atoms_warn(self, caplog):
        """Test a warning when one head has more than one mixed-polarity atom"""
        program = parse_program(r"p <- a /\ ~a \/ b /\ ~b.")
        with caplog.at_level(logging.WARNING, logger="app.services.extensions.ultimate"):
            UltimateApproximator(program)
        assert "mixed-polarity" in caplog.text

    def test_inconsistent_pair(self, p4):
        """Test mixed atoms range over the hull of an inconsistent interval"""
        assert ultimate_approximator(p4, pair({"p": "0.8"}, {"p": "0.2"})) == pair({"p": "0.5"}, {"p": "0.8"})


class TestPrecision:
    """Test the ultimate approximator against the standard one"""

    def test_dominates_standard(self):
        """Test A_P <=p ultimate on random consistent pairs"""
        rng = random.Random(31)
        for _ in range(30):
            program = random_program(rng, max_atoms=3)
            standard = StandardApproximator(program)
            ultimate = UltimateApproximator(program)
            for _ in range(20):
                value = random_pair(program.atoms, rng)
                result = ultimate.apply(value)
                assert result.is_consistent()
                assert leq_precision(standard.apply(value), result)

    def test_single_polarity_equals_standard(self):
        """Test corners give exactly A_P, also on inconsistent pairs"""
        rng = random.Random(37)
        for program in single_polarity_programs(rng, 50):
            standard = StandardApproximator(program)
            ultimate = UltimateApproximator(program)
            for _ in range(50):
                value = random_pair(program.atoms, rng, consistent=rng.random() < 0.5)
                assert ultimate.apply(value) == standard.apply(value)

    def test_grid_agrees_with_corners(self):
        """Test the grid search finds the corner values on small programs"""
        rng = random.Random(41)
        for program in single_polarity_programs(rng, 30, max_atoms=3):
            corners = UltimateApproximator(program)
            grid = UltimateApproximator(program, UltimateMethod.GRID, resolution=2)
            for _ in range(20):
                value = random_pair(program.atoms, rng)
                assert grid.apply(value) == corners.apply(value)

    def test_well_founded_and_stable_models(self, exact):
        """Test WF <=p ultimate WF and stable models stay ultimate stable fixpoints"""
        rng = random.Random(43)
        service = SemanticsService()
        for program in single_polarity_programs(rng, 40, max_atoms=3):
            wf = service.well_founded(program, exact).value
            assert leq_precision(wf, ultimate_well_founded(program, exact).value)
            for model in service.enumerate_stable_models(program, 2, exact):
                assert is_ultimate_stable_model(program, model, exact)
