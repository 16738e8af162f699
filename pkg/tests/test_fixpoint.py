"""
Tests for the fixpoint engine: least models, Kripke-Kleene, the stable
approximator, the well-founded fixpoint and grid stable-model enumeration.
"""
import itertools
import random
from fractions import Fraction

import pytest

from app.core.exceptions import EnumerationLimitError, IterationBudgetExhausted, NonMonotoneIterationError
from app.models.lattice import ONE, ZERO, Interpretation, InterpretationPair, leq_precision, negate
from app.models.program import Program, formula_constants
from app.services.fixpoint import (
    ConvergencePolicy,
    FixpointStatus,
    SemanticsService,
    grid_points,
    lfp_monotone,
)
from app.services.syntax import parse_program
from tests.factories import TENTHS, interpretation, pair, random_program

P2_WELL_FOUNDED = pair({"p": "0.3", "q": 0, "r": "0.3", "s": 0}, {"p": 1, "q": "0.7", "r": "0.3", "s": 0})


def constant_closure(program: Program) -> set:
    """0, 1, the constants and weights of the program, and their negations."""
    values = {ZERO, ONE}
    for rule in program.rules:
        values.add(rule.weight)
        values |= formula_constants(rule.body)
    return values | {negate(value) for value in values}


class TestConvergencePolicy:
    """Test policy construction"""

    def test_exact_policy(self, exact):
        """Test the default policy is exact"""
        assert exact.is_exact
        assert exact.max_iterations == 100_000

    def test_invalid_values(self):
        """Test non-positive epsilon and budget are rejected"""
        with pytest.raises(ValueError):
            ConvergencePolicy.within(0)
        with pytest.raises(ValueError):
            ConvergencePolicy(max_iterations=0)

    def test_budget_from_environment(self, monkeypatch):
        """Test FLP_MAX_ITERATIONS sets the default budget"""
        monkeypatch.setenv("FLP_MAX_ITERATIONS", "7")
        assert ConvergencePolicy.exact().max_iterations == 7


class TestLeastModel:
    """Test lfp(T_P) for positive programs"""

    def setup_method(self):
        self.service = SemanticsService()

    def test_positive_example(self, p1, exact):
        """Test lfp(T_P1) = {r: 3/10, s: 0} in one productive step"""
        result = self.service.least_model(p1, exact)
        assert result.value == interpretation(r="0.3", s=0)
        assert result.status is FixpointStatus.CONVERGED
        assert result.steps == 1

    def test_within_epsilon(self):
        """Test an infinitely ascending chain stops within epsilon in approximate mode"""
        program = parse_program(r"p <-[Prod] (p /\[Prod] 0.5) \/[Prod] 0.5.").map_constants(float)
        result = self.service.least_model(program, ConvergencePolicy.within("1e-6"))
        assert result.status is FixpointStatus.CONVERGED_WITHIN_EPSILON
        assert result.value["p"] == pytest.approx(2 / 3, abs=1e-5)

    def test_non_monotone_operator(self):
        """Test a descending iterate is reported"""
        top = Interpretation.top(["p"])
        with pytest.raises(NonMonotoneIterationError):
            lfp_monotone(lambda value: Interpretation.bottom(["p"]), top, ConvergencePolicy.exact())


class TestKripkeKleene:
    """Test the <=p-least fixpoint of A_P"""

    def setup_method(self):
        self.service = SemanticsService()

    def test_minimal_models_example(self, p2, exact):
        """Test the Kripke-Kleene fixpoint of P2"""
        result = self.service.kripke_kleene(p2, exact)
        assert result.value == pair({"p": "0.3", "q": 0, "r": "0.3", "s": 0}, {"p": 1, "q": 1, "r": "0.6", "s": 1})
        assert result.steps == 2

    def test_self_loop_stays_unknown(self, p4, exact):
        """Test P4 keeps the least precise pair"""
        result = self.service.kripke_kleene(p4, exact)
        assert result.value == InterpretationPair.least_precise(["p"])
        assert result.steps == 0

    def test_trace(self, p2):
        """Test the trace starts at (bottom, top) and has one entry per productive step"""
        result = self.service.kripke_kleene(p2, ConvergencePolicy.exact(trace=True))
        assert result.trace[0] == InterpretationPair.least_precise(p2.atoms)
        assert len(result.trace) == result.steps + 1
        assert result.trace[-1] == result.value

    def test_budget_exhausted(self, p2):
        """Test a too small budget returns the last pair with an exhausted status"""
        result = self.service.kripke_kleene(p2, ConvergencePolicy.exact(max_iterations=1))
        assert result.status is FixpointStatus.ITERATION_BUDGET_EXHAUSTED
        assert not result.converged
        with pytest.raises(IterationBudgetExhausted) as error:
            result.require_converged()
        assert error.value.partial is result

    def test_approximate_mode(self, p2):
        """Test the same fixpoint with doubles"""
        result = self.service.kripke_kleene(p2.map_constants(float), ConvergencePolicy.within("1e-9"))
        assert result.status is FixpointStatus.CONVERGED
        assert result.value.lower["p"] == pytest.approx(0.3)
        assert result.value.upper["r"] == pytest.approx(0.6)


class TestWellFounded:
    """Test the stable approximator and the well-founded fixpoint"""

    def setup_method(self):
        self.service = SemanticsService()

    def test_first_stable_step(self, p2, exact):
        """Test the first stable-approximator step on P2"""
        start = InterpretationPair.least_precise(p2.atoms)
        step = self.service.stable_approximator(p2, start, exact)
        assert step == pair({"p": "0.3", "q": 0, "r": "0.3", "s": 0}, {"p": 1, "q": 1, "r": "0.3", "s": 0})

    def test_minimal_models_example(self, p2, exact):
        """Test the well-founded fixpoint of P2"""
        result = self.service.well_founded(p2, exact)
        assert result.value == P2_WELL_FOUNDED
        assert result.steps == 2

    def test_positive_program_is_exact(self, p1, exact):
        """Test the well-founded fixpoint of a positive program is its least model"""
        result = self.service.well_founded(p1, exact)
        assert result.value == InterpretationPair.exact(interpretation(r="0.3", s=0))
        assert result.steps == 1

    def test_self_loop(self, p4, exact):
        """Test the well-founded fixpoint of P4 is (bottom, top)"""
        assert self.service.well_founded(p4, exact).value == InterpretationPair.least_precise(["p"])

    def test_more_precise_than_kripke_kleene(self, p2, exact):
        """Test KK <=p WF"""
        kk = self.service.kripke_kleene(p2, exact).value
        assert leq_precision(kk, self.service.well_founded(p2, exact).value)

    def test_partial_stable(self, p2, exact):
        """Test the well-founded pair is a partial stable fixpoint and KK is not"""
        assert self.service.is_partial_stable(p2, P2_WELL_FOUNDED, exact)
        kk = self.service.kripke_kleene(p2, exact).value
        assert not self.service.is_partial_stable(p2, kk, exact)

    def test_inner_fixpoints_within_epsilon(self):
        """Test a stable approximator whose inner fixpoints stop within epsilon is not reported as converged"""
        program = parse_program(r"p <-[Prod] 1/2 \/[Prod] (p /\[Prod] 1/2).").map_constants(float)
        result = self.service.well_founded(program, ConvergencePolicy.within("1e-9"))
        assert result.status is FixpointStatus.CONVERGED_WITHIN_EPSILON
        assert result.value.lower["p"] == pytest.approx(2 / 3, abs=1e-6)
        assert result.value.upper["p"] == pytest.approx(2 / 3, abs=1e-6)

    def test_exact_run_stays_converged(self, p1):
        """Test approximate mode on a positive program keeps the converged status"""
        result = self.service.well_founded(p1.map_constants(float), ConvergencePolicy.within("1e-9"))
        assert result.status is FixpointStatus.CONVERGED
        assert result.value.lower["r"] == pytest.approx(0.3)

    def test_more_precise_than_kripke_kleene_random(self, exact):
        """Test KK <=p WF on 200 random programs"""
        rng = random.Random(23)
        for _ in range(200):
            program = random_program(rng)
            kk = self.service.kripke_kleene(program, exact).value
            assert leq_precision(kk, self.service.well_founded(program, exact).value)

    def test_iterates_stay_in_constant_closure(self):
        """Test every family-G iterate takes values among the constants, weights, 0, 1 and their negations"""
        rng = random.Random(37)
        policy = ConvergencePolicy.exact(trace=True)
        for _ in range(100):
            program = random_program(rng)
            closure = constant_closure(program)
            for result in (self.service.kripke_kleene(program, policy), self.service.well_founded(program, policy)):
                for visited in result.trace:
                    assert set(visited.lower.values()) <= closure
                    assert set(visited.upper.values()) <= closure


class TestStableModels:
    """Test stable-model checks and grid enumeration"""

    def setup_method(self):
        self.service = SemanticsService()

    def test_enumerate_minimal_models_example(self, p2, exact):
        """Test the grid-1/10 stable models of P2 are p = k/10, q = 1 - k/10 for k >= 3"""
        models = self.service.enumerate_stable_models(p2, 10, exact)
        expected = [
            interpretation(p=Fraction(k, 10), q=1 - Fraction(k, 10), r="0.3", s=0) for k in range(3, 11)
        ]
        assert models == expected

    def test_characterizations_agree_on_grid(self, p2, exact):
        """Test reduct and stable-approximator checks agree on every grid point"""
        for values in itertools.product(TENTHS, repeat=4):
            candidate = Interpretation(dict(zip(p2.atoms, values)))
            self.service.is_stable_model(p2, candidate, exact)

    def test_well_founded_approximates_stable_models(self, p2, exact):
        """Test WF <=p (I, I) for every stable model"""
        wf = self.service.well_founded(p2, exact).value
        for model in self.service.enumerate_stable_models(p2, 10, exact):
            assert leq_precision(wf, InterpretationPair.exact(model))

    def test_is_stable_model(self, p2, exact):
        """Test a stable model and a non-model"""
        assert self.service.is_stable_model(p2, interpretation(p="0.6", q="0.4", r="0.3", s=0), exact)
        assert not self.service.is_stable_model(p2, interpretation(p="0.2", q="0.8", r="0.3", s=0), exact)

    def test_self_supporting_value_is_not_stable(self, p1, exact):
        """Test s <- s does not support s = 1"""
        assert not self.service.is_stable_model(p1, interpretation(r="0.6", s=1), exact)

    def test_self_loop_half(self, p4, exact):
        """Test p = 1/2 is a stable model of P4"""
        assert self.service.is_stable_model(p4, interpretation(p="0.5"), exact)
        assert self.service.enumerate_stable_models(p4, 10, exact) == [interpretation(p="0.5")]

    def test_minimal_on_grid(self, p1, exact):
        """Test stable models are minimal among grid models"""
        assert self.service.is_model_minimal_on_grid(p1, interpretation(r="0.3", s=0), 10, exact)
        assert not self.service.is_model_minimal_on_grid(p1, interpretation(r="0.6", s="0.6"), 10, exact)

    def test_grid_stable_models_are_minimal(self, p2, exact):
        """Test every grid stable model of P2 is a minimal model on the grid"""
        models = self.service.enumerate_stable_models(p2, 10, exact)
        assert models
        for model in models:
            assert self.service.is_model_minimal_on_grid(p2, model, 10, exact)

    def test_enumeration_cap(self, p2, exact, monkeypatch):
        """Test grids above FLP_ENUMERATION_CAP are refused"""
        monkeypatch.setenv("FLP_ENUMERATION_CAP", "100")
        with pytest.raises(EnumerationLimitError):
            self.service.enumerate_stable_models(p2, 10, exact)

    def test_grid_points(self, exact):
        """Test the grid 0, 1/n, ..., 1 and invalid resolutions"""
        assert grid_points(4, exact) == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
        with pytest.raises(ValueError):
            grid_points(0, exact)
