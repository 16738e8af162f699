"""
Tests for the approximate-interpretation construction of the
well-founded semantics and its agreement with the stable approximator.
"""
import random
from fractions import Fraction

import pytest

from app.models.approximate import ApproximateInterpretation
from app.services.approximate_wf import aw, aw_model, aw_trace, crosscheck, s_p, tp_ls, zeta, zeta_inverse
from app.services.fixpoint import ConvergencePolicy, FixpointStatus, SemanticsService
from app.services.syntax import parse_program
from tests.factories import pair, random_program


def approximate(**bounds) -> ApproximateInterpretation:
    return ApproximateInterpretation({
        atom: (Fraction(lower), Fraction(upper)) for atom, (lower, upper) in bounds.items()
    })


class TestOperators:
    """Test T_P, s_P and AW_P on approximate interpretations"""

    def setup_method(self):
        self.unknown = ApproximateInterpretation.unknown(["p", "q", "r", "s"])

    def test_zeta(self):
        """Test the bound map and the pair view describe the same thing"""
        value = approximate(p=("0.2", "0.7"))
        assert zeta(value) == pair({"p": "0.2"}, {"p": "0.7"})
        assert zeta_inverse(zeta(value)) == value

    def test_consequence(self, p2):
        """Test T_P(X_bottom) on P2"""
        assert tp_ls(p2, self.unknown) == approximate(p=(0, 1), q=(0, 1), r=("0.3", "0.6"), s=(0, 1))

    def test_closed_world(self, p2, exact):
        """Test s_P(X_bottom) on P2"""
        assert s_p(p2, self.unknown, exact) == approximate(p=(0, 1), q=(0, 1), r=(0, "0.3"), s=(0, 0))

    def test_aw(self, p2, exact):
        """Test AW_P(X_bottom) = T_P(X_bottom) ⊕ s_P(X_bottom)"""
        assert aw(p2, self.unknown, exact) == approximate(p=(0, 1), q=(0, 1), r=("0.3", "0.3"), s=(0, 0))

    def test_positive_program(self, p1, exact):
        """Test the AW model of a positive program is exact"""
        result = aw_model(p1, exact)
        assert result.value == approximate(r=("0.3", "0.3"), s=(0, 0))

    def test_closed_world_within_epsilon(self):
        """Test an AW model reached through epsilon-stopped s_P steps is not reported as converged"""
        program = parse_program(r"p <-[Prod] 1/2 \/[Prod] (p /\[Prod] 1/2).").map_constants(float)
        result = aw_model(program, ConvergencePolicy.within("1e-9"))
        assert result.status is FixpointStatus.CONVERGED_WITHIN_EPSILON
        lower, upper = result.value["p"]
        assert lower == pytest.approx(2 / 3, abs=1e-6)
        assert upper == pytest.approx(2 / 3, abs=1e-6)

    def test_trace(self, p2, exact):
        """Test the AW trace starts at X_bottom and ends at the AW model"""
        visited = aw_trace(p2, exact)
        assert visited[0] == self.unknown
        assert visited[-1] == aw_model(p2, exact).value


class TestPartialStableSeparation:
    """Test an AW fixpoint that is not a partial stable fixpoint"""

    def test_fixpoint_of_aw_only(self, p3, exact):
        """Test X = {p: (1, 1), q: (0, 1), r: (0, 1)} is fixed by AW_P but not by the stable approximator"""
        value = approximate(p=(1, 1), q=(0, 1), r=(0, 1))
        assert aw(p3, value, exact) == value
        service = SemanticsService()
        assert service.stable_approximator(p3, zeta(value), exact) != zeta(value)
        assert not service.is_partial_stable(p3, zeta(value), exact)


class TestCrosscheck:
    """Test the well-founded fixpoint against the AW model"""

    def test_examples(self, p1, p2, p3, p4, exact):
        """Test agreement on the example programs"""
        for program in (p1, p2, p3, p4):
            report = crosscheck(program, exact, samples=50)
            assert report.passed, [check.describe() for check in report.checks]

    def test_aw_visits_stable_trace(self, p2, exact):
        """Test every pair visited by the stable approximator on P2 is visited by AW_P"""
        report = crosscheck(p2, exact, samples=10)
        assert report.aw_visits_stable_trace
        assert zeta(report.aw_model.value) == report.well_founded.value

    def test_random_programs(self, exact):
        """Test agreement on 500 random family-G programs"""
        rng = random.Random(17)
        for index in range(500):
            program = random_program(rng)
            report = crosscheck(program, exact, samples=5, seed=index)
            assert report.passed, [check.describe() for check in report.checks]

    def test_check_counts(self, p2, exact):
        """Test each sampled property reports how many inputs it checked"""
        report = crosscheck(p2, exact, samples=7)
        assert len(report.checks) == 4
        assert report.checks[0].checked == 1
        assert report.checks[1].checked == 7
        assert report.checks[2].checked >= 7
