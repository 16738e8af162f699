"""
Command runner shared by the CLI and the HTTP API.

Each command parses the program, runs one engine operation and returns a
ResultDocument together with the exit code the CLI should use. Input
errors (ValueError) and engine failures (RuntimeError) propagate to the
caller, which maps them to exit codes or HTTP statuses.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from app.core.config import get_default_family
from app.models.lattice import ArithmeticMode, Interpretation, InterpretationPair, to_truth_value
from app.models.program import Program
from app.models.report import PropertyCheck
from app.schemas.results import AtomBounds, CheckOutcome, ResultDocument
from app.schemas.run_config import RunConfig
from app.services.approximate_wf import ApproximateWellFoundedOperators, crosscheck, zeta
from app.services.connectives.checks import AxiomReport, check_adjoint, check_axioms, grid_triples
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.extensions.stratification import (
    Partition,
    StratifiedSemantics,
    check_operator_stratifiable,
    suggest_partition,
)
from app.services.extensions.ultimate import UltimateMethod, ultimate_kripke_kleene, ultimate_well_founded
from app.services.fixpoint.policy import FixpointResult
from app.services.fixpoint.service import SemanticsService
from app.services.reporting.dot import to_dot
from app.services.reporting.formatting import format_decimal, format_fraction
from app.services.syntax.parser import parse_program
from app.services.syntax.printer import format_program

logger = logging.getLogger(__name__)

CHECK_GRID = 20


def parse_witness(text: str, program: Program, mode: ArithmeticMode) -> Interpretation:
    """
    Parse "p=1/2, q=0" into an interpretation over the program signature.

    Raises:
        ValueError: If an entry is malformed, an atom is unknown or missing
    """
    values = {}
    for entry in text.split(","):
        if not entry.strip():
            continue
        atom, separator, value = entry.partition("=")
        atom = atom.strip()
        if not separator or not atom:
            raise ValueError(f"witness entry {entry.strip()!r} is not of the form atom=value")
        if atom not in program.signature:
            raise ValueError(f"witness atom {atom!r} is not in the signature {list(program.atoms)}")
        values[atom] = to_truth_value(value, mode)
    missing = program.signature - values.keys()
    if missing:
        raise ValueError(f"witness gives no value for {sorted(missing)}")
    return Interpretation(values)


def pair_bounds(pair: InterpretationPair, methods: Optional[Dict[str, str]] = None) -> List[AtomBounds]:
    methods = methods or {}
    return [
        AtomBounds(
            atom=atom,
            lower=format_fraction(pair.lower[atom]),
            upper=format_fraction(pair.upper[atom]),
            lower_decimal=format_decimal(pair.lower[atom]),
            upper_decimal=format_decimal(pair.upper[atom]),
            method=methods.get(atom),
        )
        for atom in pair.atoms
    ]


def outcome(check: PropertyCheck) -> CheckOutcome:
    return CheckOutcome(name=check.name, passed=check.passed, checked=check.checked, witness=check.witness)


def axiom_outcome(report: AxiomReport) -> CheckOutcome:
    witness = None if report.passed else report.describe()
    return CheckOutcome(name=report.subject, passed=report.passed, checked=report.checked, witness=witness)


@dataclass
class RunOutcome:
    document: ResultDocument
    exit_code: int


class CommandRunner:
    """Runs one command of the engine on a program text."""

    def __init__(self, registry: ConnectiveRegistry = connective_registry):
        self.registry = registry
        self.semantics = SemanticsService(registry)
        self.stratified = StratifiedSemantics(registry)
        self._commands: Dict[str, Callable[[Program, RunConfig, ResultDocument], None]] = {
            "check": self._check,
            "kk": self._kripke_kleene,
            "wf": self._well_founded,
            "ultimate-kk": self._ultimate_kripke_kleene,
            "ultimate-wf": self._ultimate_well_founded,
            "stable": self._stable,
            "crosscheck": self._crosscheck,
            "strata": self._strata,
            "trace": self._trace,
        }

    def load(self, text: str, config: RunConfig) -> Program:
        program = parse_program(text, config.family, self.registry)
        if config.mode == "approx":
            program = program.map_constants(float)
        return program

    def run(self, config: RunConfig, text: str) -> RunOutcome:
        """
        Run the configured command.

        Returns:
            RunOutcome; exit code 0 iff every requested check passed and
            every fixpoint converged

        Raises:
            ValueError: On bad program text, options or partitions
            RuntimeError: On internal-consistency failures
        """
        program = self.load(text, config)
        if config.command != "check":
            self.registry.ensure_available(program, config.policy().mode)
        document = ResultDocument(
            program=format_program(program),
            config=config.model_dump(mode="json", exclude={"format"}),
            kind=config.command,
        )
        logger.info("Running %s on %d rules over %d atoms", config.command, len(program.rules), len(program.atoms))
        self._commands[config.command](program, config, document)
        return RunOutcome(document, 0 if document.passed else 1)

    def _fixpoint(self, result: FixpointResult, document: ResultDocument) -> None:
        document.status = result.status.value
        document.steps = result.steps
        document.bounds = pair_bounds(result.value, result.methods)
        document.passed = result.converged

    def _check(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        resolution = config.grid or CHECK_GRID
        families, aggregators = program.connectives()
        families.add(self.registry.canonical_family_id(config.family or get_default_family()))
        for family_id in sorted({self.registry.canonical_family_id(family) for family in families}):
            family = self.registry.family(family_id)
            document.checks.append(axiom_outcome(check_axioms(family, grid_triples(resolution))))
            document.checks.append(axiom_outcome(check_adjoint(family, grid_triples(resolution))))
        for name in sorted(aggregators):
            aggregator = self.registry.aggregator(name)
            document.checks.append(axiom_outcome(check_axioms(aggregator, grid_triples(resolution))))
        document.passed = all(check.passed for check in document.checks)

    def _kripke_kleene(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        self._fixpoint(self.semantics.kripke_kleene(program, config.policy()), document)

    def _well_founded(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        self._fixpoint(self.semantics.well_founded(program, config.policy()), document)

    def _ultimate_kripke_kleene(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        result = ultimate_kripke_kleene(
            program, config.policy(), UltimateMethod(config.method), config.grid, self.registry
        )
        self._fixpoint(result, document)

    def _ultimate_well_founded(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        result = ultimate_well_founded(
            program, config.policy(), UltimateMethod(config.method), config.grid, self.registry
        )
        self._fixpoint(result, document)

    def _stable(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        policy = config.policy()
        if config.enumerate:
            models = self.semantics.enumerate_stable_models(program, config.grid, policy)
            document.models = [pair_bounds(InterpretationPair.exact(model)) for model in models]
            return
        witness = parse_witness(config.witness, program, policy.mode)
        document.verdict = self.semantics.is_stable_model(program, witness, policy)
        document.bounds = pair_bounds(InterpretationPair.exact(witness))
        document.passed = document.verdict

    def _crosscheck(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        report = crosscheck(program, config.policy(), config.samples, config.seed, self.registry)
        document.checks = [outcome(check) for check in report.checks]
        document.checks.append(CheckOutcome(
            name="AW_P visits every pair the stable approximator visits",
            passed=report.aw_visits_stable_trace,
            checked=len(report.well_founded.trace or []),
        ))
        document.status = report.well_founded.status.value
        document.steps = report.well_founded.steps
        document.bounds = pair_bounds(report.well_founded.value)
        document.passed = all(check.passed for check in document.checks)

    def _strata(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        policy = config.policy()
        partition = Partition.from_text(config.partition) if config.partition else suggest_partition(program)
        document.partition = str(partition)
        split = self.stratified.split_well_founded(program, partition, policy)
        document.checks.append(CheckOutcome(
            name="split well-founded fixpoint == monolithic well-founded fixpoint", passed=True, checked=1
        ))
        if config.witness is not None:
            witness = parse_witness(config.witness, program, policy.mode)
            document.verdict = self.stratified.split_stable_check(program, partition, witness, policy)
            document.checks.append(CheckOutcome(
                name="split stable check == monolithic stable check", passed=True, checked=1
            ))
        document.checks.append(outcome(
            check_operator_stratifiable(program, partition, config.samples, config.seed, self.registry)
        ))
        document.status = split.monolithic.status.value
        document.steps = split.steps
        document.bounds = pair_bounds(split.value)
        document.passed = all(check.passed for check in document.checks) and document.verdict is not False

    def _trace(self, program: Program, config: RunConfig, document: ResultDocument) -> None:
        policy = config.policy().with_trace()
        kk = self.semantics.kripke_kleene(program, policy)
        wf = self.semantics.well_founded(program, policy)
        aw = ApproximateWellFoundedOperators(program, self.registry).aw_model(policy)
        document.dot = to_dot([
            (kk.operator, kk.trace or []),
            (wf.operator, wf.trace or []),
            (aw.operator, [zeta(item) for item in aw.trace or []]),
        ])
        self._fixpoint(wf, document)
        document.passed = kk.converged and wf.converged and aw.converged


def render_human(document: ResultDocument) -> str:
    """Plain-text rendering: intervals as "p ∈ [3/10, 1]", one check per line."""
    if document.dot is not None:
        return document.dot
    lines: List[str] = []
    if document.partition is not None:
        lines.append(f"partition: {document.partition}")
    if document.status is not None:
        lines.append(f"{document.kind}: {document.status} after {document.steps} steps")
    if document.verdict is not None:
        lines.append("stable" if document.verdict else "not stable")
    if document.bounds and document.kind != "stable":
        lines.extend(f"{b.atom} ∈ [{b.lower}, {b.upper}]" for b in document.bounds)
    if document.kind == "stable" and document.verdict is None:
        lines.append(f"{len(document.models)} stable models on the grid")
        lines.extend("{" + ", ".join(f"{b.atom}: {b.lower}" for b in model) + "}" for model in document.models)
    for check in document.checks:
        status = "ok" if check.passed else "FAILED"
        line = f"{check.name}: {status} ({check.checked} checked)"
        if check.witness:
            line += f"; {check.witness}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# Singleton instance
command_runner = CommandRunner()
