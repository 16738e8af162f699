from typing import Optional

from fastapi import APIRouter, File, Form, HTTPException, UploadFile
from pydantic import ValidationError

from app.schemas.results import ResultDocument
from app.schemas.run_config import RunConfig
from app.services.runner import command_runner

router = APIRouter(prefix="/semantics", tags=["semantics"])

FIXPOINT_KINDS = ("kk", "wf", "ultimate-kk", "ultimate-wf")


async def _run(
    command: str,
    program: UploadFile,
    options: dict,
) -> ResultDocument:
    """
    Validate the options, run the command on the uploaded program and
    return its structured result.

    Input errors give 400, engine failures (non-convergence inside a nested
    fixpoint, internal-consistency failures) give 422.
    """
    try:
        text = (await program.read()).decode("utf-8")
    except UnicodeDecodeError as e:
        raise HTTPException(status_code=400, detail=f"Program file is not UTF-8 text: {str(e)}")

    try:
        config = RunConfig(command=command, **{k: v for k, v in options.items() if v is not None})
    except ValidationError as e:
        raise HTTPException(status_code=400, detail=str(e))

    try:
        return command_runner.run(config, text).document
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except RuntimeError as e:
        raise HTTPException(status_code=422, detail=str(e))


@router.post("/check", response_model=ResultDocument)
async def check_program(
    program: UploadFile = File(..., description="Program file (.flp)"),
    family: Optional[str] = Form(None, description="Family for untagged connectives"),
    grid: Optional[str] = Form(None, description="Sampling grid for the connective checks, n or 1/n"),
):
    """Parse the program and grid-check the axioms and adjointness of its connectives."""
    return await _run("check", program, {"family": family, "grid": grid})


@router.post("/stable", response_model=ResultDocument)
async def stable_models(
    program: UploadFile = File(..., description="Program file (.flp)"),
    family: Optional[str] = Form(None),
    mode: str = Form("exact"),
    epsilon: Optional[str] = Form(None),
    max_iters: Optional[int] = Form(None),
    witness: Optional[str] = Form(None, description='Interpretation to test, e.g. "p=1/2"'),
    enumerate: bool = Form(False, description="List the stable models on the grid"),
    grid: Optional[str] = Form(None),
):
    """
    Decide whether a witness interpretation is a stable model, or list the
    stable models whose values lie on the grid 0, 1/n, ..., 1.
    """
    return await _run("stable", program, {
        "family": family, "mode": mode, "epsilon": epsilon, "max_iters": max_iters,
        "witness": witness, "enumerate": enumerate, "grid": grid,
    })


@router.post("/crosscheck", response_model=ResultDocument)
async def crosscheck_program(
    program: UploadFile = File(..., description="Program file (.flp)"),
    family: Optional[str] = Form(None),
    mode: str = Form("exact"),
    epsilon: Optional[str] = Form(None),
    max_iters: Optional[int] = Form(None),
    samples: Optional[int] = Form(None),
    seed: Optional[int] = Form(None),
):
    """Compare the well-founded fixpoint with the approximate well-founded model."""
    return await _run("crosscheck", program, {
        "family": family, "mode": mode, "epsilon": epsilon, "max_iters": max_iters,
        "samples": samples, "seed": seed,
    })


@router.post("/strata", response_model=ResultDocument)
async def split_program(
    program: UploadFile = File(..., description="Program file (.flp)"),
    partition: Optional[str] = Form(None, description='Strata as "a,b|c,d"; suggested when omitted'),
    witness: Optional[str] = Form(None, description='Interpretation to check for stability stratum by stratum'),
    family: Optional[str] = Form(None),
    mode: str = Form("exact"),
    epsilon: Optional[str] = Form(None),
    max_iters: Optional[int] = Form(None),
    samples: Optional[int] = Form(None),
    seed: Optional[int] = Form(None),
):
    """
    Well-founded fixpoint computed stratum by stratum and checked against the
    monolithic one; with a witness, its stability is decided the same way.
    """
    return await _run("strata", program, {
        "partition": partition, "witness": witness, "family": family, "mode": mode, "epsilon": epsilon,
        "max_iters": max_iters, "samples": samples, "seed": seed,
    })


@router.post("/trace", response_model=ResultDocument)
async def trace_program(
    program: UploadFile = File(..., description="Program file (.flp)"),
    family: Optional[str] = Form(None),
    max_iters: Optional[int] = Form(None),
):
    """DOT graph of the pairs visited by the Kripke-Kleene, well-founded and AW iterations."""
    return await _run("trace", program, {"family": family, "max_iters": max_iters, "trace": True})


@router.post("/{kind}", response_model=ResultDocument)
async def fixpoint(
    kind: str,
    program: UploadFile = File(..., description="Program file (.flp)"),
    family: Optional[str] = Form(None),
    mode: str = Form("exact"),
    epsilon: Optional[str] = Form(None),
    max_iters: Optional[int] = Form(None),
    method: str = Form("exact_per_head", description="exact_per_head or grid (ultimate only)"),
    grid: Optional[str] = Form(None),
):
    """Kripke-Kleene or well-founded fixpoint, with the standard or the ultimate approximator."""
    if kind not in FIXPOINT_KINDS:
        raise HTTPException(status_code=404, detail=f"Unknown fixpoint kind {kind!r}")
    return await _run(kind, program, {
        "family": family, "mode": mode, "epsilon": epsilon, "max_iters": max_iters,
        "method": method, "grid": grid,
    })
