"""FastAPI app wrapping the decision toolkit.

The handlers are thin: they parse, call the core package, and shape results
through the wire schemas.  The CLI reuses the same handler functions
in-process, so behaviour is identical with or without a running server.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..axiomatic import (
    LOGICS,
    Derivation,
    Hypothesis,
    KAxiom,
    MP,
    RN,
    SchemaAxiom,
    Step,
    check_derivation,
)
from ..canonical import OracleUndetermined, SizeLimit, oracle_verdict
from ..formula import ParseError, parse
from ..semantics import FrameProperty, correspondence_check, model_to_json
from ..tableau import (
    NonTheorem,
    Theorem,
    Undetermined,
    countermodel_dot,
    decide,
    proof_to_json,
)
from .schemas import (
    CheckDerivationRequest,
    CheckDerivationResponse,
    CorrespondRequest,
    CorrespondResponse,
    CountermodelResponse,
    DecideRequest,
    DecideResponse,
    ModelPayload,
    OracleRequest,
    OracleResponse,
    StepPayload,
)

# Named correspondence pairs: schema text and characteristic properties.
CORRESPONDENCE_SCHEMAS: dict[str, tuple[str, tuple[FrameProperty, ...]]] = {
    "D": ("Box p --> Diam p", (FrameProperty.SERIAL,)),
    "T": ("Box p --> p", (FrameProperty.REFLEXIVE,)),
    "4": ("Box p --> Box Box p", (FrameProperty.TRANSITIVE,)),
    "5": ("Diam p --> Box Diam p", (FrameProperty.EUCLIDEAN,)),
    "B": ("p --> Box Diam p", (FrameProperty.SYMMETRIC,)),
    "GL": (
        "Box (Box p --> p) --> Box p",
        (FrameProperty.IRREFLEXIVE, FrameProperty.TRANSITIVE),
    ),
}

app = FastAPI(
    title="modalkit",
    description="Theoremhood decisions and countermodels for K, T, K4 and GL",
)


def _parse_or_400(text: str):
    try:
        return parse(text)
    except ParseError as e:
        raise HTTPException(status_code=400, detail=str(e)) from None


def handle_decide(req: DecideRequest) -> DecideResponse:
    f = _parse_or_400(req.formula)
    outcome = decide(req.logic, f, req.max_steps)
    if isinstance(outcome, Theorem):
        return DecideResponse(
            logic=req.logic, formula=req.formula, verdict="theorem",
            proof=proof_to_json(outcome.proof),
        )
    if isinstance(outcome, NonTheorem):
        return DecideResponse(
            logic=req.logic, formula=req.formula, verdict="non_theorem",
            countermodel=ModelPayload(**model_to_json(outcome.model)),
            world=outcome.world,
        )
    return DecideResponse(
        logic=req.logic, formula=req.formula, verdict="undetermined",
        steps=outcome.steps,
    )


def handle_countermodel(req: DecideRequest) -> CountermodelResponse:
    f = _parse_or_400(req.formula)
    outcome = decide(req.logic, f, req.max_steps)
    if isinstance(outcome, NonTheorem):
        return CountermodelResponse(
            logic=req.logic, formula=req.formula, verdict="non_theorem",
            countermodel=ModelPayload(**model_to_json(outcome.model)),
            world=outcome.world,
            dot=countermodel_dot(outcome.model, outcome.world),
        )
    verdict = "theorem" if isinstance(outcome, Theorem) else "undetermined"
    return CountermodelResponse(logic=req.logic, formula=req.formula, verdict=verdict)


def handle_oracle(req: OracleRequest) -> OracleResponse:
    f = _parse_or_400(req.formula)
    try:
        result = oracle_verdict(req.logic, f)
    except SizeLimit as e:
        raise HTTPException(status_code=400, detail=str(e)) from None
    except OracleUndetermined as e:
        raise HTTPException(status_code=409, detail=str(e)) from None
    if result.is_theorem:
        return OracleResponse(logic=req.logic, formula=req.formula, verdict="theorem")
    return OracleResponse(
        logic=req.logic, formula=req.formula, verdict="non_theorem",
        countermodel=ModelPayload(**model_to_json(result.model)),
        world=result.world,
    )


def steps_from_payload(payload: list[StepPayload]) -> Derivation:
    steps = []
    for sp in payload:
        f = parse(sp.f)
        match sp.by:
            case "KAxiom":
                by = KAxiom()
            case "SchemaAxiom":
                by = SchemaAxiom()
            case "Hypothesis":
                by = Hypothesis()
            case "MP":
                if not sp.args or len(sp.args) != 2:
                    raise ValueError("MP needs args [imp_step, arg_step]")
                by = MP(sp.args[0], sp.args[1])
            case "RN":
                if not sp.sub:
                    raise ValueError("RN needs a sub derivation")
                by = RN(steps_from_payload(sp.sub))
            case _:
                raise ValueError(f"unknown justification {sp.by!r}")
        steps.append(Step(f, by))
    return Derivation(tuple(steps))


def handle_check_derivation(req: CheckDerivationRequest) -> CheckDerivationResponse:
    try:
        derivation = steps_from_payload(req.steps)
        hyps = frozenset(parse(t) for t in req.hypotheses)
        goal = parse(req.goal) if req.goal else derivation.goal
    except (ParseError, ValueError, IndexError) as e:
        raise HTTPException(status_code=400, detail=str(e)) from None
    result = check_derivation(req.logic, hyps, derivation, goal)
    return CheckDerivationResponse(ok=result.ok, step=result.step, reason=result.reason)


def handle_correspond(req: CorrespondRequest) -> CorrespondResponse:
    if req.schema_name:
        try:
            text, props = CORRESPONDENCE_SCHEMAS[req.schema_name]
        except KeyError:
            raise HTTPException(
                status_code=400,
                detail=f"unknown schema; choose from {sorted(CORRESPONDENCE_SCHEMAS)}",
            ) from None
        if req.properties:
            props = _parse_properties(req.properties)
        name = req.schema_name
    elif req.formula:
        if not req.properties:
            raise HTTPException(status_code=400, detail="a formula needs properties")
        text, props, name = req.formula, _parse_properties(req.properties), req.formula
    else:
        raise HTTPException(status_code=400, detail="give a schema name or a formula")
    schema = _parse_or_400(text)
    try:
        holds = correspondence_check(schema, props, req.max_worlds)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e)) from None
    return CorrespondResponse(
        schema=name, properties=[p.value for p in props],
        max_worlds=req.max_worlds, holds=holds,
    )


def _parse_properties(names: list[str]) -> tuple[FrameProperty, ...]:
    out = []
    for n in names:
        try:
            out.append(FrameProperty(n))
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=f"unknown property {n!r}; choose from "
                f"{[p.value for p in FrameProperty]}",
            ) from None
    return tuple(out)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/logics")
def logics() -> list[str]:
    return sorted(LOGICS)


@app.post("/decide")
def decide_endpoint(req: DecideRequest) -> DecideResponse:
    return handle_decide(req)


@app.post("/countermodel")
def countermodel_endpoint(req: DecideRequest) -> CountermodelResponse:
    return handle_countermodel(req)


@app.post("/oracle")
def oracle_endpoint(req: OracleRequest) -> OracleResponse:
    return handle_oracle(req)


@app.post("/check-derivation")
def check_derivation_endpoint(req: CheckDerivationRequest) -> CheckDerivationResponse:
    return handle_check_derivation(req)


@app.post("/correspond")
def correspond_endpoint(req: CorrespondRequest) -> CorrespondResponse:
    return handle_correspond(req)
