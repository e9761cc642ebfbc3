"""Request/response models for the HTTP service (also reused by the CLI)."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

LogicName = Literal["K", "T", "K4", "GL"]


class ModelPayload(BaseModel):
    """Kripke model wire format: {"worlds":[0,1],"rel":[[0,1]],"val":{"p":[0]}}."""

    worlds: list[int]
    rel: list[tuple[int, int]] = Field(default_factory=list)
    val: dict[str, list[int]] = Field(default_factory=dict)


class DecideRequest(BaseModel):
    logic: LogicName = "K"
    formula: str
    max_steps: int = Field(default=10_000, ge=1)


class DecideResponse(BaseModel):
    logic: LogicName
    formula: str
    verdict: Literal["theorem", "non_theorem", "undetermined"]
    proof: dict | None = None
    countermodel: ModelPayload | None = None
    world: int | None = None
    steps: int | None = None


class CountermodelResponse(BaseModel):
    logic: LogicName
    formula: str
    verdict: Literal["theorem", "non_theorem", "undetermined"]
    countermodel: ModelPayload | None = None
    world: int | None = None
    dot: str | None = None


class OracleRequest(BaseModel):
    logic: LogicName = "K"
    formula: str


class OracleResponse(BaseModel):
    logic: LogicName
    formula: str
    verdict: Literal["theorem", "non_theorem"]
    countermodel: ModelPayload | None = None
    world: int | None = None


class StepPayload(BaseModel):
    """One derivation step: {"f": "<formula>", "by": "MP", "args": [0, 1]}."""

    f: str
    by: Literal["KAxiom", "SchemaAxiom", "Hypothesis", "MP", "RN"]
    args: list[int] | None = None
    sub: list["StepPayload"] | None = None


class CheckDerivationRequest(BaseModel):
    logic: LogicName = "K"
    hypotheses: list[str] = Field(default_factory=list)
    goal: str | None = None  # defaults to the last step's formula
    steps: list[StepPayload]


class CheckDerivationResponse(BaseModel):
    ok: bool
    step: int | None = None
    reason: str | None = None


class CorrespondRequest(BaseModel):
    schema_name: str | None = Field(default=None, alias="schema")
    formula: str | None = None
    properties: list[str] | None = None
    max_worlds: int = Field(default=3, ge=1)

    model_config = {"populate_by_name": True}


class CorrespondResponse(BaseModel):
    schema_name: str = Field(alias="schema")
    properties: list[str]
    max_worlds: int
    holds: bool

    model_config = {"populate_by_name": True}
