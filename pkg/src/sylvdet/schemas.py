"""Pydantic request/response models: the wire schema for the service and
the JSON format of every CLI report.

All rationals travel as canonical strings ("3", "-4/7") and polynomials as
ascending coefficient arrays of such strings. Every report has the shape
{"command", "config", "cases", "summary"}; cases are discriminated by
"kind".
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

FAMILY_NAMES = (
    "sylvester-d",
    "sylvester-b",
    "sylvester-a",
    "krawtchouk",
    "dual-hahn",
    "hahn",
    "racah",
    "q-racah",
)

FamilyName = Literal[
    "sylvester-d",
    "sylvester-b",
    "sylvester-a",
    "krawtchouk",
    "dual-hahn",
    "hahn",
    "racah",
    "q-racah",
]

CommandName = Literal["eval", "verify", "reduce", "identity", "table"]


class RunOptions(BaseModel):
    """Request body shared by all endpoints; each command normalizes the
    dimension sugar (dim / dims / max_dim) into its own defaults."""

    model_config = ConfigDict(extra="forbid")

    family: str = "all"
    dim: Optional[int] = None
    dims: Optional[tuple[int, int]] = None
    max_dim: Optional[int] = None
    params: dict[str, str] = Field(default_factory=dict)
    samples: int = 1
    seed: int = 0
    trials: int = 20
    max_n: int = 8
    trace: bool = False
    paper_literal: bool = False
    variant: Optional[str] = None


class RunConfig(BaseModel):
    """Canonical, fully-resolved configuration echoed into every report.
    Identical configs (seed included) produce byte-identical reports."""

    command: CommandName
    family: str
    dim_lo: int
    dim_hi: int
    params: dict[str, str]
    samples: int
    seed: int
    trials: int
    max_n: int
    trace: bool
    paper_literal: bool
    variant: Optional[str]


class VerifyCase(BaseModel):
    kind: Literal["verify"] = "verify"
    family: FamilyName
    dim: int
    params: dict[str, str]
    seed: Optional[int] = None
    charpoly: list[str]
    closed_form: list[str]
    oracle: list[str]
    closed_match: bool
    oracle_match: bool
    x_charpoly: Optional[list[str]] = None
    x_closed_form: Optional[list[str]] = None
    x_match: Optional[bool] = None
    paper_literal: bool = False
    witness: Optional[str] = None
    passed: bool


class InductionCase(BaseModel):
    kind: Literal["induction"] = "induction"
    family: FamilyName
    dim: int
    params: dict[str, str]
    seed: Optional[int] = None
    pulled_roots: list[str]
    scale: str
    offset: str
    child_dim: int
    holds: bool
    passed: bool


class BLeadingCase(BaseModel):
    kind: Literal["b-leading"] = "b-leading"
    dim: int
    x0: str
    holds: bool
    passed: bool


class AFamilyCase(BaseModel):
    kind: Literal["a-family"] = "a-family"
    dim: int
    holds: bool
    passed: bool


class WitnessModel(BaseModel):
    stage: str
    row: int
    col: int
    expected: str
    actual: str


class TraceMatrix(BaseModel):
    name: str
    rows: list[list[str]]


class ReduceCase(BaseModel):
    kind: Literal["reduce"] = "reduce"
    family: FamilyName
    dim: int
    params: dict[str, str]
    seed: Optional[int] = None
    zero_block_ok: bool
    leading_eigs: list[str]
    leading_eigs_ok: bool
    trailing_tridiagonal_ok: bool
    trailing_match_ok: bool
    pulled_roots: list[str]
    scale: str
    offset: str
    child_dim: int
    witness: Optional[WitnessModel] = None
    trace: Optional[list[TraceMatrix]] = None
    passed: bool


class IdentityCase(BaseModel):
    kind: Literal["identity"] = "identity"
    n: int
    dim: int
    trials: int
    variant: str
    vacuous: bool
    holds: bool
    passed: bool


class EvalCase(BaseModel):
    kind: Literal["eval"] = "eval"
    family: FamilyName
    dim: int
    params: dict[str, str]
    seed: Optional[int] = None
    variable: str
    charpoly: list[str]
    pretty: str
    factored: str
    closed_form: list[str]
    match: bool
    witness: Optional[str] = None
    passed: bool


class TableRowCase(BaseModel):
    kind: Literal["table-row"] = "table-row"
    family: FamilyName
    dim: int
    factored: str
    coeffs: list[str]
    passed: bool


Case = Annotated[
    Union[
        VerifyCase,
        InductionCase,
        BLeadingCase,
        AFamilyCase,
        ReduceCase,
        IdentityCase,
        EvalCase,
        TableRowCase,
    ],
    Field(discriminator="kind"),
]


class Summary(BaseModel):
    total: int
    passed: int
    failed: int


class Report(BaseModel):
    command: CommandName
    config: RunConfig
    cases: list[Case]
    summary: Summary
