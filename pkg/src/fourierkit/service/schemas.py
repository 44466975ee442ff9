"""Request/response models for the HTTP service.

Every response carries the same envelope: command, the echoed config,
results[] and errors[].  Complex numbers travel as {re, im} pairs.  Nothing
time- or host-dependent goes into the payload, so identical requests produce
byte-identical bodies.
"""

from __future__ import annotations

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field

from ..quadrature import QuadratureConfig


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        return cls(re=float(z.real), im=float(z.imag))


class ErrorObject(BaseModel):
    kind: str
    message: str
    position: Optional[int] = None
    omega: Optional[float] = None


class QuadratureSettings(BaseModel):
    rel_tol: float = Field(default=1e-9, gt=0)
    abs_tol: float = Field(default=1e-12, gt=0)
    initial_half_width: float = Field(default=32.0, gt=0)
    max_half_width: float = Field(default=float(2**20), gt=0)
    max_subdivisions: int = Field(default=10**6, ge=1)

    def to_config(self) -> QuadratureConfig:
        return QuadratureConfig(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            initial_half_width=self.initial_half_width,
            max_half_width=self.max_half_width,
            max_subdivisions=self.max_subdivisions,
        )


# --- ft ---------------------------------------------------------------------


class FtRequest(BaseModel):
    signal: str
    omega: Union[str, List[float]]
    numeric: bool = True
    check_tol: float = Field(default=1e-6, gt=0)
    quadrature: QuadratureSettings = QuadratureSettings()


class FtConfig(BaseModel):
    signal: str
    omega: List[float]
    numeric: bool
    check_tol: float
    quadrature: QuadratureSettings


class QuadratureInfo(BaseModel):
    error_estimate: float
    tail_bound: float
    truncation_T: float


class FtPoint(BaseModel):
    omega: float
    symbolic: ComplexValue
    numeric: Optional[ComplexValue] = None
    residual: Optional[float] = None
    agrees: Optional[bool] = None
    quadrature: Optional[QuadratureInfo] = None


class FtResponse(BaseModel):
    command: Literal["ft"] = "ft"
    config: FtConfig
    signal: str
    spectrum: str
    results: List[FtPoint]
    errors: List[ErrorObject]


# --- freqresp -----------------------------------------------------------------


class FreqRespRequest(BaseModel):
    system: str
    omega: Union[str, List[float]]


class FreqRespConfig(BaseModel):
    system: str
    omega: List[float]


class PoleValue(BaseModel):
    value: ComplexValue
    multiplicity: int


class FreqRespPoint(BaseModel):
    omega: float
    response: ComplexValue
    magnitude: float
    phase: float


class FreqRespResponse(BaseModel):
    command: Literal["freqresp"] = "freqresp"
    config: FreqRespConfig
    system: str
    stable: Optional[bool]
    poles: List[PoleValue]
    results: List[FreqRespPoint]
    errors: List[ErrorObject]


# --- verify -------------------------------------------------------------------


class VerifyRequest(BaseModel):
    suite: Literal["all", "table2", "relations", "catalog", "ode"]
    tol: Optional[float] = Field(default=None, gt=0)


class VerifyConfig(BaseModel):
    suite: str
    tol: Optional[float]


class ReportModel(BaseModel):
    name: str
    subject: str
    grid: List[float]
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


class VerifyResponse(BaseModel):
    command: Literal["verify"] = "verify"
    config: VerifyConfig
    passed: bool
    results: List[ReportModel]
    errors: List[ErrorObject]


# --- catalog ------------------------------------------------------------------


class CatalogEntryModel(BaseModel):
    name: str
    signature: str
    description: str
    spectrum: str
    identity: str
    oracle_only: bool


class CatalogResponse(BaseModel):
    command: Literal["catalog"] = "catalog"
    config: dict = {}
    results: List[CatalogEntryModel]
    errors: List[ErrorObject] = []


class ErrorResponse(BaseModel):
    command: str
    config: dict = {}
    results: List = []
    errors: List[ErrorObject]
