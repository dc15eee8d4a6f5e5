"""Request/response models for the HTTP API.

Complex numbers travel as [re, im] pairs; bare numbers are accepted on
input wherever a pair is allowed.
"""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

Coeff = Union[float, tuple[float, float]]
Pair = tuple[float, float]


def to_complex(v: Coeff) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def from_complex(z: complex) -> Pair:
    re, im = float(z.real), float(z.imag)
    return (re + 0.0 if re == 0 else re, im + 0.0 if im == 0 else im)


class FactorModel(BaseModel):
    a: Coeff
    b: Coeff
    c: Coeff
    d: Coeff = 0.0

    def quad(self) -> tuple[complex, complex, complex, complex]:
        return (to_complex(self.a), to_complex(self.b), to_complex(self.c), to_complex(self.d))


class SymbolRequest(BaseModel):
    factors: list[FactorModel] = Field(min_length=1)
    at: Optional[Pair] = None


class SymbolEntry(BaseModel):
    row: int
    col: int
    num: list[Pair]
    den: list[Pair]


class SymbolResponse(BaseModel):
    m: int
    entries: list[SymbolEntry]
    rendered: str


class SymbolEvalResponse(BaseModel):
    m: int
    matrix: list[list[Pair]]


class RangeRequest(BaseModel):
    factors: list[FactorModel] = Field(min_length=1)
    tau_samples: int = Field(default=720, ge=16)
    angle_samples: int = Field(default=720, ge=16)
    dense: bool = False
    seed: int = 0


class RangeResponse(BaseModel):
    hull: list[Pair]
    radius: float
    points: Optional[list[Pair]] = None


class BoundaryRequest(BaseModel):
    a: float = Field(gt=0)
    c: float = Field(gt=0)
    samples: int = Field(default=1024, ge=16)
    inner: bool = False
    check: bool = False


class BoundaryRow(BaseModel):
    theta: float
    x: float
    y: float


class BoundaryCheck(BaseModel):
    outer_f_residual: float
    outer_ftheta_residual: float
    inner_f_residual: float
    inner_ftheta_residual: float
    convex: bool
    gap: float
    reparam_dev: float


class BoundaryResponse(BaseModel):
    outer: list[BoundaryRow]
    inner: Optional[list[BoundaryRow]] = None
    check: Optional[BoundaryCheck] = None


class ZeroTestRequest(BaseModel):
    c1: Optional[float] = None
    c2: Optional[float] = None
    factors: Optional[list[FactorModel]] = None
    tau_samples: int = Field(default=360, ge=16)


class ZeroTestResponse(BaseModel):
    verdict: str
    method: str
    product: Optional[float] = None
    quad_zeros: Optional[Pair] = None
    witness_count: int = 0
    witness_example: Optional[Pair] = None


class VerifyRequest(BaseModel):
    factors: list[FactorModel] = Field(min_length=1)
    seed: int = 0


class CheckLine(BaseModel):
    name: str
    max_dev: float
    tol: float
    passed: bool


class VerifyResponse(BaseModel):
    checks: list[CheckLine]
    all_pass: bool


class PlotRequest(BaseModel):
    rows: list[list[float]] = Field(min_length=1)
    with_circles: int = Field(default=0, ge=0)
    a: Optional[float] = None
    c: Optional[float] = None
    styles: Optional[dict[str, str]] = None  # element class -> "fill:stroke:width"


class PlotResponse(BaseModel):
    svg: str
