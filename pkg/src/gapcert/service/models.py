"""Pydantic request/response models for the certification service.

Every rational travels as the text form "a/b" or "a"; big integers travel
as decimal strings so nothing is ever squeezed through a float.  The
certificate schema (kind, t, s, p, q, n, W, A_upper, gap_lower_bound,
prec_bits) is stable and is the one consumers should pin.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class RunConfig(BaseModel):
    """Shared knobs; defaults match the CLI."""

    prec: int = Field(default=256, ge=32)
    n_max: int = Field(default=64, ge=1)
    tol: float = 1e-14
    quad_node_cap: int = Field(default=4096, ge=8)


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str


class BallModel(BaseModel):
    mid: str
    rad: str


class CertificateModel(BaseModel):
    kind: Literal["tan", "bessel"]
    t: str
    s: Optional[str] = None
    p: int
    q: int
    n: int
    W: str
    A_upper: str
    gap_lower_bound: str
    prec_bits: int


class CertTanRequest(BaseModel):
    t: str
    pq: str
    n_max: int = Field(default=64, ge=1)
    prec: int = Field(default=256, ge=32)
    verify: bool = False


class CertBesselRequest(BaseModel):
    s: str
    t: str
    pq: str
    n_max: int = Field(default=64, ge=1)
    prec: int = Field(default=256, ge=32)
    verify: bool = False


class CertResponse(BaseModel):
    status: Literal["ok", "no_witness", "inconclusive"]
    certificate: Optional[CertificateModel] = None
    verified: Optional[bool] = None
    message: Optional[str] = None


class TraceRequest(BaseModel):
    kind: Literal["tan", "bessel"]
    t: str
    pq: str
    s: Optional[str] = None
    n_max: int = Field(default=16, ge=0)
    prec: int = Field(default=256, ge=32)


class TraceRowModel(BaseModel):
    n: int
    W: str
    A_abs_ub: float
    flagged: bool


class TraceResponse(BaseModel):
    status: Literal["ok", "inconclusive"]
    rows: list[TraceRowModel] = []
    message: Optional[str] = None


class RemainderRequest(BaseModel):
    n: int = Field(ge=0)
    t: str
    prec: int = Field(default=256, ge=32)


class RemainderResponse(BaseModel):
    n: int
    t: str
    value: BallModel


class ConvergentRequest(BaseModel):
    n: int = Field(ge=1)
    t: Optional[str] = None


class ConvergentResponse(BaseModel):
    n: int
    p_poly: str
    q_poly: str
    p_at_t: Optional[str] = None
    q_at_t: Optional[str] = None
    value_at_t: Optional[str] = None


class RatioRequest(BaseModel):
    s: str
    t: str
    prec: int = Field(default=256, ge=32)
    cf_depth: Optional[int] = Field(default=None, ge=1)


class RatioResponse(BaseModel):
    status: Literal["ok", "inconclusive"]
    s: str
    t: str
    value: Optional[BallModel] = None
    prec_used: Optional[int] = None
    cf_depth: Optional[int] = None
    cf_value: Optional[str] = None
    message: Optional[str] = None


class DecayRequest(BaseModel):
    t: str
    s: Optional[str] = None  # present: Bessel-side table of |V_n|
    n_max: int = Field(default=64, ge=1)
    prec: int = Field(default=256, ge=32)


class DecayRowModel(BaseModel):
    n: int
    bound: str
    poisson_ratio: Optional[float] = None


class DecayResponse(BaseModel):
    t: str
    s: Optional[str] = None
    crossover: int
    rows: list[DecayRowModel]


class NivenRequest(BaseModel):
    n: int = Field(ge=0)
    prec: int = Field(default=256, ge=32)


class NivenResponse(BaseModel):
    n: int
    value: BallModel


class VerifyIdentitiesRequest(BaseModel):
    n_max: int = Field(default=8, ge=0)
    order: int = Field(default=40, ge=2)
    orders: list[str] = ["0", "1/2", "-1/2", "1/3", "-3/2"]
    coeff_count: int = Field(default=30, ge=2)


class SeriesHeadModel(BaseModel):
    n: int
    terms: list[tuple[int, str]]


class VerifyIdentitiesResponse(BaseModel):
    status: Literal["pass"]
    series_families: list[str]
    series_heads: list[SeriesHeadModel]
    bessel_orders: list[str]
    bessel_families: list[str]


class Lemma1Request(BaseModel):
    nu: str
    t: str
    n_lo: int = 0
    n_hi: int = 10
    prec_cap: int = Field(default=16384, ge=32)


class Lemma1PairModel(BaseModel):
    n: int
    order_low: str
    order_high: str
    certified: bool
    witness_order: Optional[str] = None
    sign: Optional[int] = None
    prec_used: Optional[int] = None


class Lemma1Response(BaseModel):
    status: Literal["ok", "inconclusive"]
    pairs: list[Lemma1PairModel]


class NonzeroRequest(BaseModel):
    s: str
    t: str
    prec_cap: int = Field(default=16384, ge=32)


class NonzeroResponse(BaseModel):
    status: Literal["ok", "inconclusive"]
    s: str
    t: str
    sign: Optional[int] = None
    prec_used: Optional[int] = None
    message: Optional[str] = None


class QuadCheckRequest(BaseModel):
    which: Literal["hermite", "poisson", "iterated"]
    t: str
    n: Optional[int] = Field(default=None, ge=0)
    nu: Optional[str] = None
    tol: float = 1e-12
    node_cap: int = Field(default=4096, ge=8)
    prec: int = Field(default=256, ge=32)


class QuadCheckResponse(BaseModel):
    status: Literal["ok", "inconclusive"]
    which: str
    value: Optional[str] = None
    est_err: Optional[float] = None
    nodes_used: Optional[int] = None
    reference: Optional[str] = None
    abs_diff: Optional[float] = None
    within_tol: Optional[bool] = None
    message: Optional[str] = None
