"""FastAPI wiring around the pure handlers."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import GapcertError, Inconclusive, NoWitnessFound
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(
        title="gapcert",
        description=(
            "Certified lower bounds on how far r*tan(r) and Bessel-function "
            "ratios stay from a given rational, plus the exact machinery "
            "behind them."
        ),
        version=handlers.health().version,
    )

    @app.exception_handler(GapcertError)
    async def _domain_error(request: Request, exc: GapcertError):
        # Cap-limited outcomes are encoded as statuses by the handlers; an
        # escape here means the input itself was unusable.
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/v1/health", response_model=models.HealthResponse)
    def health():
        return handlers.health()

    @app.post("/v1/cert/tan", response_model=models.CertResponse)
    def cert_tan(req: models.CertTanRequest):
        return handlers.cert_tan(req)

    @app.post("/v1/cert/bessel", response_model=models.CertResponse)
    def cert_bessel(req: models.CertBesselRequest):
        return handlers.cert_bessel(req)

    @app.post("/v1/trace", response_model=models.TraceResponse)
    def trace(req: models.TraceRequest):
        return handlers.trace(req)

    @app.post("/v1/remainder", response_model=models.RemainderResponse)
    def remainder(req: models.RemainderRequest):
        return handlers.remainder(req)

    @app.post("/v1/convergent", response_model=models.ConvergentResponse)
    def convergent(req: models.ConvergentRequest):
        return handlers.convergent(req)

    @app.post("/v1/ratio", response_model=models.RatioResponse)
    def ratio(req: models.RatioRequest):
        return handlers.ratio(req)

    @app.post("/v1/decay", response_model=models.DecayResponse)
    def decay(req: models.DecayRequest):
        return handlers.decay(req)

    @app.post("/v1/niven", response_model=models.NivenResponse)
    def niven(req: models.NivenRequest):
        return handlers.niven(req)

    @app.post("/v1/identities", response_model=models.VerifyIdentitiesResponse)
    def identities(req: models.VerifyIdentitiesRequest):
        return handlers.verify_identities(req)

    @app.post("/v1/lemma1", response_model=models.Lemma1Response)
    def lemma1(req: models.Lemma1Request):
        return handlers.lemma1(req)

    @app.post("/v1/nonzero", response_model=models.NonzeroResponse)
    def nonzero(req: models.NonzeroRequest):
        return handlers.nonzero(req)

    @app.post("/v1/quad", response_model=models.QuadCheckResponse)
    def quad(req: models.QuadCheckRequest):
        return handlers.quad_check(req)

    return app


app = create_app()
