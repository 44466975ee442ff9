"""FastAPI service wrapping the toolkit.

Endpoints:
    POST /ft        symbolic spectrum of a DSL signal, with the quadrature
                    oracle column by default
    POST /freqresp  magnitude/phase sweep of a differential system, with
                    poles and the stability flag
    POST /verify    run a named verification suite
    GET  /catalog   the primitive catalog with closed forms
    GET  /health    liveness probe

Application errors come back as HTTP 400 with the standard envelope; the
``kind`` field of each error object tells clients how to classify the
failure (syntax, constraint, no-convergence, ...).
"""

from __future__ import annotations

import math

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..dsl import parse_omega_spec, parse_signal_dsl, parse_system_spec, to_dsl
from ..errors import (
    CausalityViolation,
    ConstraintViolation,
    DslSyntaxError,
    ExcludedPoint,
    ExistenceViolation,
    FourierKitError,
    InvalidSystem,
    NoConvergence,
    NotSettled,
    ParityViolation,
    RootFindingFailure,
    StepTooLarge,
    UnstableSystem,
    UnsupportedNode,
)
from ..quadrature import numeric_ft
from ..spectrum import spectrum_eval, spectrum_to_text, symbolic_ft
from ..suites import catalog_entries, run_suite
from ..systems import derive_freq_response, eval_freq_response, poles
from .schemas import (
    CatalogEntryModel,
    CatalogResponse,
    ComplexValue,
    ErrorObject,
    ErrorResponse,
    FreqRespConfig,
    FreqRespPoint,
    FreqRespRequest,
    FreqRespResponse,
    FtConfig,
    FtPoint,
    FtRequest,
    FtResponse,
    PoleValue,
    QuadratureInfo,
    ReportModel,
    VerifyConfig,
    VerifyRequest,
    VerifyResponse,
)

_ERROR_KINDS = (
    (DslSyntaxError, "syntax"),
    (ConstraintViolation, "constraint"),
    (InvalidSystem, "invalid-system"),
    (ExcludedPoint, "excluded-point"),
    (NoConvergence, "no-convergence"),
    (ExistenceViolation, "existence"),
    (ParityViolation, "precondition"),
    (CausalityViolation, "precondition"),
    (UnstableSystem, "unstable-system"),
    (StepTooLarge, "sim-config"),
    (NotSettled, "not-settled"),
    (RootFindingFailure, "root-finding"),
    (UnsupportedNode, "unsupported"),
)


def _classify(exc: FourierKitError) -> ErrorObject:
    kind = "internal"
    for cls, name in _ERROR_KINDS:
        if isinstance(exc, cls):
            kind = name
            break
    position = getattr(exc, "position", None)
    if position is None and getattr(exc, "span", None):
        position = exc.span[0]
    omega = getattr(exc, "omega", None)
    return ErrorObject(kind=kind, message=str(exc), position=position, omega=omega)


def _error_response(command: str, exc: FourierKitError) -> JSONResponse:
    body = ErrorResponse(command=command, errors=[_classify(exc)])
    return JSONResponse(status_code=400, content=body.model_dump())


def create_app() -> FastAPI:
    app = FastAPI(
        title="fourierkit",
        version=__version__,
        description="Symbolic-numeric Fourier analysis of continuous-time signals and LTI systems",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/ft", response_model=FtResponse, responses={400: {"model": ErrorResponse}})
    def ft(req: FtRequest):
        try:
            f = parse_signal_dsl(req.signal)
            grid = parse_omega_spec(req.omega)
            cfg = req.quadrature.to_config()
            F = symbolic_ft(f)
        except FourierKitError as exc:
            return _error_response("ft", exc)

        results = []
        errors = []
        for w in grid:
            try:
                sym = spectrum_eval(F, w)
            except ExcludedPoint as exc:
                errors.append(_classify(exc))
                continue
            point = FtPoint(omega=w, symbolic=ComplexValue.of(sym))
            if req.numeric:
                try:
                    q = numeric_ft(f, w, cfg)
                except FourierKitError as exc:
                    errors.append(_classify(exc))
                    results.append(point)
                    continue
                resid = abs(q.value - sym) / (1.0 + abs(sym))
                point = FtPoint(
                    omega=w,
                    symbolic=ComplexValue.of(sym),
                    numeric=ComplexValue.of(q.value),
                    residual=resid,
                    agrees=resid <= req.check_tol,
                    quadrature=QuadratureInfo(
                        error_estimate=q.error_estimate,
                        tail_bound=q.tail_bound,
                        truncation_T=q.truncation_T,
                    ),
                )
            results.append(point)
        response = FtResponse(
            config=FtConfig(
                signal=req.signal,
                omega=list(grid),
                numeric=req.numeric,
                check_tol=req.check_tol,
                quadrature=req.quadrature,
            ),
            signal=to_dsl(f),
            spectrum=spectrum_to_text(F),
            results=results,
            errors=errors,
        )
        status = 400 if errors and not results else 200
        return JSONResponse(status_code=status, content=response.model_dump())

    @app.post("/freqresp", response_model=FreqRespResponse, responses={400: {"model": ErrorResponse}})
    def freqresp(req: FreqRespRequest):
        try:
            sysd = parse_system_spec(req.system)
            grid = parse_omega_spec(req.omega)
            H = derive_freq_response(sysd)
            if sysd.order >= 1:
                ps = poles(H)
                pole_values = [
                    PoleValue(value=ComplexValue.of(r), multiplicity=m)
                    for r, m in ps.roots
                ]
                stable = ps.stable
            else:
                pole_values = []
                stable = True
        except FourierKitError as exc:
            return _error_response("freqresp", exc)

        results = []
        errors = []
        for w in grid:
            try:
                z = eval_freq_response(H, w)
            except ExcludedPoint as exc:
                errors.append(_classify(exc))
                continue
            results.append(
                FreqRespPoint(
                    omega=w,
                    response=ComplexValue.of(z),
                    magnitude=abs(z),
                    phase=math.atan2(z.imag, z.real),
                )
            )
        response = FreqRespResponse(
            config=FreqRespConfig(system=req.system, omega=list(grid)),
            system=str(sysd),
            stable=stable,
            poles=pole_values,
            results=results,
            errors=errors,
        )
        status = 400 if errors and not results else 200
        return JSONResponse(status_code=status, content=response.model_dump())

    @app.post("/verify", response_model=VerifyResponse, responses={400: {"model": ErrorResponse}})
    def verify(req: VerifyRequest):
        try:
            reports = run_suite(req.suite, req.tol)
        except FourierKitError as exc:
            return _error_response("verify", exc)
        results = [
            ReportModel(
                name=r.name,
                subject=r.subject,
                grid=list(r.grid),
                residual=r.residual,
                tolerance=r.tolerance,
                passed=r.passed,
                note=r.note,
            )
            for r in reports
        ]
        response = VerifyResponse(
            config=VerifyConfig(suite=req.suite, tol=req.tol),
            passed=all(r.passed for r in results),
            results=results,
            errors=[],
        )
        return JSONResponse(status_code=200, content=response.model_dump())

    @app.get("/catalog", response_model=CatalogResponse)
    def catalog():
        entries = [
            CatalogEntryModel(
                name=e.name,
                signature=e.signature,
                description=e.description,
                spectrum=e.spectrum,
                identity=e.identity,
                oracle_only=e.oracle_only,
            )
            for e in catalog_entries()
        ]
        return CatalogResponse(results=entries)

    return app


app = create_app()
