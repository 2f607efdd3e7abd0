"""HTTP service wrapping the verification suites and the main constructions.

Parameters travel as exact "p/q" strings so nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, field_validator

from sklytwist import points as points_mod
from sklytwist import twisting
from sklytwist.klein import CocycleTable, GradingAssignment
from sklytwist.presentations import (
    InvalidParameters,
    field_spec_to_json,
    omega_elements,
    sklyanin_presentation,
    theta_elements,
)
from sklytwist.scalars import FieldSpec, MissingRadicalError, ScalarError
from sklytwist.suites import SUITE_NAMES, CheckReport, RunConfig, all_passed, run_suites

ALGEBRAS = ("sklyanin", "twist", "factor", "twisted-factor")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


class ParameterModel(BaseModel):
    beta: str = "2"
    gamma: str = "3"
    alpha: str | None = Field(
        default=None,
        description="optional explicit alpha; derived from beta and gamma otherwise",
    )

    @field_validator("beta", "gamma", "alpha")
    @classmethod
    def _check_rational(cls, v: str | None) -> str | None:
        if v is not None:
            _parse_fraction(v)
        return v

    def to_config(self, degree: int = 6, algebra: str | None = None) -> RunConfig:
        return RunConfig(
            beta=_parse_fraction(self.beta),
            gamma=_parse_fraction(self.gamma),
            alpha=_parse_fraction(self.alpha) if self.alpha is not None else None,
            degree=degree,
            algebra=algebra,
        )


class VerifyRequest(ParameterModel):
    degree: int = Field(default=6, ge=0, le=8)
    suites: list[str] = ["all"]
    algebra: str | None = None


class CheckReportModel(BaseModel):
    name: str
    status: str
    details: dict
    ms: float


class VerifyResponse(BaseModel):
    reports: list[CheckReportModel]
    all_passed: bool
    counts: dict[str, int]


class PresentationRequest(ParameterModel):
    algebra: str = "twist"


class PointsResponse(BaseModel):
    field: list[dict]
    points: list[list[str]]
    orbits: dict


def _report_models(reports: list[CheckReport]) -> list[CheckReportModel]:
    return [CheckReportModel(**r.to_json_dict()) for r in reports]


def build_presentation(cfg: RunConfig, algebra: str, spec: FieldSpec):
    alpha = spec.rational(cfg.resolved_alpha())
    beta = spec.rational(cfg.beta)
    gamma = spec.rational(cfg.gamma)
    pres = sklyanin_presentation(alpha, beta, gamma)
    if algebra == "sklyanin":
        return pres
    twist = twisting.twist_presentation(
        pres, GradingAssignment.standard(), CocycleTable.standard(spec)
    )
    if algebra == "twist":
        return twist
    if algebra == "factor":
        return pres.quotient(list(omega_elements(pres)), label="factor")
    if algebra == "twisted-factor":
        return twist.quotient(list(theta_elements(twist)), label="twisted-factor")
    raise ValueError(f"unknown algebra {algebra!r}; expected one of {ALGEBRAS}")


def create_app() -> FastAPI:
    app = FastAPI(
        title="sklytwist",
        description="Exact verification of 4-dimensional Sklyanin algebras "
                    "and their Klein-four cocycle twists",
        version="0.1.0",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/suites")
    def suites() -> dict:
        return {"suites": list(SUITE_NAMES)}

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: VerifyRequest) -> VerifyResponse:
        try:
            cfg = request.to_config(degree=request.degree, algebra=request.algebra)
            reports = run_suites(cfg, request.suites)
        except KeyError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except InvalidParameters as exc:
            raise HTTPException(status_code=422, detail=f"invalid parameters: {exc}") from exc
        except (ScalarError, MissingRadicalError) as exc:
            raise HTTPException(status_code=500, detail=f"arithmetic failure: {exc}") from exc
        counts: dict[str, int] = {}
        for r in reports:
            counts[r.status] = counts.get(r.status, 0) + 1
        return VerifyResponse(
            reports=_report_models(reports),
            all_passed=all_passed(reports),
            counts=counts,
        )

    @app.post("/presentation")
    def presentation(request: PresentationRequest) -> dict:
        try:
            cfg = request.to_config()
            spec = FieldSpec.gaussian()
            pres = build_presentation(cfg, request.algebra, spec)
        except (ValueError, InvalidParameters) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return pres.to_json_dict()

    @app.post("/points", response_model=PointsResponse)
    def point_scheme(request: ParameterModel) -> PointsResponse:
        try:
            cfg = request.to_config()
            from sklytwist.suites import _radical_spec, _standard_pair

            spec = _radical_spec(cfg)
            pres, twist = _standard_pair(cfg, spec)
            alpha, beta, gamma = pres.params
            system = points_mod.multilinearize(twist)
            pts = points_mod.known_points(alpha, beta, gamma)
            orbits = points_mod.orbit_report(pts, system)
        except InvalidParameters as exc:
            raise HTTPException(status_code=422, detail=f"invalid parameters: {exc}") from exc
        except (ScalarError, MissingRadicalError) as exc:
            raise HTTPException(status_code=500, detail=f"arithmetic failure: {exc}") from exc
        return PointsResponse(
            field=field_spec_to_json(spec),
            points=[p.to_strings() for p in pts],
            orbits=orbits.to_json_dict(),
        )

    return app


app = create_app()
