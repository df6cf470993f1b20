"""FastAPI application wrapping the core package.

Handlers are plain synchronous functions over the pydantic schemas; the CLI
calls them in process by default, and over HTTP when pointed at a server.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import montecarlo, presets, steering
from ..errors import DomainError
from . import models


def get_health() -> models.HealthModel:
    return models.HealthModel()

def list_scenarios() -> models.ScenarioListModel:
    return models.ScenarioListModel(names=presets.scenario_names())


def get_scenario(name: str) -> models.ScenarioReportModel:
    try:
        return models.ScenarioReportModel.from_core(presets.scenario_report(name))
    except DomainError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc


def evaluate(request: models.ParamsModel) -> models.SteeringReportModel:
    try:
        return models.SteeringReportModel.from_core(steering.evaluate_inequality(request.to_core()))
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def fn_table(request: models.FnTableRequest) -> models.FnTableModel:
    try:
        return models.build_fn_table(request.n_max)
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def run_sweep(request: models.SweepRequest) -> models.SweepResultModel:
    from ..sweep import run_sweep as core_run_sweep

    try:
        return models.SweepResultModel.from_core(core_run_sweep(request.to_core()))
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def simulate(request: models.SimulateRequest) -> models.SimResultModel:
    try:
        return models.SimResultModel.from_core(montecarlo.run_experiment(request.to_core()))
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="photonsteer",
        description="Feasibility analysis and simulation of split-single-photon steering experiments",
        version="0.1.0",
    )
    app.get("/health", response_model=models.HealthModel)(get_health)
    app.get("/scenarios", response_model=models.ScenarioListModel)(list_scenarios)
    app.get("/scenario/{name}", response_model=models.ScenarioReportModel)(get_scenario)
    app.post("/evaluate", response_model=models.SteeringReportModel)(evaluate)
    app.post("/fn-table", response_model=models.FnTableModel)(fn_table)
    app.post("/sweep", response_model=models.SweepResultModel)(run_sweep)
    app.post("/simulate", response_model=models.SimResultModel)(simulate)
    return app


app = create_app()
