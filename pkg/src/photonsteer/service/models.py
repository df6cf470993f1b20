"""Request/response schemas shared by the service and the CLI client.

Every response document carries a top-level ``schema_version``.  Floats are
serialized with Python's shortest round-tripping representation, so
parse(emit(x)) recovers x exactly.  Quantities that can be undefined or have
infinite error bars travel as ``null`` rather than as non-standard JSON
constants.
"""

from __future__ import annotations

from math import isfinite, isnan

from pydantic import BaseModel, Field

from .. import bounds, montecarlo, presets, steering, sweep
from ..states import ExperimentParams

SCHEMA_VERSION = "1"


def _finite_or_none(value: float | None) -> float | None:
    if value is None or not isfinite(value):
        return None
    return float(value)


class ParamsModel(BaseModel):
    eta: float = Field(ge=0.0, le=1.0)
    chi: float = Field(ge=0.0, le=1.0)
    eta_h: float = Field(default=1.0, ge=0.0, le=1.0)
    eta_p: float = Field(default=0.0, ge=0.0, le=1.0)
    n_settings: int = Field(default=8, ge=1)
    label: str = ""

    def to_core(self) -> ExperimentParams:
        return ExperimentParams(**self.model_dump())

    @classmethod
    def from_core(cls, params: ExperimentParams) -> "ParamsModel":
        return cls(
            eta=params.eta,
            chi=params.chi,
            eta_h=params.eta_h,
            eta_p=params.eta_p,
            n_settings=params.n_settings,
            label=params.label,
        )


class ConditionModel(BaseModel):
    lhs_value: float
    satisfied: bool


class PhotodetectionModel(BaseModel):
    p_plus: float
    p_minus: float
    z_plus: float
    z_minus: float | None
    degenerate: bool


class SteeringReportModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    params: ParamsModel
    lhs: float
    rhs_finite: float
    rhs_infinite: float
    margin: float
    margin_infinite: float
    verdict: str
    sufficient: ConditionModel
    necessary: ConditionModel
    budget_simple_exceeded: bool
    degenerate_chi: bool
    photodetection: PhotodetectionModel

    @classmethod
    def from_core(cls, report: steering.SteeringReport) -> "SteeringReportModel":
        pd = report.photodetection
        return cls(
            params=ParamsModel.from_core(report.params),
            lhs=report.lhs,
            rhs_finite=report.rhs_finite,
            rhs_infinite=report.rhs_infinite,
            margin=report.margin,
            margin_infinite=report.margin_infinite,
            verdict=report.verdict,
            sufficient=ConditionModel(
                lhs_value=report.sufficient.lhs_value, satisfied=report.sufficient.satisfied
            ),
            necessary=ConditionModel(
                lhs_value=report.necessary.lhs_value, satisfied=report.necessary.satisfied
            ),
            budget_simple_exceeded=report.budget_simple_exceeded,
            degenerate_chi=report.degenerate_chi,
            photodetection=PhotodetectionModel(
                p_plus=pd.p_plus,
                p_minus=pd.p_minus,
                z_plus=pd.z_plus,
                z_minus=None if isnan(pd.z_minus) else pd.z_minus,
                degenerate=pd.degenerate,
            ),
        )


class ExpectedCheckModel(BaseModel):
    quantity: str
    expected: float
    computed: float
    passed: bool
    source: str


class ScenarioReportModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    name: str
    description: str
    params: ParamsModel
    report: SteeringReportModel
    checks: list[ExpectedCheckModel]
    all_passed: bool

    @classmethod
    def from_core(cls, scenario: presets.ScenarioReport) -> "ScenarioReportModel":
        return cls(
            name=scenario.preset.name,
            description=scenario.preset.description,
            params=ParamsModel.from_core(scenario.preset.params),
            report=SteeringReportModel.from_core(scenario.report),
            checks=[
                ExpectedCheckModel(
                    quantity=check.quantity,
                    expected=check.expected,
                    computed=check.computed,
                    passed=check.passed,
                    source=check.source,
                )
                for check in scenario.checks
            ],
            all_passed=scenario.all_passed,
        )


class ScenarioListModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    names: list[str]


class FnTableRequest(BaseModel):
    n_max: int = Field(ge=1)


class FnTableRow(BaseModel):
    n: int
    value: float
    excess_over_limit: float
    enumeration_checked: bool


class FnTableModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    limit: float
    rows: list[FnTableRow]


class SweepAxisModel(BaseModel):
    param: str
    start: float
    stop: float
    steps: int = Field(ge=2)

    def to_core(self) -> sweep.SweepAxis:
        return sweep.SweepAxis(param=self.param, start=self.start, stop=self.stop, steps=self.steps)


class SweepRequest(BaseModel):
    axis1: SweepAxisModel
    axis2: SweepAxisModel
    fixed: ParamsModel
    quantity: str
    contour_level: float | None = None

    def to_core(self) -> sweep.SweepSpec:
        return sweep.SweepSpec(
            axis1=self.axis1.to_core(),
            axis2=self.axis2.to_core(),
            fixed=self.fixed.to_core(),
            quantity=self.quantity,
            contour_level=self.contour_level,
        )


class SweepCellModel(BaseModel):
    value1: float
    value2: float
    value: float | None
    flag: str


class SweepResultModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    quantity: str
    axis1: SweepAxisModel
    axis2: SweepAxisModel
    fixed: ParamsModel
    cells: list[SweepCellModel]
    contour_level: float | None
    contour: list[tuple[float, float]] | None

    @classmethod
    def from_core(cls, result: sweep.SweepResult) -> "SweepResultModel":
        spec = result.spec
        return cls(
            quantity=spec.quantity,
            axis1=SweepAxisModel(
                param=spec.axis1.param, start=spec.axis1.start, stop=spec.axis1.stop, steps=spec.axis1.steps
            ),
            axis2=SweepAxisModel(
                param=spec.axis2.param, start=spec.axis2.start, stop=spec.axis2.stop, steps=spec.axis2.steps
            ),
            fixed=ParamsModel.from_core(spec.fixed),
            cells=[
                SweepCellModel(value1=c.value1, value2=c.value2, value=c.value, flag=c.flag)
                for c in result.cells
            ],
            contour_level=spec.contour_level,
            contour=list(result.contour) if result.contour is not None else None,
        )

    def to_csv_text(self) -> str:
        lines = ["param1,param2,value,flag"]
        for cell in self.cells:
            value = "nan" if cell.value is None else repr(cell.value)
            lines.append(f"{cell.value1!r},{cell.value2!r},{value},{cell.flag}")
        return "\n".join(lines) + "\n"


class SimulateRequest(BaseModel):
    params: ParamsModel
    shots_per_setting: int = Field(ge=1)
    seed: int
    strategy: str = montecarlo.HONEST_QUANTUM
    transcript: bool = False

    def to_core(self) -> montecarlo.SimConfig:
        return montecarlo.SimConfig(
            params=self.params.to_core(),
            shots_per_setting=self.shots_per_setting,
            seed=self.seed,
            strategy=self.strategy,
            transcript=self.transcript,
        )


class SettingEstimateModel(BaseModel):
    setting_id: str
    theta: float
    correlation: float
    std_error: float | None
    shots: int


class ClickEstimatesModel(BaseModel):
    p_plus: float
    p_plus_se: float | None
    z_plus: float | None
    z_plus_se: float | None
    z_minus: float | None
    z_minus_se: float | None
    clicks: int
    shots: int


class EmpiricalReportModel(BaseModel):
    lhs: float
    lhs_se: float | None
    rhs: float
    rhs_se: float | None
    margin: float
    margin_se: float | None
    verdict: str
    verdict_sigmas: float
    degenerate_errors: bool


class SimResultModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    config: SimulateRequest
    rng_algorithm: str = montecarlo.RNG_ALGORITHM
    per_setting: list[SettingEstimateModel]
    clicks: ClickEstimatesModel
    report: EmpiricalReportModel
    transcript: list[tuple[str, int, str, int]] | None

    @classmethod
    def from_core(cls, result: montecarlo.SimResult) -> "SimResultModel":
        clicks = result.clicks
        report = result.report
        return cls(
            config=SimulateRequest(
                params=ParamsModel.from_core(result.config.params),
                shots_per_setting=result.config.shots_per_setting,
                seed=result.config.seed,
                strategy=result.config.strategy,
                transcript=result.config.transcript,
            ),
            per_setting=[
                SettingEstimateModel(
                    setting_id=s.setting_id,
                    theta=s.theta,
                    correlation=s.correlation,
                    std_error=_finite_or_none(s.std_error),
                    shots=s.shots,
                )
                for s in result.per_setting
            ],
            clicks=ClickEstimatesModel(
                p_plus=clicks.p_plus,
                p_plus_se=_finite_or_none(clicks.p_plus_se),
                z_plus=_finite_or_none(clicks.z_plus),
                z_plus_se=_finite_or_none(clicks.z_plus_se),
                z_minus=_finite_or_none(clicks.z_minus),
                z_minus_se=_finite_or_none(clicks.z_minus_se),
                clicks=clicks.clicks,
                shots=clicks.shots,
            ),
            report=EmpiricalReportModel(
                lhs=report.lhs,
                lhs_se=_finite_or_none(report.lhs_se),
                rhs=report.rhs,
                rhs_se=_finite_or_none(report.rhs_se),
                margin=report.margin,
                margin_se=_finite_or_none(report.margin_se),
                verdict=report.verdict,
                verdict_sigmas=montecarlo.VERDICT_SIGMAS,
                degenerate_errors=report.degenerate_errors,
            ),
            transcript=list(result.transcript) if result.transcript is not None else None,
        )

    def transcript_csv_text(self) -> str:
        if self.transcript is None:
            raise ValueError("simulation was run without transcript recording")
        lines = ["setting_id,alice_report,bob_axis,bob_outcome"]
        lines.extend(f"{s},{a},{axis},{b}" for s, a, axis, b in self.transcript)
        return "\n".join(lines) + "\n"


class HealthModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    status: str = "ok"


def build_fn_table(n_max: int) -> FnTableModel:
    """f(n) rows up to n_max, enumeration-checked where the cap allows."""
    limit = bounds.infinite_setting_bound()
    rows = []
    for n in range(1, n_max + 1):
        value = bounds.finite_setting_bound(n).value
        checked = False
        if n <= 16:
            checked = abs(value - bounds.finite_setting_bound_enumerated(n)) <= 1e-12
        rows.append(
            FnTableRow(n=n, value=value, excess_over_limit=value - limit, enumeration_checked=checked)
        )
    return FnTableModel(limit=limit, rows=rows)
