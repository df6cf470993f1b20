"""Command-line front end.

The CLI is a thin client of the service layer: by default it calls the
service handlers in process, and ``--server URL`` switches the same commands
to HTTP against a running instance (see the ``serve`` subcommand).  All file
reading and writing happens on the client side; writes go through a temp file
and an atomic rename.

Subcommands: ``scenario``, ``sweep``, ``fn-table``, ``simulate``, ``serve``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import httpx
from fastapi import HTTPException
from pydantic import BaseModel, ValidationError

from .service import models
from .service.app import app as asgi_app
from .service.app import fn_table, get_scenario, list_scenarios, run_sweep, simulate


class ClientError(RuntimeError):
    pass


class ServiceClient:
    """Dispatches each operation in process or to a remote server."""

    def __init__(self, server: str | None = None):
        self._http = httpx.Client(base_url=server, timeout=600.0) if server else None

    def _request(self, method: str, path: str, response_model, body: BaseModel | None = None):
        kwargs = {"json": json.loads(body.model_dump_json())} if body is not None else {}
        response = self._http.request(method, path, **kwargs)
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ClientError(f"server returned {response.status_code}: {detail}")
        return response_model.model_validate(response.json())

    def _local(self, handler, *args):
        try:
            return handler(*args)
        except HTTPException as exc:
            raise ClientError(str(exc.detail)) from exc

    def scenario_names(self) -> list[str]:
        if self._http is None:
            return self._local(list_scenarios).names
        return self._request("GET", "/scenarios", models.ScenarioListModel).names

    def scenario(self, name: str) -> models.ScenarioReportModel:
        if self._http is None:
            return self._local(get_scenario, name)
        return self._request("GET", f"/scenario/{name}", models.ScenarioReportModel)

    def fn_table(self, n_max: int) -> models.FnTableModel:
        request = models.FnTableRequest(n_max=n_max)
        if self._http is None:
            return self._local(fn_table, request)
        return self._request("POST", "/fn-table", models.FnTableModel, request)

    def sweep(self, request: models.SweepRequest) -> models.SweepResultModel:
        if self._http is None:
            return self._local(run_sweep, request)
        return self._request("POST", "/sweep", models.SweepResultModel, request)

    def simulate(self, request: models.SimulateRequest) -> models.SimResultModel:
        if self._http is None:
            return self._local(simulate, request)
        return self._request("POST", "/simulate", models.SimResultModel, request)


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _load_model(path: str, model_cls):
    """Parse a JSON file into a request model, reporting line/field on failure."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ClientError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ClientError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return model_cls.model_validate(raw)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(loc) for loc in err['loc']) or '<root>'}: {err['msg']}"
            for err in exc.errors()
        )
        raise ClientError(f"{path}: {problems}") from exc


def cmd_scenario(args, client: ServiceClient) -> int:
    try:
        report = client.scenario(args.name)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        try:
            names = client.scenario_names()
            print("available scenarios:", file=sys.stderr)
            for name in names:
                print(f"  {name}", file=sys.stderr)
        except ClientError:
            pass
        return 2
    if args.json:
        print(report.model_dump_json(indent=2))
        return 0
    p = report.params
    core = report.report
    print(f"scenario {report.name}: {report.description}")
    print(
        f"  params: eta={p.eta} chi={p.chi} eta_h={p.eta_h} eta_p={p.eta_p} n_settings={p.n_settings}"
    )
    print(f"  quantum correlation (lhs)     {core.lhs:.5f}")
    print(f"  hidden-state bound (n={p.n_settings})     {core.rhs_finite:.5f}")
    print(f"  hidden-state bound (n=inf)    {core.rhs_infinite:.5f}")
    print(f"  margin                        {core.margin:+.5f}  -> {core.verdict}")
    print(f"  sufficient condition          {core.sufficient.lhs_value:.5f} {'> 1' if core.sufficient.satisfied else '<= 1'}")
    print(f"  necessary condition           {core.necessary.lhs_value:.5f} {'> 1' if core.necessary.satisfied else '<= 1'}")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"  expected {check.quantity} = {check.expected}  computed {check.computed:.5f}  [{status}]"
        )
    return 0


def cmd_fn_table(args, client: ServiceClient) -> int:
    try:
        table = client.fn_table(args.max)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(table.model_dump_json(indent=2))
        return 0
    print("  n    bound      excess     checked")
    for row in table.rows:
        checked = "yes" if row.enumeration_checked else "-"
        print(f"{row.n:>3}    {row.value:.5f}    {row.excess_over_limit:.5f}    {checked}")
    print(f"inf    {table.limit:.5f}    0.00000    -")
    return 0


def cmd_sweep(args, client: ServiceClient) -> int:
    try:
        request = _load_model(args.spec, models.SweepRequest)
        result = client.sweep(request)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_path = Path(args.out)
    try:
        _atomic_write_text(out_path, result.to_csv_text())
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(result.model_dump_json(indent=2))
    else:
        unreachable = sum(1 for cell in result.cells if cell.flag != "ok")
        print(f"wrote {len(result.cells)} cells to {out_path} ({unreachable} unreachable)")
        if result.contour is not None:
            print(f"contour at {result.contour_level}: {len(result.contour)} points")
    return 0


def cmd_simulate(args, client: ServiceClient) -> int:
    try:
        request = _load_model(args.config, models.SimulateRequest)
        result = client.simulate(request)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.out)
    try:
        _atomic_write_text(out_dir / "result.json", result.model_dump_json(indent=2) + "\n")
        if result.transcript is not None:
            _atomic_write_text(out_dir / "transcript.csv", result.transcript_csv_text())
    except OSError as exc:
        print(f"error: cannot write {out_dir}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(result.model_dump_json(indent=2))
    else:
        report = result.report
        se = "inf" if report.margin_se is None else f"{report.margin_se:.2e}"
        print(f"strategy {result.config.strategy}, seed {result.config.seed}")
        print(f"  empirical lhs    {report.lhs:.5f}")
        print(f"  empirical rhs    {report.rhs:.5f}")
        print(f"  margin           {report.margin:+.5f} (se {se}) -> {report.verdict}")
        print(f"wrote {out_dir / 'result.json'}")
        if result.transcript is not None:
            print(f"wrote {out_dir / 'transcript.csv'}")
    return 0


def cmd_serve(args, client: ServiceClient) -> int:
    del client
    import uvicorn

    uvicorn.run(asgi_app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonsteer",
        description="Feasibility analysis and simulation of split-single-photon steering experiments.",
    )
    parser.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    scenario = sub.add_parser("scenario", help="evaluate a named parameter preset")
    scenario.add_argument("name")
    scenario.add_argument("--json", action="store_true")
    scenario.set_defaults(func=cmd_scenario)

    sweep = sub.add_parser("sweep", help="run a two-parameter sweep from a JSON spec")
    sweep.add_argument("--spec", required=True, help="sweep specification (JSON)")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--json", action="store_true")
    sweep.set_defaults(func=cmd_sweep)

    fn_table = sub.add_parser("fn-table", help="print the finite-settings bound table")
    fn_table.add_argument("--max", type=int, required=True)
    fn_table.add_argument("--json", action="store_true")
    fn_table.set_defaults(func=cmd_fn_table)

    simulate = sub.add_parser("simulate", help="run a seeded Monte Carlo experiment")
    simulate.add_argument("--config", required=True, help="simulation configuration (JSON)")
    simulate.add_argument("--out", required=True, help="output directory")
    simulate.add_argument("--json", action="store_true")
    simulate.set_defaults(func=cmd_simulate)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(server=args.server)
    return args.func(args, client)


if __name__ == "__main__":
    raise SystemExit(main())
