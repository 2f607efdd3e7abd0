"""Command-line driver: a thin client over the suite runner (in-process by
default, or against a running service via --server).

Exit codes: 0 all checks pass, 1 some check failed, 2 invalid configuration,
3 internal arithmetic error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from sklytwist.presentations import InvalidParameters
from sklytwist.scalars import MissingRadicalError, ScalarError, ZeroDivisorError
from sklytwist.suites import SUITE_NAMES, CheckReport, RunConfig, all_passed, run_suites

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_BAD_CONFIG = 2
EXIT_ARITHMETIC = 3


class FractionParam(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not an exact rational p/q", param, ctx)


FRACTION = FractionParam()


@click.group()
@click.version_option()
def main() -> None:
    """Exact-arithmetic verification of 4-dimensional Sklyanin algebras and
    their Klein-four cocycle twists."""


def _parameter_options(fn):
    fn = click.option("--beta", type=FRACTION, default="2", show_default=True,
                      help="parameter beta as an exact rational")(fn)
    fn = click.option("--gamma", type=FRACTION, default="3", show_default=True,
                      help="parameter gamma as an exact rational")(fn)
    fn = click.option("--alpha", type=FRACTION, default=None,
                      help="explicit alpha; derived as -(beta+gamma)/(1+beta*gamma) when omitted")(fn)
    return fn


@main.command()
@click.argument("suite", type=click.Choice(SUITE_NAMES + ("all",)))
@_parameter_options
@click.option("--degree", type=int, default=6, show_default=True,
              help="degree bound for graded-dimension checks")
@click.option("--algebra", type=click.Choice(["sklyanin", "twist", "factor", "twisted-factor"]),
              default=None, help="restrict the hilbert suite to one algebra")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="write the JSON report to this path instead of stdout")
@click.option("--server", default=None, metavar="URL",
              help="delegate to a running sklytwist service at this base URL")
def verify(suite, beta, gamma, alpha, degree, algebra, out, server):
    """Run a named verification suite (or 'all') and emit a JSON report."""
    if server:
        payload = {
            "beta": str(beta),
            "gamma": str(gamma),
            "alpha": str(alpha) if alpha is not None else None,
            "degree": degree,
            "suites": [suite],
            "algebra": algebra,
        }
        _run_remote(server, payload, out)
        return
    cfg = RunConfig(beta=beta, gamma=gamma, alpha=alpha, degree=degree, algebra=algebra)
    try:
        reports = run_suites(cfg, [suite])
    except InvalidParameters as exc:
        click.echo(f"invalid parameters: {exc}", err=True)
        sys.exit(EXIT_BAD_CONFIG)
    except (ZeroDivisorError, MissingRadicalError, ScalarError, ZeroDivisionError) as exc:
        click.echo(f"arithmetic error: {exc}", err=True)
        sys.exit(EXIT_ARITHMETIC)
    _emit(reports, out)
    sys.exit(EXIT_OK if all_passed(reports) else EXIT_FAILED_CHECKS)


def _run_remote(server: str, payload: dict, out: str | None) -> None:
    import httpx

    url = server.rstrip("/") + "/verify"
    try:
        response = httpx.post(url, json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        click.echo(f"service unreachable: {exc}", err=True)
        sys.exit(EXIT_ARITHMETIC)
    if response.status_code == 422:
        click.echo(f"invalid configuration: {response.text}", err=True)
        sys.exit(EXIT_BAD_CONFIG)
    if response.status_code != 200:
        click.echo(f"service error {response.status_code}: {response.text}", err=True)
        sys.exit(EXIT_ARITHMETIC)
    body = response.json()
    text = json.dumps(body["reports"], indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    _summarize_json(body["reports"])
    sys.exit(EXIT_OK if body["all_passed"] else EXIT_FAILED_CHECKS)


def _emit(reports: list[CheckReport], out: str | None) -> None:
    text = json.dumps([r.to_json_dict() for r in reports], indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    _summarize_json([r.to_json_dict() for r in reports])


def _summarize_json(reports: list[dict]) -> None:
    counts: dict[str, int] = {}
    for r in reports:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    click.echo(f"checks: {summary}", err=True)


@main.command()
def suites() -> None:
    """List the available verification suites."""
    for name in SUITE_NAMES:
        click.echo(name)


@main.command()
@_parameter_options
@click.option("--algebra", type=click.Choice(["sklyanin", "twist", "factor", "twisted-factor"]),
              default="twist", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def presentation(beta, gamma, alpha, algebra, out) -> None:
    """Export a presentation (generators, gradings, relations) as JSON."""
    from sklytwist.scalars import FieldSpec
    from sklytwist.service import build_presentation

    cfg = RunConfig(beta=beta, gamma=gamma, alpha=alpha)
    try:
        pres = build_presentation(cfg, algebra, FieldSpec.gaussian())
    except InvalidParameters as exc:
        click.echo(f"invalid parameters: {exc}", err=True)
        sys.exit(EXIT_BAD_CONFIG)
    text = pres.to_json()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command()
@_parameter_options
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def points(beta, gamma, alpha, out) -> None:
    """Export the twisted point scheme (20 points with orbit data) as JSON."""
    from sklytwist import points as points_mod
    from sklytwist.presentations import field_spec_to_json
    from sklytwist.suites import _radical_spec, _standard_pair

    cfg = RunConfig(beta=beta, gamma=gamma, alpha=alpha)
    try:
        spec = _radical_spec(cfg)
        pres, twist = _standard_pair(cfg, spec)
        alpha_s, beta_s, gamma_s = pres.params
        system = points_mod.multilinearize(twist)
        pts = points_mod.known_points(alpha_s, beta_s, gamma_s)
        orbits = points_mod.orbit_report(pts, system)
    except InvalidParameters as exc:
        click.echo(f"invalid parameters: {exc}", err=True)
        sys.exit(EXIT_BAD_CONFIG)
    except (ZeroDivisorError, MissingRadicalError, ScalarError) as exc:
        click.echo(f"arithmetic error: {exc}", err=True)
        sys.exit(EXIT_ARITHMETIC)
    payload = {
        "field": field_spec_to_json(spec),
        "points": [p.to_strings() for p in pts],
        "orbits": orbits.to_json_dict(),
    }
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Start the HTTP verification service."""
    import uvicorn

    uvicorn.run("sklytwist.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
