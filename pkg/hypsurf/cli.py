# Copyright 2024 The hypsurf Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""The hypsurf command line.

Each subcommand writes one JSON envelope holding its configuration, its
report and any verdicts. Exit codes: 0 on success, 1 on invalid input, 2
when an --assert-* check fails.
"""

import argparse
import dataclasses
import enum
import json
import math
import pathlib
import sys
from collections.abc import Sequence
from typing import NoReturn

import pydantic

from hypsurf import (
    core,
    errors,
    figure,
    fuchsian,
    identities,
    invariants,
    logging,
    report,
    runtime,
    surfaces,
    verdict,
)
from hypsurf.precision import Precision


class Command(enum.Enum):
    """The subcommands."""

    VERIFY_MCSHANE = "verify-mcshane"
    VERIFY_BRIDGEMAN = "verify-bridgeman"
    INJRAD = "injrad"
    SUP_INJRAD = "sup-injrad"
    SYSTOLE = "systole"
    CUSP_AREA = "cusp-area"
    SPECTRUM = "spectrum"
    FIGURE = "figure"


class OutputFormat(enum.Enum):
    """How the main output is encoded."""

    JSON = "json"
    CSV = "csv"


"""Per-command default ball depth."""
DEFAULT_DEPTH = {
    Command.VERIFY_BRIDGEMAN: 10,
    Command.CUSP_AREA: 6,
    Command.FIGURE: 4,
}

"""Per-command default length cutoff."""
DEFAULT_CUTOFF = {
    Command.VERIFY_MCSHANE: 25.0,
    Command.VERIFY_BRIDGEMAN: 16.0,
}

"""Region searched by sup-injrad when none is given."""
DEFAULT_REGION = "-1,1,0.1,3"

"""Simplicity of spectrum lines is decided at most to this depth."""
SPECTRUM_SIMPLICITY_DEPTH = 6

"""Commands that evaluate in extended precision when asked to."""
EXTENDED_COMMANDS = frozenset({Command.VERIFY_MCSHANE, Command.VERIFY_BRIDGEMAN})


class RunConfig(pydantic.BaseModel):
    """A validated command line."""

    model_config = pydantic.ConfigDict(frozen=True)

    command: Command
    surface: str = "sphere3"
    depth: int = pydantic.Field(default=8, ge=1)
    cutoff: float | None = pydantic.Field(default=None, gt=0)
    grid: int = pydantic.Field(default=60, ge=2)
    refine_iters: int = pydantic.Field(default=400, ge=1)
    trace_bound: float = pydantic.Field(default=20.0, gt=2)
    point: tuple[float, float] | None = None
    region: str = DEFAULT_REGION
    output: str | None = None
    format: OutputFormat = OutputFormat.JSON
    csv: str | None = None
    figure: str | None = None
    precision: Precision = Precision.DOUBLE
    log_level: logging.Level = logging.Level.INFO
    threads: int | None = pydantic.Field(default=None, ge=1)
    assert_near: float | None = None
    tol: float = pydantic.Field(default=1e-9, ge=0)
    assert_rel_residual: float | None = pydantic.Field(default=None, ge=0)
    assert_max_residual: float | None = pydantic.Field(default=None, ge=0)


def _point(text: str) -> tuple[float, float]:
    x, y = (float(v) for v in text.split(","))
    return (x, y)


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser that raises ConfigError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        """Raise a ConfigError naming the command line."""
        raise errors.ConfigError("argv", message)


def parser() -> ArgumentParser:
    """Return the argument parser."""
    p = ArgumentParser(prog="hypsurf", description="Hyperbolic surface identities and sharp constants.")
    sub = p.add_subparsers(dest="command", required=True)
    for c in Command:
        s = sub.add_parser(c.value)
        s.add_argument(
            "--surface", default="sphere3", help="sphere3, torus1:x,y,z, torus1:b=L, pants:a,b,c or a JSON file."
        )
        s.add_argument("--depth", type=int, help="Word-ball depth.")
        s.add_argument("--cutoff", type=float, help="Length cutoff of identity sums.")
        s.add_argument("--grid", type=int, default=60, help="Grid points per side for sup-injrad.")
        s.add_argument("--refine-iters", type=int, default=400, dest="refine_iters", help="Local ascent iterations.")
        s.add_argument("--trace-bound", type=float, default=20.0, dest="trace_bound", help="Largest |trace| kept.")
        s.add_argument("--point", help="x,y for injrad.")
        s.add_argument("--region", default=DEFAULT_REGION, help="x0,x1,y0,y1 for sup-injrad.")
        s.add_argument("--output", help="Write the report here instead of stdout.")
        s.add_argument("--format", default="json", choices=[f.value for f in OutputFormat])
        s.add_argument("--csv", help="Also write one CSV line per term or spectrum line here.")
        s.add_argument("--figure", help="Write an SVG figure here.")
        s.add_argument("--precision", default="double", choices=[v.value for v in Precision])
        s.add_argument("--log-level", default="info", dest="log_level", choices=[lv.value for lv in logging.Level])
        s.add_argument("--threads", type=int, help=f"Worker threads, overriding {runtime.THREADS_ENV}.")
        s.add_argument("--assert-near", type=float, dest="assert_near", help="Fail unless the result is near this.")
        s.add_argument("--tol", type=float, default=1e-9, help="Tolerance of --assert-near.")
        s.add_argument("--assert-rel-residual", type=float, dest="assert_rel_residual")
        s.add_argument("--assert-max-residual", type=float, dest="assert_max_residual")
    return p


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse and validate a command line.

    Raises:
        ConfigError naming the first invalid field.
    """
    ns = parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None}
    command = Command(values["command"])
    values.setdefault("depth", DEFAULT_DEPTH.get(command, 8))
    if command in DEFAULT_CUTOFF:
        values.setdefault("cutoff", DEFAULT_CUTOFF[command])
    if "point" in values:
        try:
            values["point"] = _point(values["point"])
        except ValueError as e:
            raise errors.ConfigError("point", f"expected x,y, got {values['point']!r}") from e
    try:
        cfg = RunConfig.model_validate(values)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(v) for v in first["loc"])
        raise errors.ConfigError(field, first["msg"]) from e
    if cfg.precision == Precision.EXTENDED and cfg.command not in EXTENDED_COMMANDS:
        msg = f"{cfg.command.value} computes in double precision only"
        raise errors.ConfigError("precision", msg)
    return cfg


@dataclasses.dataclass
class Loaded:
    """The surface a command runs on."""

    label: str
    group: fuchsian.FuchsianGroup
    spec: surfaces.SurfaceSpec | None = None


def load_surface(text: str) -> Loaded:
    """Load a surface spec or a group document.

    Raises:
        ConfigError if the text names neither.
    """
    if text.endswith(".json"):
        try:
            data = json.loads(pathlib.Path(text).read_text())
        except (OSError, ValueError) as e:
            raise errors.ConfigError("surface", f"cannot load {text}: {e}") from e
        if isinstance(data, dict) and "generators" in data:
            try:
                doc = fuchsian.GroupDocument.model_validate(data)
            except pydantic.ValidationError as e:
                raise errors.ConfigError("surface", str(e)) from e
            group = doc.to_group()
            return Loaded(label=group.label or text, group=group)
    spec = surfaces.SurfaceSpec.parse(text)
    try:
        group = spec.build()
    except errors.HypsurfError as e:
        raise errors.ConfigError("surface", str(e)) from e
    return Loaded(label=spec.label, group=group, spec=spec)


def cusped_group(loaded: Loaded) -> fuchsian.FuchsianGroup:
    """Return the surface's group, cusp-normalized.

    Raises:
        NoCuspError if the surface has no cusp.
    """
    g = loaded.group
    if g.cusp is not None and g.cusp.normalized:
        return g
    spec = loaded.spec
    if spec is not None and spec.kind == surfaces.SurfaceKind.TORUS1 and spec.torus().cusped:
        return fuchsian.cusp_normalize(g, spec.torus().commutator)
    if spec is not None and spec.kind == surfaces.SurfaceKind.PANTS:
        pants = spec.pants()
        for length, word in zip(pants.lengths, pants.boundary_words, strict=True):
            if length == 0:
                return fuchsian.cusp_normalize(g, word)
    msg = f"surface {loaded.label} has no cusp"
    raise errors.NoCuspError(msg)


class CuspAreaReport(pydantic.BaseModel):
    """The maximal cusp region of a normalized cusp."""

    height: float
    area: float
    width: float
    min_c: float
    realizing_word: str
    tangent: bool
    embedded: bool
    bound_holds: bool
    depth: int


class SpectrumLine(pydantic.BaseModel):
    """One closed geodesic of the length spectrum."""

    word: str
    trace: float
    length: float
    simplicity: str
    witness: str | None = None


class SpectrumReport(pydantic.BaseModel):
    """The length spectrum up to a trace bound."""

    lines: list[SpectrumLine]
    depth: int
    simplicity_depth: int
    trace_bound: float


@dataclasses.dataclass
class Outcome:
    """What a command produced.

    value is the number --assert-near checks, and residual and target feed
    the residual assertions when the command verifies an identity.
    """

    report: pydantic.BaseModel
    rows: list[dict]
    value: float | None
    residual: float | None = None
    target: float | None = None


def _need_spec(loaded: Loaded, kind: surfaces.SurfaceKind) -> surfaces.SurfaceSpec:
    if loaded.spec is None or loaded.spec.kind != kind:
        raise errors.ConfigError("surface", f"this command needs a {kind.value} surface, got {loaded.label}")
    return loaded.spec


def _identity_outcome(r: identities.IdentityReport) -> Outcome:
    rows = [rec.model_dump() for rec in r.records]
    return Outcome(report=r, rows=rows, value=r.partial_sum, residual=r.residual, target=r.target)


def execute(cfg: RunConfig, loaded: Loaded) -> Outcome:  # noqa: C901, PLR0911  # One branch per command.
    """Run the configured command."""
    match cfg.command:
        case Command.VERIFY_MCSHANE:
            t = _need_spec(loaded, surfaces.SurfaceKind.TORUS1).torus()
            r = identities.verify_mcshane(t, cfg.cutoff, cfg.precision, surface=loaded.label)
            return _identity_outcome(r)

        case Command.VERIFY_BRIDGEMAN:
            p = _need_spec(loaded, surfaces.SurfaceKind.PANTS).pants()
            r = identities.verify_bridgeman(p, cfg.cutoff, cfg.depth, cfg.precision, surface=loaded.label)
            return _identity_outcome(r)

        case Command.INJRAD:
            if cfg.point is None:
                raise errors.ConfigError("point", "injrad needs --point x,y")
            try:
                z = core.HPoint(*cfg.point)
            except errors.DomainError as e:
                raise errors.ConfigError("point", str(e)) from e
            r = invariants.injrad_at(loaded.group, z, cfg.depth)
            return Outcome(report=r, rows=[{"word": w, "radius": r.radius} for w in r.realizing_words], value=r.radius)

        case Command.SUP_INJRAD:
            region = invariants.Region.parse(cfg.region)
            r = invariants.sup_injrad(loaded.group, region, cfg.grid, cfg.refine_iters, cfg.depth)
            return Outcome(report=r, rows=[{"word": w, "radius": r.lower} for w in r.realizing_words], value=r.lower)

        case Command.SYSTOLE:
            r = invariants.systoles(loaded.group, cfg.depth, cfg.trace_bound)
            rows = [{"kind": "systole", "word": r.word, "length": r.length}]
            if r.nonsimple_length is not None:
                rows.append({"kind": "nonsimple", "word": r.nonsimple_word, "length": r.nonsimple_length})
            return Outcome(report=r, rows=rows, value=r.length)

        case Command.CUSP_AREA:
            g = cusped_group(loaded)
            mc = fuchsian.maximal_cusp(g, cfg.depth)
            r = CuspAreaReport(
                height=mc.height,
                area=mc.area,
                width=mc.width,
                min_c=mc.min_c,
                realizing_word=g.format(mc.realizing_word),
                tangent=mc.tangent,
                embedded=mc.embedded,
                bound_holds=mc.bound_holds,
                depth=mc.depth,
            )
            return Outcome(report=r, rows=[r.model_dump()], value=r.area)

        case Command.SPECTRUM:
            return _spectrum(cfg, loaded)

        case Command.FIGURE:
            if cfg.figure is None:
                raise errors.ConfigError("figure", "figure needs --figure PATH")
            r = _draw(cfg, loaded)
            return Outcome(report=r, rows=[r.model_dump()], value=None)

    msg = f"unknown command {cfg.command}"
    raise errors.ConfigError("command", msg)


def _spectrum(cfg: RunConfig, loaded: Loaded) -> Outcome:
    g = loaded.group
    depth = min(cfg.depth, SPECTRUM_SIMPLICITY_DEPTH)
    lines = []
    for c in fuchsian.conjugacy_classes(g, cfg.trace_bound, cfg.depth):
        status = fuchsian.simplicity(g, c, depth)
        lines.append(
            SpectrumLine(
                word=g.format(c.rep),
                trace=c.trace,
                length=c.length,
                simplicity=status.kind.value,
                witness=g.format(status.witness) if status.witness is not None else None,
            )
        )
    r = SpectrumReport(lines=lines, depth=cfg.depth, simplicity_depth=depth, trace_bound=cfg.trace_bound)
    shortest = lines[0].length if lines else None
    return Outcome(report=r, rows=[line.model_dump() for line in lines], value=shortest)


def _draw(cfg: RunConfig, loaded: Loaded) -> figure.FigureSummary:
    g = loaded.group
    try:
        g = cusped_group(loaded)
    except errors.NoCuspError:
        pass
    return figure.render(figure.scene(g, cfg.depth), pathlib.Path(cfg.figure))


def judge(cfg: RunConfig, outcome: Outcome, env: report.Envelope) -> None:
    """Attach the verdicts of any requested assertions."""
    if cfg.assert_near is not None:
        v = outcome.value
        if v is not None and math.isfinite(v) and abs(v - cfg.assert_near) <= cfg.tol:
            verdict.normal(env, f"value {v} is within {cfg.tol} of {cfg.assert_near}")
        else:
            verdict.fatal(env, f"value {v} is not within {cfg.tol} of {cfg.assert_near}")

    for bound, relative in ((cfg.assert_rel_residual, True), (cfg.assert_max_residual, False)):
        if bound is None:
            continue
        if outcome.residual is None:
            verdict.fatal(env, f"{cfg.command.value} has no residual to check")
            continue
        got = abs(outcome.residual)
        if relative:
            got /= abs(outcome.target)
        kind = "relative residual" if relative else "residual"
        if got <= bound:
            verdict.normal(env, f"{kind} {got:.3e} is within {bound}")
        else:
            verdict.fatal(env, f"{kind} {got:.3e} exceeds {bound}")


def _write(path: str | None, write) -> None:
    if path is None:
        write(sys.stdout)
        return
    with pathlib.Path(path).open("w", newline="") as f:
        write(f)


def run(cfg: RunConfig) -> int:
    """Run a validated configuration and write its outputs.

    Returns:
        The exit code.
    """
    logging.configure(cfg.log_level)
    logging.bind_run(command=cfg.command.value, surface=cfg.surface)
    log = logging.get_logger()
    runtime.set_worker_count(cfg.threads)

    try:
        loaded = load_surface(cfg.surface)
        outcome = execute(cfg, loaded)
        if cfg.figure is not None and cfg.command != Command.FIGURE:
            _draw(cfg, loaded)
    except errors.HypsurfError as e:
        log.error("invalid input", error=str(e), kind=type(e).__name__)
        return verdict.EXIT_INPUT

    env = report.Envelope(command=cfg.command.value, config=cfg.model_dump(mode="json"))
    report.update(env, outcome.report)
    judge(cfg, outcome, env)

    if cfg.format == OutputFormat.CSV:
        _write(cfg.output, lambda f: report.write_csv(f, outcome.rows))
    else:
        _write(cfg.output, lambda f: f.write(report.dumps(env)))
    if cfg.csv is not None:
        _write(cfg.csv, lambda f: report.write_csv(f, outcome.rows))

    code = verdict.exit_code(env)
    log.info("ran command", exit_code=code, value=outcome.value)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the hypsurf command."""
    try:
        cfg = config_from_args(argv)
    except errors.ConfigError as e:
        print(f"hypsurf: {e}", file=sys.stderr)  # noqa: T201  # Logging is not configured yet.
        return verdict.EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
