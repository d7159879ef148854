"""Parameter sweeps, co-variation rules, config parsing, and CSV persistence.

Three named presets mirror the bundled scans: ``fig2`` sweeps the pump
intensity |alpha2|^2 while co-varying alpha1 = alpha2/20, density =
1e19*alpha1 (m^-3) and gamma12 = 0.1*alpha1; ``fig3`` sweeps the density
at alpha2 = 20 alpha1 = 20, gamma12 = 0.1; ``fig4`` sweeps the dephasing
at density 1e19, alpha2 = 20 alpha1 = 20.  ``custom`` sweeps any numeric
parameter with constant co-variations.

Output is a deterministic CSV (17 significant digits, ``\\n`` newlines)
that round-trips losslessly through :func:`parse_csv`.
"""

from __future__ import annotations

import configparser
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EIEError
from .metrics import run_point
from .params import CONSTANTS, PhysicalConstants, SystemParams

CSV_HEADER = ("sweep_value,alpha1,alpha2,density,gamma12,v12,du2,dv2,absorption,"
              "sigma11,sigma22,sigma33,entangled,warnings")

PRESETS = ("fig2", "fig3", "fig4", "custom")

#: density floor substituted for nonpositive log-scale sweep starts
DENSITY_LOG_FLOOR = 1e10

# Named co-variation rules; each maps (sweep value, current assignments) to
# the target value.  Constants are given as floats instead of names.
RULES = {
    "alpha2_from_intensity": lambda value, cur: math.sqrt(value),
    "alpha1_alpha2_over_20": lambda value, cur: cur["alpha2"] / 20.0,
    "density_1e19_alpha1": lambda value, cur: 1e19 * abs(cur["alpha1"]),
    "gamma12_0.1_alpha1": lambda value, cur: 0.1 * abs(cur["alpha1"]),
}

_SWEEPABLE = ("delta1", "delta2", "gamma1", "gamma2", "gamma12", "lambda1",
              "lambda2", "density", "length", "radius", "alpha1", "alpha2", "omega")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep definition: swept variable, grid, and co-variation rules."""

    preset: str
    variable: str
    start: float
    stop: float
    points: int
    scale: str = "linear"
    covariations: tuple = ()

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; expected one of {PRESETS}")
        if not (self.start < self.stop):
            raise ConfigError("sweep start must be below stop")
        if self.points < 2:
            raise ConfigError("sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"unknown scale {self.scale!r}")
        if self.variable != "pump_intensity" and self.variable not in _SWEEPABLE:
            raise ConfigError(f"unknown sweep variable {self.variable!r}")
        for target, rule in self.covariations:
            if target == self.variable:
                raise ConfigError(f"covariation target {target!r} equals the swept variable")
            if target not in _SWEEPABLE:
                raise ConfigError(f"unknown covariation target {target!r}")
            if isinstance(rule, str) and rule not in RULES:
                raise ConfigError(f"unknown covariation rule {rule!r}")

    def grid(self) -> np.ndarray:
        start = self.start
        if self.scale == "log":
            if start <= 0 and self.variable == "density":
                start = DENSITY_LOG_FLOOR
            if start <= 0:
                raise ConfigError("log scale needs a positive start")
            return np.geomspace(start, self.stop, self.points)
        return np.linspace(start, self.stop, self.points)


def preset_spec(name: str, points: int | None = None, start: float | None = None,
                stop: float | None = None, scale: str | None = None) -> SweepSpec:
    """SweepSpec for a named preset, with optional grid overrides."""
    if name == "fig2":
        base = SweepSpec(preset="fig2", variable="pump_intensity", start=1.0,
                         stop=400.0, points=40, scale="log",
                         covariations=(("alpha2", "alpha2_from_intensity"),
                                       ("alpha1", "alpha1_alpha2_over_20"),
                                       ("density", "density_1e19_alpha1"),
                                       ("gamma12", "gamma12_0.1_alpha1")))
    elif name == "fig3":
        base = SweepSpec(preset="fig3", variable="density", start=1e17, stop=2e19,
                         points=40, scale="log",
                         covariations=(("alpha2", 20.0), ("alpha1", 1.0),
                                       ("gamma12", 0.1)))
    elif name == "fig4":
        base = SweepSpec(preset="fig4", variable="gamma12", start=0.0, stop=6.0,
                         points=61, scale="linear",
                         covariations=(("density", 1e19), ("alpha2", 20.0),
                                       ("alpha1", 1.0)))
    else:
        raise ConfigError(f"preset {name!r} has no default spec")
    overrides = {}
    if points is not None:
        overrides["points"] = points
    if start is not None:
        overrides["start"] = start
    if stop is not None:
        overrides["stop"] = stop
    if scale is not None:
        overrides["scale"] = scale
    if overrides:
        from dataclasses import replace
        base = replace(base, **overrides)
    return base


@dataclass(frozen=True)
class SweepRow:
    """One evaluated sweep point, in CSV column order."""

    sweep_value: float
    alpha1: complex
    alpha2: complex
    density: float
    gamma12: float
    v12: float | None
    du2: float | None
    dv2: float | None
    absorption: float | None
    sigma11: float | None
    sigma22: float | None
    sigma33: float | None
    entangled: bool | None
    warnings: str


def _point_params(spec: SweepSpec, base: SystemParams, value: float) -> SystemParams:
    cur = {name: getattr(base, name) for name in _SWEEPABLE}
    if spec.variable != "pump_intensity":
        cur[spec.variable] = value
    for target, rule in spec.covariations:
        cur[target] = RULES[rule](value, cur) if isinstance(rule, str) else rule
    return base.replace(**cur)


def _evaluate_one(args) -> SweepRow:
    spec, base, value, constants = args
    params = _point_params(spec, base, value)
    try:
        result = run_point(params, constants)
    except EIEError as exc:
        return SweepRow(sweep_value=float(value), alpha1=complex(params.alpha1),
                        alpha2=complex(params.alpha2), density=params.density,
                        gamma12=params.gamma12, v12=None, du2=None, dv2=None,
                        absorption=None, sigma11=None, sigma22=None, sigma33=None,
                        entangled=None, warnings=f"error: {exc}")
    pops = result.steady.populations
    rep = result.report
    absorption = None if math.isnan(rep.absorption) else rep.absorption
    return SweepRow(sweep_value=float(value), alpha1=complex(params.alpha1),
                    alpha2=complex(params.alpha2), density=params.density,
                    gamma12=params.gamma12, v12=rep.v12, du2=rep.du2, dv2=rep.dv2,
                    absorption=absorption, sigma11=float(pops[0]),
                    sigma22=float(pops[1]), sigma33=float(pops[2]),
                    entangled=rep.entangled, warnings=" | ".join(result.warnings))


def run_sweep(spec: SweepSpec, base: SystemParams, jobs: int = 1,
              constants: PhysicalConstants = CONSTANTS) -> list[SweepRow]:
    """Evaluate every sweep point, in ascending grid order.

    Per-point failures are captured in the row's warnings with blank
    numeric fields; the sweep itself never aborts.  Points are independent
    pure evaluations, so `jobs > 1` distributes them across processes
    without changing the output.
    """
    tasks = [(spec, base, float(v), constants) for v in spec.grid()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_evaluate_one, tasks))
    return [_evaluate_one(t) for t in tasks]


def _fmt_float(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.16e}"


def _fmt_amplitude(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return _fmt_float(z.real)
    return repr(z)


def _fmt_bool(b) -> str:
    if b is None:
        return ""
    return "true" if b else "false"


def emit_csv(rows: list[SweepRow]) -> bytes:
    """Deterministic CSV bytes with the exact column header."""
    if not rows:
        raise ValueError("no rows to emit")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in rows:
        writer.writerow([
            _fmt_float(r.sweep_value), _fmt_amplitude(r.alpha1), _fmt_amplitude(r.alpha2),
            _fmt_float(r.density), _fmt_float(r.gamma12), _fmt_float(r.v12),
            _fmt_float(r.du2), _fmt_float(r.dv2), _fmt_float(r.absorption),
            _fmt_float(r.sigma11), _fmt_float(r.sigma22), _fmt_float(r.sigma33),
            _fmt_bool(r.entangled), r.warnings,
        ])
    return buf.getvalue().encode("utf-8")


def _parse_float(s: str):
    return None if s == "" else float(s)


def _parse_amplitude(s: str) -> complex:
    return complex(s)


def parse_csv(data: bytes) -> list[SweepRow]:
    """Inverse of emit_csv; emit(parse(emit(rows))) is byte-identical."""
    text = data.decode("utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ConfigError("unexpected CSV header")
    rows = []
    for rec in reader:
        rows.append(SweepRow(
            sweep_value=float(rec[0]), alpha1=_parse_amplitude(rec[1]),
            alpha2=_parse_amplitude(rec[2]), density=float(rec[3]),
            gamma12=float(rec[4]), v12=_parse_float(rec[5]), du2=_parse_float(rec[6]),
            dv2=_parse_float(rec[7]), absorption=_parse_float(rec[8]),
            sigma11=_parse_float(rec[9]), sigma22=_parse_float(rec[10]),
            sigma33=_parse_float(rec[11]),
            entangled=None if rec[12] == "" else rec[12] == "true",
            warnings=rec[13],
        ))
    return rows


def point_report(params: SystemParams,
                 constants: PhysicalConstants = CONSTANTS) -> dict:
    """Full JSON-ready report of one working point."""
    result = run_point(params, constants)
    return {
        "entanglement_report": result.report.to_dict(),
        "steady_state": result.steady.to_dict(),
        "warnings": list(result.warnings),
    }


# ----------------------------------------------------------------------------
# Config files: flat INI with [system] and [sweep] sections.

_SYSTEM_KEYS = {
    "delta1_mhz": ("delta1", 1.0),
    "delta2_mhz": ("delta2", 1.0),
    "gamma1_mhz": ("gamma1", 1.0),
    "gamma2_mhz": ("gamma2", 1.0),
    "gamma12_mhz": ("gamma12", 1.0),
    "lambda1_nm": ("lambda1", 1e-9),
    "lambda2_nm": ("lambda2", 1e-9),
    "density_per_m3": ("density", 1.0),
    "length_m": ("length", 1.0),
    "radius_m": ("radius", 1.0),
    "omega_mhz": ("omega", 1.0),
}


def load_config(path: str):
    """Parse a config file into (SystemParams, SweepSpec | None)."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")

    values = {}
    if parser.has_section("system"):
        for key, raw in parser.items("system"):
            if key in _SYSTEM_KEYS:
                name, factor = _SYSTEM_KEYS[key]
                try:
                    values[name] = float(raw) * factor
                except ValueError as exc:
                    raise ConfigError(f"bad value for {key}: {raw!r}") from exc
            elif key in ("alpha1", "alpha2"):
                try:
                    z = complex(raw.replace(" ", ""))
                except ValueError as exc:
                    raise ConfigError(f"bad value for {key}: {raw!r}") from exc
                values[key] = z.real if z.imag == 0.0 else z
            else:
                raise ConfigError(f"unknown [system] key: {key}")
    try:
        params = SystemParams(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    spec = None
    if parser.has_section("sweep"):
        items = dict(parser.items("sweep"))
        preset = items.pop("preset", "custom")
        covars = []
        for key in list(items):
            if key.startswith("covary_"):
                target = key[len("covary_"):]
                try:
                    covars.append((target, float(items.pop(key))))
                except ValueError as exc:
                    raise ConfigError(f"covariation {key} must be a constant") from exc

        def grab(name, cast):
            if name in items:
                try:
                    return cast(items.pop(name))
                except ValueError as exc:
                    raise ConfigError(f"bad [sweep] value for {name}") from exc
            return None

        start = grab("start", float)
        stop = grab("stop", float)
        points = grab("points", int)
        scale = grab("scale", str)
        variable = grab("variable", str)
        if items:
            raise ConfigError(f"unknown [sweep] keys: {sorted(items)}")
        if preset in ("fig2", "fig3", "fig4"):
            spec = preset_spec(preset, points=points, start=start, stop=stop, scale=scale)
        elif preset == "custom":
            if variable is None or start is None or stop is None or points is None:
                raise ConfigError("custom sweep needs variable, start, stop, points")
            spec = SweepSpec(preset="custom", variable=variable, start=start,
                             stop=stop, points=points, scale=scale or "linear",
                             covariations=tuple(covars))
        else:
            raise ConfigError(f"unknown preset {preset!r}")
    return params, spec
