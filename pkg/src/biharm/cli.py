"""Command-line entry point: ``biharm solve | verify | selftest``.

Exit codes: 0 success, 1 usage / IO / schema error or failed verification,
2 mathematically unsolvable data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import E1, E2, RHO, BNumber, BPoint, components, mul, norm
from .disk import (
    DiskSolution,
    biharmonic_schwartz_disk,
    singular_boundary_disk,
    solve_13_disk,
    solve_main_biharmonic,
)
from .errors import BiharmError, Unsolvable
from .halfplane import solve_13_halfplane
from .kernels import DEFAULT_LINE_NODES, CircleData, LineData, circle_nodes, line_pv_boundary
from . import verification as ver

DOMAINS = ("halfplane", "disk", "main-biharmonic")
CR_THRESHOLD = 1e-6
STENCIL_THRESHOLD = 1e-4
BOUNDARY_THRESHOLD = 1e-3
PV_THRESHOLD = 1e-4
PATH_THRESHOLD = 1e-8
SELFTEST_THRESHOLD = 1e-9


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    domain: str = "disk"
    u1: str | None = None
    u3: str | None = None
    a: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    grid: tuple = (8, 8)
    rmax: float = 0.95
    extent: float = 5.0
    ymin: float = 1e-3
    nodes: int | None = None
    out: str | None = None
    format: str = "csv"
    data: dict = field(default_factory=dict, repr=False)

    def validate(self):
        if self.domain not in DOMAINS:
            raise UsageError(f"unknown domain {self.domain!r}")
        if min(self.grid) < 2:
            raise UsageError("grid resolution must be at least 2 in each direction")
        if not 0 < self.rmax < 1:
            raise UsageError("--rmax must lie in (0, 1)")
        if self.extent <= 0 or not 0 < self.ymin < self.extent:
            raise UsageError("need extent > 0 and 0 < ymin < extent")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.nodes is not None and self.nodes < 2:
            raise UsageError("--nodes must be at least 2")

    @property
    def circle_nodes(self) -> int:
        return circle_nodes(self.nodes)

    @property
    def line_nodes(self) -> int:
        return DEFAULT_LINE_NODES if self.nodes is None else int(self.nodes)


def load_boundary(path: str | None, domain: str):
    """Read a boundary-data file; ``None`` means identically zero data."""
    line = domain == "halfplane"
    if path is None:
        return LineData() if line else CircleData()
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from exc
    try:
        return LineData.from_dict(obj) if line else CircleData.from_dict(obj)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load(config: JobConfig):
    config.validate()
    u1 = load_boundary(config.u1, config.domain)
    u3 = load_boundary(config.u3, config.domain)
    return u1, u3


def data_hash(u1, u3) -> str:
    text = json.dumps({"u1": u1.to_dict(), "u3": u3.to_dict()}, sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()


def grid_points(config: JobConfig):
    """Row-major grid (rows in y, columns in x); disk grids drop outside points."""
    nx, ny = config.grid
    if config.domain == "halfplane":
        xs = np.linspace(-config.extent, config.extent, nx)
        ys = np.linspace(config.ymin, config.extent, ny)
    else:
        xs = np.linspace(-config.rmax, config.rmax, nx)
        ys = np.linspace(-config.rmax, config.rmax, ny)
    X, Y = np.meshgrid(xs, ys)
    x, y = X.ravel(), Y.ravel()
    if config.domain != "halfplane":
        keep = np.hypot(x, y) <= config.rmax * (1 + 1e-15)
        x, y = x[keep], y[keep]
    return x, y


def build_solution(config: JobConfig, u1, u3):
    if config.domain == "halfplane":
        return solve_13_halfplane(u1, u3, config.a1, config.a2, nodes=config.line_nodes)
    if config.domain == "disk":
        return solve_13_disk(u1, u3, config.a, config.a1, config.a2)
    return solve_main_biharmonic(u1, u3)


def _metadata(config: JobConfig, u1, u3, solution) -> dict:
    meta = {
        "program": f"biharm {__version__}",
        "domain": config.domain,
        "data_sha256": data_hash(u1, u3),
        "u1": u1.to_dict(),
        "u3": u3.to_dict(),
        "grid": f"{config.grid[0]}x{config.grid[1]}",
        "circle_nodes": config.circle_nodes,
        "line_nodes": config.line_nodes,
    }
    if config.domain == "halfplane":
        meta.update(a1=config.a1, a2=config.a2, extent=config.extent, ymin=config.ymin)
    else:
        field_ = solution if isinstance(solution, DiskSolution) else solution.field
        meta.update(rmax=config.rmax, solvability_integral=field_.diagnostics["solvability_integral"])
        if config.domain == "disk":
            meta.update(a=config.a, a1=config.a1, a2=config.a2)
        else:
            meta.update(a=0.0, a1=0.0, a2=0.0, primitive_nodes=solution.nodes, normalization="V(0,0)=0")
    return meta


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def render(config: JobConfig, meta: dict, columns, rows) -> str:
    if config.format == "json":
        return json.dumps({"metadata": meta, "columns": columns, "records": rows.tolist()}, sort_keys=True) + "\n"
    lines = [f"# {key}: {json.dumps(meta[key], sort_keys=True)}" for key in sorted(meta)]
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def solve_records(config: JobConfig):
    """Solve the configured job; returns ``(metadata, columns, rows)``."""
    u1, u3 = _load(config)
    solution = build_solution(config, u1, u3)
    x, y = grid_points(config)
    if config.domain == "main-biharmonic":
        columns = ["x", "y", "V"]
        rows = np.column_stack([x, y, solution(BPoint(x, y))])
    else:
        columns = ["x", "y", "U1", "U2", "U3", "U4"]
        rows = np.column_stack([x, y, *components(solution(BPoint(x, y)))])
    return _metadata(config, u1, u3, solution), columns, rows


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from exc


def _guard(fn):
    try:
        return fn()
    except Unsolvable as exc:
        print(f"unsolvable: contour integral = {exc.value!r}", file=sys.stderr)
        return 2
    except (UsageError, BiharmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cmd_solve(config: JobConfig) -> int:
    def run():
        meta, columns, rows = solve_records(config)
        _emit(render(config, meta, columns, rows), config.out)
        return 0

    return _guard(run)


# -- verify ---------------------------------------------------------------


def _check(name, value, threshold, passed=None):
    value = float(value)
    ok = value <= threshold if passed is None else bool(passed)
    return {"name": name, "value": value, "threshold": threshold, "passed": ok}


def _interior_points(config: JobConfig, n=32):
    """Deterministic interior probe points (golden-angle spiral / lattice)."""
    k = np.arange(n)
    if config.domain == "halfplane":
        x = config.extent * (2 * ((k * 0.618033988749895) % 1.0) - 1) * 0.8
        y = 0.2 + (config.extent - 0.2) * ((k + 0.5) / n) * 0.8
        return x, y
    r = 0.85 * config.rmax * np.sqrt((k + 0.5) / n)
    t = k * 2.399963229728653
    return r * np.cos(t), r * np.sin(t)


def _pde_checks(evaluator, config, x, y):
    region = "halfplane" if config.domain == "halfplane" else "disk"
    probe = ver.FieldProbe(evaluator, region=region)
    cr = ver.cr_residual(probe, BPoint(x, y))
    worst = 0.0
    for U in ver.component_fields(evaluator):
        res, scale = ver.biharmonic_check(U, x, y, richardson=True)
        worst = max(worst, float(np.max(res / scale)))
    return [
        _check("cauchy_riemann_residual", np.max(cr), CR_THRESHOLD),
        _check("biharmonic_stencil_relative", worst, STENCIL_THRESHOLD),
    ]


def _decreasing_check(name, errors, threshold):
    ok = errors[-1] <= threshold and all(b <= a * (1 + 1e-9) + 1e-14 for a, b in zip(errors, errors[1:]))
    check = _check(name, errors[-1], threshold, ok)
    check["sequence"] = [float(e) for e in errors]
    return check


def verify_checks(config: JobConfig, evaluator=None):
    """Run the check suite for a job.  ``evaluator`` overrides the solved field."""
    u1, u3 = _load(config)
    solution = build_solution(config, u1, u3)
    checks = []
    if config.domain == "main-biharmonic":
        return _verify_main(config, solution, u1, u3)
    field_ = solution if evaluator is None else evaluator
    x, y = _interior_points(config)
    checks += _pde_checks(field_, config, x, y)
    if config.domain == "disk":
        checks.append(
            _check("solvability_integral", abs(solution.diagnostics["solvability_integral"]),
                   solution.diagnostics["solvability_tolerance"])
        )
        theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
        for label, k, u in (("U1", 0, u1), ("U3", 2, u3)):
            errs = []
            for r in (1 - 1e-3, 1 - 1e-4, 1 - 1e-5):
                vals = components(field_(BPoint(r * np.cos(theta), r * np.sin(theta))))[k]
                errs.append(np.max(np.abs(vals - u(theta))))
            checks.append(_decreasing_check(f"boundary_recovery_{label}", errs, BOUNDARY_THRESHOLD))
        angles = np.linspace(0, 2 * np.pi, 16, endpoint=False) + 0.1
        worst = 0.0
        for u in (u1, u3):
            for th in angles:
                worst = max(worst, float(norm(ver.disk_pv_oracle(u, th) - singular_boundary_disk(u, th))))
        checks.append(_check("singular_integral_crosscheck", worst, PV_THRESHOLD))
    else:
        xi = np.linspace(-config.extent, config.extent, 16)
        for label, k, u in (("U1", 0, u1), ("U3", 2, u3)):
            errs = []
            for h in (1e-3, 1e-4, 1e-5):
                vals = components(field_(BPoint(xi, np.full_like(xi, h))))[k]
                errs.append(np.max(np.abs(vals - u(xi))))
            checks.append(_decreasing_check(f"boundary_recovery_{label}", errs, BOUNDARY_THRESHOLD))
        worst = 0.0
        for u in (u1, u3):
            for p in xi[::2]:
                worst = max(worst, abs(ver.line_pv_oracle(u, p) - line_pv_boundary(u, p, config.line_nodes)))
        checks.append(_check("principal_value_crosscheck", worst, PV_THRESHOLD))
    return checks


def _verify_main(config, solution, u1, u3):
    x, y = _interior_points(config)
    worst = 0.0
    res, scale = ver.biharmonic_check(solution.V, x, y, richardson=True)
    worst = float(np.max(res / scale))
    radial = solution.primitive(BPoint(x, y))
    stair = solution.primitive(BPoint(x, y), path="staircase")
    checks = [
        _check("biharmonic_stencil_relative", worst, STENCIL_THRESHOLD),
        _check("path_independence", np.max(norm(radial - stair)), PATH_THRESHOLD),
        _check("normalization_V0", abs(solution.V(0.0, 0.0)), 1e-15),
    ]
    theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    gx, gy = boundary_gradient(solution, theta)
    err = max(np.max(np.abs(gx - u1(theta))), np.max(np.abs(gy - u3(theta))))
    checks.append(_check("boundary_gradient", err, BOUNDARY_THRESHOLD))
    return checks


def boundary_gradient(solution, theta, r=0.99, h=1e-4):
    """Boundary gradient of ``V`` from centred differences at radii ``r`` and ``2r - 1``.

    The two interior gradients are extrapolated linearly to the circle.
    """
    theta = np.asarray(theta, dtype=float)
    grads = []
    for rad in (r, 2 * r - 1):
        x, y = rad * np.cos(theta), rad * np.sin(theta)
        gx = (solution.V(x + h, y) - solution.V(x - h, y)) / (2 * h)
        gy = (solution.V(x, y + h) - solution.V(x, y - h)) / (2 * h)
        grads.append((gx, gy))
    (gx1, gy1), (gx2, gy2) = grads
    return 2 * gx1 - gx2, 2 * gy1 - gy2


def cmd_verify(config: JobConfig, evaluator=None) -> int:
    def run():
        checks = verify_checks(config, evaluator)
        passed = all(c["passed"] for c in checks)
        report = {"domain": config.domain, "passed": passed, "checks": checks}
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", config.out)
        return 0 if passed else 1

    return _guard(run)


# -- selftest -------------------------------------------------------------

SELFTEST_POINTS = ((0.3, 0.2), (-0.5, 0.4), (0.1, -0.7))


def selftest_rows(nodes=None, mul_fn=mul):
    """Closed-form identities as ``(name, error)`` rows."""
    rows = [
        ("e2^2 = e1 + 2i e2", norm(mul_fn(E2, E2) - (E1 + 2j * E2))),
        ("rho^2 = 0", norm(mul_fn(RHO, RHO))),
        ("(e1^2 + e2^2)^2 = 0", norm(mul_fn(*(2 * [mul_fn(E1, E1) + mul_fn(E2, E2)])))),
    ]
    x = np.array([p[0] for p in SELFTEST_POINTS])
    y = np.array([p[1] for p in SELFTEST_POINTS])
    zeta = BNumber(x, y)
    cases = (
        ("S_D[1] = e1", CircleData(1.0), E1 * np.ones_like(x)),
        ("S_D[x] = (3e1 + i e2) zeta / 2", CircleData(0.0, [1.0]), 0.5 * mul(3 * E1 + 1j * E2, zeta)),
        ("S_D[y] = (-3i e1 + e2) zeta / 2", CircleData(0.0, [0.0], [1.0]), 0.5 * mul(-3j * E1 + E2, zeta)),
    )
    for name, u, expected in cases:
        got = biharmonic_schwartz_disk(u, BPoint(x, y), method="quadrature", nodes=nodes)
        rows.append((name, np.max(norm(got - expected))))
    return [(name, float(err)) for name, err in rows]


def cmd_selftest(nodes=None, mul_fn=mul, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    rows = selftest_rows(nodes, mul_fn)
    width = max(len(name) for name, _ in rows)
    stream.write(f"{'identity':<{width}}  {'error':>10}  status\n")
    ok = True
    for name, err in rows:
        passed = err <= SELFTEST_THRESHOLD
        ok &= passed
        stream.write(f"{name:<{width}}  {err:10.3e}  {'pass' if passed else 'FAIL'}\n")
    stream.write(f"nodes={circle_nodes(nodes)}  threshold={SELFTEST_THRESHOLD:g}\n")
    return 0 if ok else 1


# -- argument parsing -----------------------------------------------------


def _grid(text: str):
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like NxM") from None
    return nx, ny


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biharm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--domain", choices=DOMAINS, default="disk")
        p.add_argument("--u1", help="boundary data JSON for U1 (default: zero)")
        p.add_argument("--u3", help="boundary data JSON for U3 (default: zero)")
        p.add_argument("--a", type=float, default=0.0)
        p.add_argument("--a1", type=float, default=0.0)
        p.add_argument("--a2", type=float, default=0.0)
        p.add_argument("--grid", type=_grid, default=(8, 8), help="NxM points")
        p.add_argument("--rmax", type=float, default=0.95)
        p.add_argument("--extent", type=float, default=5.0)
        p.add_argument("--ymin", type=float, default=1e-3)
        p.add_argument("--nodes", type=int, help="quadrature nodes (overrides BIHARM_NODES)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    p = sub.add_parser("selftest")
    p.add_argument("--nodes", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.command == "selftest":
        return cmd_selftest(args.nodes)
    options = vars(args).copy()
    command = options.pop("command")
    config = JobConfig(**options)
    return cmd_solve(config) if command == "solve" else cmd_verify(config)


if __name__ == "__main__":
    sys.exit(main())
