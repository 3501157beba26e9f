"""Parameter sweep over the (T, theta, gamma) grid with CSV persistence."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from .bounds import ClassPair, asymptotic_bound, derived_params, mc_bhatt
from .classify import mc_error_prob
from .errors import ConfigError, DegeneratePairError
from .montecarlo import McEstimate

CSV_HEADER = (
    "i_t", "i_theta", "i_gamma", "T", "theta", "gamma", "alpha2", "beta2", "beta_bar",
    "delta", "c12", "tau", "b_star", "b_hat", "b_hat_se", "pe_hat", "pe_hat_se",
    "y", "z", "m_b", "m_pe", "seed",
)
_INT_COLUMNS = {"i_t", "i_theta", "i_gamma", "m_b", "m_pe", "seed"}


@dataclass(frozen=True)
class GridSpec:
    """Experiment grid; the defaults give the 15 x 3 x 5 log-scaled design."""

    alpha1: float = 10.0
    beta1: float = 1.0
    pi1: float = 0.5
    t_min: float = 2e2
    t_max: float = 2e4
    t_count: int = 15
    theta_min: float = 2 ** -0.5
    theta_max: float = 2 ** -0.1
    theta_count: int = 3
    gamma_min: float = 2 ** -1
    gamma_max: float = 2.0
    gamma_count: int = 5
    m_bhatt: int = 0
    m_pe: int = 0
    seed: int = 0

    def __post_init__(self):
        for name in ("alpha1", "beta1", "t_min", "t_max", "theta_min", "theta_max",
                     "gamma_min", "gamma_max"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive number, got {value!r}")
        for lo, hi in (("t_min", "t_max"), ("theta_min", "theta_max"),
                       ("gamma_min", "gamma_max")):
            if getattr(self, lo) > getattr(self, hi):
                raise ConfigError(f"{lo} must not exceed {hi}")
        for name in ("t_count", "theta_count", "gamma_count"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.theta_max > 1:
            raise ConfigError("theta must not exceed 1")
        if not 0 < self.pi1 < 1:
            raise ConfigError("pi1 must lie in (0, 1)")
        if self.m_bhatt < 0 or self.m_pe < 0:
            raise ConfigError("Monte-Carlo counts must be non-negative")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.t_count, self.theta_count, self.gamma_count


def log_axis(a: float, b: float, k: int) -> list[float]:
    if k == 1:
        return [float(a)]
    return [a * (b / a) ** (i / (k - 1)) for i in range(k)]


@dataclass(frozen=True)
class Cell:
    i_t: int
    i_theta: int
    i_gamma: int
    T: float
    theta: float
    gamma: float

    def linear_index(self, shape: tuple[int, int, int]) -> int:
        return (self.i_t * shape[1] + self.i_theta) * shape[2] + self.i_gamma


def build_grid(spec: GridSpec) -> list[Cell]:
    """All cells in lexicographic ``(i_t, i_theta, i_gamma)`` order."""
    ts = log_axis(spec.t_min, spec.t_max, spec.t_count)
    thetas = log_axis(spec.theta_min, spec.theta_max, spec.theta_count)
    gammas = log_axis(spec.gamma_min, spec.gamma_max, spec.gamma_count)
    return [Cell(i, j, l, t, th, g)
            for i, t in enumerate(ts)
            for j, th in enumerate(thetas)
            for l, g in enumerate(gammas)]


@dataclass(frozen=True)
class CellResult:
    i_t: int
    i_theta: int
    i_gamma: int
    T: float
    theta: float
    gamma: float
    alpha2: float
    beta2: float
    beta_bar: float
    delta: float
    c12: float
    tau: float
    b_star: float | None
    b_hat: McEstimate | None
    pe_hat: McEstimate | None
    y: float | None
    z: float | None
    m_b: int
    m_pe: int
    seed: int
    error: str | None = None


def metric_y(b_hat: float, b_star: float) -> float | None:
    if b_hat is None or b_star is None or b_hat <= 0:
        return None
    return math.log(b_hat / b_star)


def metric_z(pe_hat: float, b_star: float, beta_bar: float, T: float) -> float | None:
    if pe_hat is None or b_star is None or pe_hat <= 0:
        return None
    return math.log(2.0 * pe_hat / b_star) / (beta_bar * math.log(T))


def run_cell(spec: GridSpec, cell: Cell) -> CellResult:
    pair = ClassPair.from_unit_free(spec.alpha1, spec.beta1, cell.theta, cell.gamma, spec.pi1)
    dp = derived_params(pair)
    alpha2 = pair.c2.alpha
    path = (cell.linear_index(spec.shape),)
    error = None
    try:
        b_star = asymptotic_bound(dp, alpha2, cell.T)
    except DegeneratePairError as exc:
        b_star, error = None, str(exc)
    b_hat = mc_bhatt(pair, cell.T, spec.m_bhatt, spec.seed, path) if spec.m_bhatt else None
    pe_hat = mc_error_prob(pair, cell.T, spec.m_pe, spec.seed, path) if spec.m_pe else None
    return CellResult(
        cell.i_t, cell.i_theta, cell.i_gamma, cell.T, cell.theta, cell.gamma,
        alpha2, pair.c2.beta, dp.beta_bar, dp.delta, dp.c12, math.log(cell.T / alpha2),
        b_star, b_hat, pe_hat,
        metric_y(b_hat.value if b_hat else None, b_star),
        metric_z(pe_hat.value if pe_hat else None, b_star, dp.beta_bar, cell.T),
        spec.m_bhatt, spec.m_pe, spec.seed, error,
    )


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(spec: GridSpec, workers: int = 1, cells: list[Cell] | None = None) -> list[CellResult]:
    """Evaluate every cell; results come back in grid order for any worker count."""
    if workers < 1:
        raise ConfigError("workers must be at least 1")
    cells = build_grid(spec) if cells is None else cells
    if workers == 1:
        return [run_cell(spec, c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell_args, [(spec, c) for c in cells]))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def cell_row(r: CellResult) -> dict:
    """CSV column values of one result (``None`` for missing)."""
    return {
        "i_t": r.i_t, "i_theta": r.i_theta, "i_gamma": r.i_gamma,
        "T": r.T, "theta": r.theta, "gamma": r.gamma, "alpha2": r.alpha2, "beta2": r.beta2,
        "beta_bar": r.beta_bar, "delta": r.delta, "c12": r.c12, "tau": r.tau,
        "b_star": r.b_star,
        "b_hat": r.b_hat.value if r.b_hat else None,
        "b_hat_se": r.b_hat.std_err if r.b_hat else None,
        "pe_hat": r.pe_hat.value if r.pe_hat else None,
        "pe_hat_se": r.pe_hat.std_err if r.pe_hat else None,
        "y": r.y, "z": r.z, "m_b": r.m_b, "m_pe": r.m_pe, "seed": r.seed,
    }


def write_csv(results: list[CellResult], destination) -> None:
    if not results:
        raise ValueError("no results to write")
    path = Path(destination)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in results:
                row = cell_row(r)
                writer.writerow([_fmt(row[c]) for c in CSV_HEADER])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(source) -> list[dict]:
    """Parse a sweep CSV back into rows shaped like ``cell_row``."""
    rows = []
    with Path(source).open(newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {header}")
        for raw in reader:
            rows.append({
                name: None if text == "" else (int(text) if name in _INT_COLUMNS else float(text))
                for name, text in zip(header, raw)
            })
    return rows


GRID_FIELDS = tuple(f.name for f in fields(GridSpec))
