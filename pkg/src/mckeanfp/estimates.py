"""Numerical verification harness for the semigroup and product estimates.

Each inequality of the form ``LHS <= c * RHS`` is probed on random fields:
trial fields are drawn once (seeded) and reused across the sweep
parameter, the per-point constant is the worst LHS/RHS ratio over trials,
and the verdict is "fitted constant stabilizes", meaning the per-point
constants vary by at most 25 percent across the sweep. Only existence of
the constants is claimed by the theory, so stability of the fit is the
meaningful check.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .besov import besov_norm
from .drift import synthesize_field
from .fields import Grid
from .spectral import gradient, heat_semigroup, pointwise_product

__all__ = ["EstimateReport", "estimate_harness", "ESTIMATE_KINDS", "VARIATION_LIMIT"]

ESTIMATE_KINDS = ("schauder", "schauder_diff", "bernstein", "grad_semigroup", "bony")
VARIATION_LIMIT = 0.25


@dataclass
class EstimateReport:
    """Result of one harness run, serializable as CSV rows."""

    kind: str
    params: dict
    sweep_label: str
    sweep: list
    constants: list  # worst ratio per sweep point
    fitted_constant: float
    worst_ratio: float
    variation: float
    passed: bool
    rows: list = field(repr=False, default_factory=list)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "trial_seed", "parameters", self.sweep_label, "lhs", "rhs", "ratio"])
            for row in self.rows:
                w.writerow(row)
            w.writerow(
                [
                    "summary",
                    "",
                    self._param_str(),
                    f"variation={self.variation:.4f}",
                    f"fitted={self.fitted_constant:.6g}",
                    f"worst={self.worst_ratio:.6g}",
                    "pass" if self.passed else "fail",
                ]
            )

    def _param_str(self) -> str:
        return ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))


def _default_grid(params: dict) -> Grid:
    return Grid(params.get("d", 1), params.get("n", 256), params.get("length", 1.0))


def _ratio_safe(lhs: float, rhs: float) -> float:
    return lhs / rhs if rhs > 0.0 else 0.0


def estimate_harness(kind: str, trials: int = 12, params: dict | None = None, seed: int = 0) -> EstimateReport:
    """Probe one inequality and report the fitted constant's stability.

    Parameters
    ----------
    kind : one of ``ESTIMATE_KINDS``
        Which inequality to exercise.
    trials : int
        Number of random fields per sweep point (the same seeded fields
        are reused across the sweep).
    params : dict
        Exponents and sweep configuration. Time-smoothing kinds use keys
        ``gamma``, ``theta`` and ``t_sweep``; ``bernstein`` uses ``gamma``
        and ``n_sweep``; ``bony`` uses ``alpha``, ``beta`` and ``n_sweep``.

    Raises
    ------
    ValueError
        If the kind is unknown or the exponents violate the inequality's
        constraints (for instance ``alpha - beta <= 0`` for bony).
    """
    params = dict(params or {})
    if kind not in ESTIMATE_KINDS:
        raise ValueError(f"unknown estimate kind {kind!r}")
    if kind in ("schauder", "schauder_diff", "grad_semigroup"):
        return _time_smoothing_harness(kind, trials, params, seed)
    if kind == "bernstein":
        return _bernstein_harness(trials, params, seed)
    return _bony_harness(trials, params, seed)


def _stability(kind, params, label, sweep, constants, rows):
    constants = [float(c) for c in constants]
    cmax, cmin = max(constants), min(constants)
    variation = (cmax - cmin) / cmax if cmax > 0 else 0.0
    return EstimateReport(
        kind=kind,
        params=params,
        sweep_label=label,
        sweep=list(sweep),
        constants=constants,
        fitted_constant=float(np.median(constants)),
        worst_ratio=cmax,
        variation=variation,
        passed=variation <= VARIATION_LIMIT,
        rows=rows,
    )


def _time_smoothing_harness(kind: str, trials: int, params: dict, seed: int) -> EstimateReport:
    gamma = float(params.get("gamma", -0.2))
    theta = float(params.get("theta", 0.5))
    if kind == "schauder" and theta < 0.0:
        raise ValueError("schauder needs theta >= 0")
    if kind in ("schauder_diff", "grad_semigroup") and not (0.0 < theta < 1.0):
        raise ValueError(f"{kind} needs theta in (0, 1)")
    grid = _default_grid(params)
    t_sweep = params.get("t_sweep")
    if t_sweep is None:
        t_sweep = np.geomspace(1e-4, 1e-3, 6)
    t_sweep = [float(t) for t in t_sweep]

    # field regularity: rough at gamma, except schauder_diff measures data in C^{gamma+2theta}
    synth_reg = gamma + 2.0 * theta if kind == "schauder_diff" else gamma
    fields = [synthesize_field(grid, synth_reg, seed=seed + i, vector=False) for i in range(trials)]
    denoms = [besov_norm(f, synth_reg).norm for f in fields]

    rows, constants = [], []
    pstr = f"gamma={gamma};theta={theta}"
    for t in t_sweep:
        worst = 0.0
        for i, f in enumerate(fields):
            if kind == "schauder":
                lhs = besov_norm(heat_semigroup(f, t), gamma + 2.0 * theta).norm * t**theta
            elif kind == "schauder_diff":
                lhs = besov_norm(heat_semigroup(f, t) - f, gamma).norm
            else:  # grad_semigroup
                lhs = besov_norm(gradient(heat_semigroup(f, t)), gamma + 2.0 * theta - 1.0).norm * t**theta
            rhs = denoms[i] if kind != "schauder_diff" else t**theta * denoms[i]
            ratio = _ratio_safe(lhs, rhs)
            worst = max(worst, ratio)
            rows.append((kind, seed + i, pstr, t, lhs, rhs, ratio))
        constants.append(worst)
    return _stability(kind, {"gamma": gamma, "theta": theta, **_grid_params(grid)}, "t", t_sweep, constants, rows)


def _grid_params(grid: Grid) -> dict:
    return {"d": grid.d, "n": grid.n, "length": grid.length}


def _bernstein_harness(trials: int, params: dict, seed: int) -> EstimateReport:
    gamma = float(params.get("gamma", -0.5))
    n_sweep = [int(n) for n in params.get("n_sweep", (128, 256, 512))]
    d = params.get("d", 1)
    length = params.get("length", 1.0)
    rows, constants = [], []
    pstr = f"gamma={gamma}"
    for n in n_sweep:
        grid = Grid(d, n, length)
        worst = 0.0
        for i in range(trials):
            g = synthesize_field(grid, gamma + 1.0, seed=seed + i, vector=False)
            lhs = besov_norm(gradient(g), gamma).norm
            rhs = besov_norm(g, gamma + 1.0).norm
            ratio = _ratio_safe(lhs, rhs)
            worst = max(worst, ratio)
            rows.append(("bernstein", seed + i, pstr, n, lhs, rhs, ratio))
        constants.append(worst)
    return _stability("bernstein", {"gamma": gamma, "d": d, "length": length}, "n", n_sweep, constants, rows)


def _bony_harness(trials: int, params: dict, seed: int) -> EstimateReport:
    alpha = float(params.get("alpha", 0.4))
    beta = float(params.get("beta", 0.2))
    if alpha - beta <= 0.0 or alpha <= 0.0 or beta <= 0.0:
        raise ValueError(f"bony needs alpha > beta > 0, got alpha={alpha}, beta={beta}")
    n_sweep = [int(n) for n in params.get("n_sweep", (128, 256, 512))]
    d = params.get("d", 1)
    length = params.get("length", 1.0)
    rows, constants = [], []
    pstr = f"alpha={alpha};beta={beta}"
    for n in n_sweep:
        grid = Grid(d, n, length)
        worst = 0.0
        for i in range(trials):
            f = synthesize_field(grid, alpha, seed=seed + 2 * i, vector=False)
            g = synthesize_field(grid, -beta, seed=seed + 2 * i + 1, vector=False)
            lhs = besov_norm(pointwise_product(f, g), -beta).norm
            rhs = besov_norm(f, alpha).norm * besov_norm(g, -beta).norm
            ratio = _ratio_safe(lhs, rhs)
            worst = max(worst, ratio)
            rows.append(("bony", seed + 2 * i, pstr, n, lhs, rhs, ratio))
        constants.append(worst)
    return _stability("bony", {"alpha": alpha, "beta": beta, "d": d, "length": length}, "n", n_sweep, constants, rows)


def fitted_schauder_constant(
    gamma: float,
    theta: float,
    grid_n: int = 256,
    d: int = 1,
    length: float = 1.0,
    trials: int = 12,
    seed: int = 0,
) -> float:
    """Worst observed Schauder ratio at the given exponents, floored at 1.

    The floor reflects the exact theta = 0 case (``P_t`` contracts every
    block sup norm, so the optimal constant there is 1).
    """
    rep = estimate_harness(
        "schauder",
        trials=trials,
        params={"gamma": gamma, "theta": theta, "n": grid_n, "d": d, "length": length},
        seed=seed,
    )
    return max(1.0, rep.worst_ratio)
