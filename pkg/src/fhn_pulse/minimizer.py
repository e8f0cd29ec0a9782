"""Projected steepest descent on the reduced energy over the admissible set.

Each iteration takes a gradient trial step, re-detects the band crossing
indices from the pre-projection iterate, projects onto the resulting bands,
and accepts by Armijo backtracking. The initial step is a Barzilai-Borwein
estimate clamped to [1e-6, 1e2]. Line-search comparisons use the
variational form of the energy (alt_total), which is stationary in the
inner inhibitor iterate and therefore robust to its solver tolerance; the
two energy forms agree to the reported form_gap.

The far-end node is pinned at zero (Dirichlet truncation); the anchor band
[beta, 1] at the origin prevents translation and collapse to the rest
state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .admissible import BAND_TOL, band_bounds, build_q0, detect_crossings, project
from .energy import EnergyReport, evaluate_energy
from .grid import Grid, Profile, crossing_location
from .model import (
    Params,
    equal_area_level,
    interface_width,
    negative_tail_cutoff,
    nullcline_branch,
    predicted_head_length,
)
from .operators import InhibitorError, InhibitorSolution


@dataclass(frozen=True)
class MinimizeOptions:
    """Descent controls; every field is surfaced in the CLI config."""

    gtol: float = 1e-8
    max_iters: int = 50_000
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    step_init: float = 1.0
    step_min: float = 1e-6
    step_max: float = 1e2
    ls_max: int = 40
    inhibitor_tol: float = 1e-11
    active_gradient_tol: float = 1e-6
    record_history: bool = True


@dataclass(frozen=True)
class SolveResult:
    """Converged (or best-effort) constrained minimizer with diagnostics."""

    params: Params
    grid: Grid
    u0: Profile
    v0: Profile
    energy: EnergyReport
    iterations: int
    converged: bool
    termination: str
    final_gradient_norm: float
    el_residual_max: float
    active_constraint_count: int
    active_constraint_fraction: float
    i1: int
    i2: int | None
    x1: float
    x2: float | None
    collapse_warnings: int
    newton_iters_total: int
    init_info: dict
    energy_history: list[float] = field(repr=False, default_factory=list)

    def to_dict(self) -> dict:
        """Scalar summary for JSON output; profiles are exported as CSV."""
        return {
            "params": {
                "d": self.params.d,
                "tau": self.params.tau,
                "gamma": self.params.gamma,
                "beta": self.params.beta,
            },
            "grid": {"x_max": self.grid.x_max, "n": self.grid.n},
            "energy": self.energy.to_dict(),
            "iterations": self.iterations,
            "converged": self.converged,
            "termination": self.termination,
            "final_gradient_norm": self.final_gradient_norm,
            "el_residual_max": self.el_residual_max,
            "active_constraint_count": self.active_constraint_count,
            "active_constraint_fraction": self.active_constraint_fraction,
            "i1": self.i1,
            "i2": self.i2,
            "x1": self.x1,
            "x2": self.x2,
            "collapse_warnings": self.collapse_warnings,
            "newton_iters_total": self.newton_iters_total,
            "init_info": self.init_info,
        }


def _branch_values(v: np.ndarray, beta: float, u_start: float) -> np.ndarray:
    """Vectorized Newton for the outer roots of f(u) = v, one branch at a
    time; u_start must sit on the wanted branch for every entry of v."""
    u = np.full(v.shape, u_start, dtype=float)
    for _ in range(50):
        fu = u * (1.0 - u) * (u - beta) - v
        du = -3.0 * u * u + 2.0 * (1.0 + beta) * u - beta
        un = u - fu / du
        if float(np.max(np.abs(un - u))) < 1e-14:
            return un
        u = un
    return u


def build_outer_profile(params: Params, grid: Grid) -> Profile:
    """Reduced-problem composite: upper-branch head over a parabolic
    inhibitor sag up to the predicted head length, tanh transition layer
    of interface width, lower-branch tail under the exponentially decaying
    inhibitor. Close to the true pulse once the layer is thin relative to
    the head, so it makes a strong descent start (or Newton seed)."""
    beta = params.beta
    v_m = equal_area_level(beta)
    rate = math.sqrt(params.gamma + 1.0 / beta)
    u_plus = nullcline_branch(v_m, beta, "upper")
    curv = u_plus - params.gamma * v_m - v_m**3
    x1 = rate * v_m / curv
    x = grid.nodes()
    v = np.where(
        x <= x1,
        v_m + 0.5 * curv * (x1**2 - x**2),
        v_m * np.exp(-rate * np.maximum(x - x1, 0.0)),
    )
    head = _branch_values(v, beta, u_plus)
    tail = _branch_values(v, beta, -v_m / beta)
    blend = 0.5 * (1.0 - np.tanh((x - x1) / max(interface_width(params), grid.h)))
    u = blend * head + (1.0 - blend) * tail
    u[-1] = 0.0
    return Profile(grid, u)


def default_initial_profile(
    params: Params, grid: Grid, inhibitor_tol: float = 1e-11
) -> tuple[Profile, dict]:
    """Scan a short list of admissible starts and keep the first with
    negative energy, else the lowest found: the reduced-problem composite
    first, then competitor ramps q0(a, b) sized to the predicted head
    length, then wide unit-scale ramps. The negative-energy basin is
    microscopic (the head mass must hold the inhibitor below the upper
    fold of f), so the structured candidates matter at small d while the
    wide ramps keep moderate-d behaviour unchanged."""
    tried: list[tuple[float, str, Profile, dict]] = []

    def consider(label: str, prof: Profile, meta: dict) -> bool:
        report, _, _ = evaluate_energy(prof, params, inhibitor_tol=inhibitor_tol)
        tried.append((report.alt_total, label, prof, meta))
        return report.alt_total < 0.0

    done = False
    try:
        outer = build_outer_profile(params, grid)
        i1, _ = detect_crossings(outer, params.beta)
        if i1 is not None:
            done = consider("outer", outer, {})
    except (ValueError, InhibitorError):
        pass
    if not done:
        spans: list[tuple[float, float]] = []
        try:
            x1_pred = predicted_head_length(params)
            ramp = min(max(2.0 * interface_width(params), 2.0 * grid.h), 1.0)
            spans = [(c * x1_pred, c * x1_pred + ramp) for c in (1.0, 1.8, 3.0)]
        except ValueError:
            pass
        spans += [(a, a + 0.8) for a in (1.0, 0.5, 2.0, 4.0)]
        for a, b in spans:
            if not (grid.h <= a < b <= grid.x_max and b - a <= 1.0):
                continue
            if consider("q0", build_q0(a, b, grid), {"a": a, "b": b}):
                break
    if not tried:
        raise ValueError("grid too short for any default start")
    j_best, label, prof, meta = min(tried, key=lambda t: t[0])
    info = {
        "source": "default_scan",
        "chosen": label,
        **meta,
        "init_energy": j_best,
        "init_energy_negative": j_best < 0.0,
        "scan": [{"kind": lab, **m, "energy": j} for j, lab, _, m in tried],
    }
    return prof, info


def _band_assignment(z: Profile, beta: float) -> tuple[int | None, int | None]:
    """Crossing indices used for the band projection.

    The admissible class is a union over breakpoint indices, so the
    minimizer is free to pick the pair that projects best. The detected i2
    (first nonpositive node after the head) is moved to the tail band when
    its value is strictly negative: clamping it to the mid-band floor of
    zero would pin the zero crossing one node late, against the gradient,
    and stall the descent there. A node exactly at zero keeps the detected
    assignment.
    """
    i1, i2 = detect_crossings(z, beta)
    if (
        i1 is not None
        and i2 is not None
        and i2 > i1 + 1
        and z.values[i2] < -BAND_TOL
    ):
        i2 -= 1
    return i1, i2


def _weighted_norm(values: np.ndarray, weights: np.ndarray) -> float:
    return math.sqrt(max(float(np.dot(weights, values * values)), 0.0))


def _interp_crossing(u: Profile, level: float, i: int) -> float:
    try:
        return crossing_location(u, level, i)
    except ValueError:
        return i * u.grid.h


def minimize(
    params: Params,
    grid: Grid,
    init: Profile | None = None,
    options: MinimizeOptions | None = None,
) -> SolveResult:
    """Run projected descent from init (default start scan when None).

    Deterministic for a given config. Termination is "gtol" when the
    weighted L2 norm of the projected gradient drops to options.gtol,
    "max_iters" or "line_search" otherwise (converged=False for both).
    """
    opts = options or MinimizeOptions()
    M = negative_tail_cutoff(params.beta, params.gamma)
    weights = grid.weights()

    if init is None:
        start, init_info = default_initial_profile(params, grid, opts.inhibitor_tol)
    else:
        if init.grid != grid:
            raise ValueError("initial profile lives on a different grid")
        start, init_info = init, {"source": "user"}

    i1, i2 = _band_assignment(start, params.beta)
    if i1 is None:
        raise ValueError(
            "initial profile has no leading excursion above beta; "
            "not admissible"
        )
    w = project(start, i1, i2, params.beta, M).profile.values.copy()
    w[-1] = 0.0

    report, grad, sol = evaluate_energy(
        Profile(grid, w), params, inhibitor_tol=opts.inhibitor_tol
    )
    J = report.alt_total
    init_info.setdefault("init_energy", J)
    init_info.setdefault("init_energy_negative", J < 0.0)
    g = grad.values.copy()
    g[-1] = 0.0
    newton_total = sol.newton_iters

    history = [J]
    collapse_warnings = 0
    iterations = 0
    termination = "max_iters"
    converged = False
    step = opts.step_init
    prev_dw: np.ndarray | None = None
    prev_g = g

    for _ in range(opts.max_iters):
        lower, upper = band_bounds(grid, i1, i2, params.beta, M)
        pg = g.copy()
        pg[(np.abs(w - lower) <= 1e-12) & (g > 0.0)] = 0.0
        pg[(np.abs(w - upper) <= 1e-12) & (g < 0.0)] = 0.0
        gnorm = _weighted_norm(pg, weights)
        if gnorm <= opts.gtol:
            termination = "gtol"
            converged = True
            break

        if prev_dw is not None:
            dg = g - prev_g
            num = float(np.dot(weights, prev_dw * prev_dw))
            den = float(np.dot(weights, prev_dw * dg))
            if den > 0.0 and num > 0.0:
                step = num / den
        step = min(max(step, opts.step_min), opts.step_max)

        t = step
        accepted = False
        for _ in range(opts.ls_max):
            z = Profile(grid, w - t * g)
            i1_t, i2_t = _band_assignment(z, params.beta)
            if i1_t is None:
                collapse_warnings += 1
                i1_t, i2_t = i1, i2
            w_try = project(z, i1_t, i2_t, params.beta, M).profile.values
            w_try[-1] = 0.0
            try:
                report_t, grad_t, sol_t = evaluate_energy(
                    Profile(grid, w_try),
                    params,
                    v_init=sol.v,
                    inhibitor_tol=opts.inhibitor_tol,
                )
            except InhibitorError:
                t *= opts.backtrack
                continue
            predicted = float(np.dot(weights, g * (w_try - w)))
            if report_t.alt_total <= J + opts.armijo_c * min(predicted, 0.0):
                accepted = True
                break
            t *= opts.backtrack
            if t < opts.step_min:
                break

        if not accepted:
            termination = "line_search"
            break

        prev_dw = w_try - w
        prev_g = g
        w = w_try
        i1, i2 = i1_t, i2_t
        J = report_t.alt_total
        report = report_t
        g = grad_t.values.copy()
        g[-1] = 0.0
        sol = sol_t
        newton_total += sol_t.newton_iters
        iterations += 1
        if opts.record_history:
            history.append(J)

    u0 = Profile(grid, w)
    lower, upper = band_bounds(grid, i1, i2, params.beta, M)
    agt = opts.active_gradient_tol
    active = ((np.abs(w - lower) <= 1e-12) & (g > agt)) | (
        (np.abs(w - upper) <= 1e-12) & (g < -agt)
    )
    active[-1] = False  # pinned truncation node carries no multiplier
    active_count = int(np.count_nonzero(active))

    pg = g.copy()
    pg[(np.abs(w - lower) <= 1e-12) & (g > 0.0)] = 0.0
    pg[(np.abs(w - upper) <= 1e-12) & (g < 0.0)] = 0.0
    gnorm = _weighted_norm(pg, weights)

    x1 = _interp_crossing(u0, params.beta, min(i1, grid.n - 1))
    x2 = None
    if i2 is not None:
        # zero crossing sits in [i2-1, i2] when node i2 is exactly zero and
        # in [i2, i2+1] when the crossing node was assigned to the tail
        try:
            x2 = crossing_location(u0, 0.0, max(i2 - 1, 0))
        except ValueError:
            x2 = _interp_crossing(u0, 0.0, min(i2, grid.n - 1))

    return SolveResult(
        params=params,
        grid=grid,
        u0=u0,
        v0=sol.v,
        energy=report,
        iterations=iterations,
        converged=converged,
        termination=termination,
        final_gradient_norm=gnorm,
        el_residual_max=float(np.max(np.abs(g[1:-1]))),
        active_constraint_count=active_count,
        active_constraint_fraction=active_count / (grid.n + 1),
        i1=i1,
        i2=i2,
        x1=x1,
        x2=x2,
        collapse_warnings=collapse_warnings,
        newton_iters_total=newton_total,
        init_info=init_info,
        energy_history=history if opts.record_history else [],
    )
