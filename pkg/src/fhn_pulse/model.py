"""Model parameters, cubic reaction terms, and closed-form constants.

The steady system on the half line is

    d u'' + f(u) - v = 0,      f(u) = u (1 - u) (u - beta),
    v'' - gamma v - v^3 + u = 0,

with Neumann conditions at x = 0. All thresholds computed here are
closed-form functions of (beta, gamma) except the negative-tail cutoff M,
which is pinned down by a scalar bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

#: Bisection bracket and absolute tolerance for the tail cutoff M.
_M_BRACKET = (0.0, 10.0)
_M_TOL = 1e-12


@dataclass(frozen=True)
class Params:
    """Problem parameters. tau enters the time-dependent dynamics only."""

    d: float
    tau: float
    gamma: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.d > 0.0 and math.isfinite(self.d)):
            raise ValueError(f"d must be positive, got {self.d}")
        if not (self.tau > 0.0 and math.isfinite(self.tau)):
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not (0.0 < self.beta < 1.0):
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")


def reaction_f(u, beta: float):
    """Cubic activator nonlinearity f(u) = u (1 - u) (u - beta).

    Accepts scalars or arrays. Zeros at 0, beta, 1; negative on (0, beta),
    positive on (beta, 1).
    """
    return u * (1.0 - u) * (u - beta)


def potential_F(xi, beta: float):
    """Potential F with F' = -f: F(xi) = xi^4/4 - (1+beta) xi^3/3 + beta xi^2/2."""
    return xi**4 / 4.0 - (1.0 + beta) * xi**3 / 3.0 + beta * xi**2 / 2.0


def potential_roots(beta: float) -> tuple[float, float]:
    """Nonzero roots 0 < beta1 < beta2 of F: solutions of
    3 xi^2 - 4 (1 + beta) xi + 6 beta = 0.

    Raises ValueError when the discriminant is nonpositive (no real pair).
    """
    disc = 4.0 * (1.0 + beta) ** 2 - 18.0 * beta
    if disc <= 0.0:
        raise ValueError(f"potential has no real nonzero root pair at beta={beta}")
    s = math.sqrt(disc)
    beta1 = (2.0 * (1.0 + beta) - s) / 3.0
    beta2 = (2.0 * (1.0 + beta) + s) / 3.0
    return beta1, beta2


def negative_tail_cutoff(beta: float, gamma: float) -> float:
    """Smallest M >= 0 with f(xi) >= 1 + 1/gamma for all xi <= -M, i.e. the
    root of f(-M) = M (1 + M) (M + beta) = 1 + 1/gamma.

    Bisection on [0, 10] to 1e-12 absolute tolerance; the left-hand side is
    strictly increasing in M, so the root is unique.
    """
    target = 1.0 + 1.0 / gamma

    def g(m: float) -> float:
        return m * (1.0 + m) * (m + beta) - target

    lo, hi = _M_BRACKET
    if g(hi) <= 0.0:
        raise ValueError(f"tail cutoff bracket exhausted at gamma={gamma}")
    while hi - lo > _M_TOL:
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gamma0(beta: float) -> float:
    """Threshold gamma0 = 3 beta^2 / (1 - 2 beta) - 1, positive exactly on
    the working window beta in (1/3, 1/2)."""
    if not (1.0 / 3.0 < beta < 0.5):
        raise ValueError(
            f"gamma0 undefined or nonpositive outside beta in (1/3, 1/2), got {beta}"
        )
    return 3.0 * beta**2 / (1.0 - 2.0 * beta) - 1.0


def gamma1_direct(beta: float) -> float:
    """Pulse-existence threshold gamma1 = min{gamma0, 2 (beta + F(beta)) - 1/2},
    with F(beta) inlined as (2 beta^3 - beta^4) / 12."""
    g0 = 3.0 * beta**2 / (1.0 - 2.0 * beta) - 1.0
    if not (1.0 / 3.0 < beta < 0.5):
        raise ValueError(f"gamma1 requires beta in (1/3, 1/2), got {beta}")
    return min(g0, 2.0 * (beta + (2.0 * beta**3 - beta**4) / 12.0) - 0.5)


def gamma1_via_potential(beta: float) -> float:
    """Same threshold computed through gamma0() and potential_F(); kept as an
    independent code path for cross-checking."""
    return min(gamma0(beta), 2.0 * (beta + potential_F(beta, beta)) - 0.5)


@dataclass(frozen=True)
class ConstantsReport:
    """Closed-form constants at fixed (beta, gamma).

    The constructive quantities a_q0, b_q0, d0, M0, M2, m2, d1 are
    documentation-grade diagnostics: they certify existence but are far too
    small (or large) to steer a practical run.
    """

    beta: float
    gamma: float
    beta1: float
    beta2: float
    gamma0: float
    gamma1: float
    M: float
    c0_competitor: float
    a_q0: float
    b_q0: float
    d0: float
    M0: float
    M1: float
    M2: float
    m2: float
    d1: float

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "gamma": self.gamma,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "gamma0": self.gamma0,
            "gamma1": self.gamma1,
            "M": self.M,
            "c0_competitor": self.c0_competitor,
            "a_q0": self.a_q0,
            "b_q0": self.b_q0,
            "d0": self.d0,
            "M0": self.M0,
            "M1": self.M1,
            "M2": self.M2,
            "m2": self.m2,
            "d1": self.d1,
        }


def compute_constants(beta: float, gamma: float) -> ConstantsReport:
    """Evaluate every closed-form constant at (beta, gamma).

    Requires beta in (1/3, 1/2) and gamma > 0. M2 degenerates to +inf when
    gamma >= gamma0 (its denominator changes sign there); m2 is implemented
    exactly as printed and is diagnostic-only.
    """
    if not (1.0 / 3.0 < beta < 0.5):
        raise ValueError(f"constants require beta in (1/3, 1/2), got {beta}")
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError(f"constants require gamma > 0, got {gamma}")

    beta1, beta2 = potential_roots(beta)
    g0 = gamma0(beta)
    g1 = gamma1_direct(beta)
    M = negative_tail_cutoff(beta, gamma)

    one_minus = 1.0 - 2.0 * beta
    c0 = 11.0 / 20.0 - (1.0 + beta) / 12.0 + beta / 6.0
    shape = (1.0 + one_minus / (48.0 * c0)) ** 3
    a = (2.0 / 9.0) * (one_minus / 24.0) ** 2 / ((1.0 + 1.0 / gamma) ** 2 * shape)
    b = a * (1.0 + one_minus / (24.0 * c0))
    d0 = (b - a) ** 2
    M0 = (1.0 / 9.0) * (one_minus / 24.0) ** 3 / ((1.0 + 1.0 / gamma) ** 2 * shape)

    M1 = (
        beta**2 / (8.0 * (gamma + 1.0) ** 1.5)
        + (M + 1.0) / (2.0 * gamma**1.5)
        + 2.0 * (M + 1.0) / gamma**2.5
    )
    m2_den = -one_minus / 12.0 + beta**2 / (4.0 * (gamma + 1.0))
    M2 = M1 / m2_den if m2_den > 0.0 else math.inf
    m2 = 6.0 * M0 / one_minus
    d1 = min(d0, beta**2 / (4.0 * (1.0 + beta * gamma)))

    return ConstantsReport(
        beta=beta,
        gamma=gamma,
        beta1=beta1,
        beta2=beta2,
        gamma0=g0,
        gamma1=g1,
        M=M,
        c0_competitor=c0,
        a_q0=a,
        b_q0=b,
        d0=d0,
        M0=M0,
        M1=M1,
        M2=M2,
        m2=m2,
        d1=d1,
    )


@dataclass(frozen=True)
class RegimeReport:
    """Where (beta, gamma, d) sits relative to the guaranteed-existence regime.

    beta_ok: beta in (1/3, 1/2). gamma_ok: gamma < gamma1(beta) (requires
    beta_ok). d_ok: d <= d1(beta, gamma) with the constructive d1, which is
    astronomically small; practical runs fail d_ok by design and validate
    the computed pulse a posteriori instead.
    """

    beta_ok: bool
    gamma_ok: bool
    d_ok: bool
    gamma1: float = field(default=math.nan)
    d1: float = field(default=math.nan)

    @property
    def in_strict_regime(self) -> bool:
        return self.beta_ok and self.gamma_ok and self.d_ok

    def to_dict(self) -> dict:
        return {
            "beta_ok": self.beta_ok,
            "gamma_ok": self.gamma_ok,
            "d_ok": self.d_ok,
            "in_strict_regime": self.in_strict_regime,
            "gamma1": self.gamma1,
            "d1": self.d1,
        }


def regime_report(params: Params) -> RegimeReport:
    beta_ok = 1.0 / 3.0 < params.beta < 0.5
    if not beta_ok:
        return RegimeReport(beta_ok=False, gamma_ok=False, d_ok=False)
    consts = compute_constants(params.beta, params.gamma)
    return RegimeReport(
        beta_ok=True,
        gamma_ok=params.gamma < consts.gamma1,
        d_ok=params.d <= consts.d1,
        gamma1=consts.gamma1,
        d1=consts.d1,
    )


def slow_decay_rate(params: Params) -> float:
    """sqrt(lambda1) for the linearization at the rest state; the far-field
    decay rate of the pulse. Convenience wrapper used for grid sizing."""
    trace = params.beta / params.d + params.gamma
    det = (params.beta * params.gamma + 1.0) / params.d
    disc = trace * trace - 4.0 * det
    if disc <= 0.0:
        raise ValueError("linearization has complex eigenvalues at these parameters")
    lam2 = 0.5 * (trace + math.sqrt(disc))
    lam1 = det / lam2
    return math.sqrt(lam1)


def suggested_x_max(params: Params) -> float:
    """Default truncation: 12 slow-decay lengths, rounded up to an integer."""
    return float(math.ceil(12.0 / slow_decay_rate(params)))


def _bisect_root(g, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Sign-change bisection; requires g(lo) and g(hi) of opposite sign."""
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0.0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if glo * gm < 0.0:
            hi, ghi = mid, gm
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


def reaction_knees(beta: float) -> tuple[float, float]:
    """Critical points of f: the local minimum and maximum locations
    (roots of f' = -3u^2 + 2(1+beta)u - beta), lower first."""
    disc = math.sqrt((1.0 + beta) ** 2 - 3.0 * beta)
    return ((1.0 + beta - disc) / 3.0, (1.0 + beta + disc) / 3.0)


def nullcline_branch(v: float, beta: float, branch: str) -> float:
    """Outer solution branches of f(u) = v: the 'upper' root near 1 and the
    'lower' root near 0. Defined for v strictly between the knee values."""
    knee_lo, knee_hi = reaction_knees(beta)
    if branch == "upper":
        if v >= reaction_f(knee_hi, beta):
            raise ValueError(f"v={v} is above the upper branch fold")
        return _bisect_root(lambda u: reaction_f(u, beta) - v, knee_hi, 2.0)
    if branch == "lower":
        if v <= reaction_f(knee_lo, beta):
            raise ValueError(f"v={v} is below the lower branch fold")
        return _bisect_root(lambda u: reaction_f(u, beta) - v, -2.0, knee_lo)
    raise ValueError(f"unknown branch {branch!r}")


def equal_area_level(beta: float) -> float:
    """Inhibitor level v at which a stationary interface between the two
    outer branches of f(u) = v exists: the wells of F(u) - v u are level
    (equal-area rule). Approximately (1 - 2 beta)/12 for beta near 1/2."""

    def gap(v: float) -> float:
        up = nullcline_branch(v, beta, "upper")
        um = nullcline_branch(v, beta, "lower")
        return (potential_F(um, beta) - potential_F(up, beta)) - v * (up - um)

    _, knee_hi = reaction_knees(beta)
    v_max = reaction_f(knee_hi, beta)
    return _bisect_root(gap, 1e-8, 0.999 * v_max)


def interface_width(params: Params) -> float:
    """Length scale of the diffusive transition layer between the outer
    branches, sqrt(2 d / (beta (1 - beta)))."""
    return math.sqrt(2.0 * params.d / (params.beta * (1.0 - params.beta)))


def predicted_head_length(params: Params) -> float:
    """Small-d estimate of the excited-region length x1.

    In the reduced (d -> 0) problem the activator rides the upper branch
    while the inhibitor sags under the drive u - gamma v - v^3; the head
    ends where v reaches the equal-area level and hands over to the
    exponentially decaying tail. Matching v' across that point gives
    x1 = sqrt(gamma + 1/beta) * v_M / (h+(v_M) - gamma v_M - v_M^3).

    A standing pulse can only exist when interface_width(params) is well
    below this length; otherwise the head cannot accommodate a transition
    layer and the minimizer collapses to a constrained boundary state.
    """
    v_m = equal_area_level(params.beta)
    rate = math.sqrt(params.gamma + 1.0 / params.beta)
    curv = (
        nullcline_branch(v_m, params.beta, "upper")
        - params.gamma * v_m
        - v_m**3
    )
    return rate * v_m / curv
