"""Closed forms for the logistic growth ODE dx/dt = r*x*(1-x).

The equation is a constant-coefficient Riccati equation, so one known
solution generates the whole family: every member is the basic sigmoid
restarted from a shifted initial value gamma*x0/(gamma - x0).  All
evaluation funnels through a single kernel for 1/(1 + c*exp(-r*t)); a
classical Runge-Kutta integrator provides the independent cross-check.

The ODE side is not chaotic, so double precision is the default; pass a
PrecisionPolicy for high-precision cross-checks.
"""

import math
import warnings
from dataclasses import dataclass

from mpmath import mp, mpf, workprec

from .errors import DomainError, EscapeError, PoleError
from .precision import DOUBLE, METHOD_ODE_RK4, PrecisionPolicy, Trajectory

# |denominator| below this counts as a true blow-up rather than underflow noise
POLE_EPS = 1e-300
_EXP_OVERFLOW = 709.0
_ESCAPE_BOUND = 1e100


@dataclass(frozen=True)
class ContinuousParams:
    """Growth rate (inverse time units) and initial value x(0)."""

    r: float
    x0: float

    def __post_init__(self):
        if not math.isfinite(self.r) or self.r == 0:
            raise DomainError("growth rate r must be finite and nonzero")
        if not math.isfinite(self.x0):
            raise DomainError("initial value x0 must be finite")


@dataclass(frozen=True)
class RiccatiShift:
    """Free constant gamma = y(0) of the auxiliary linear equation.

    It selects one member of the general solution family; for seeds in
    (0, 1) the family stays bounded only for gamma above
    ``gamma_lower_bound(x0)``.
    """

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma) or self.gamma == 0:
            raise DomainError("gamma must be finite and nonzero")


class GammaRangeWarning(UserWarning):
    """gamma is below the admissible lower bound; the selected trajectory has a pole."""


def gamma_lower_bound(x0: float) -> float:
    """Smallest admissible gamma, x0/(1-x0), for seeds strictly inside (0, 1)."""
    if not 0.0 < x0 < 1.0:
        raise DomainError("the admissible-range rule applies only to x0 in (0, 1)")
    return x0 / (1.0 - x0)


def effective_initial_condition(p: ContinuousParams, shift: RiccatiShift) -> float:
    """Initial value gamma*x0/(gamma - x0) of the family member picked by gamma."""
    den = shift.gamma - p.x0
    if den == 0:
        raise PoleError("gamma equals x0: the effective initial condition diverges")
    value = shift.gamma * p.x0 / den
    if not math.isfinite(value):
        raise PoleError("gamma is too close to x0: the effective initial condition overflows")
    return value


def _sigmoid(t, r, c, policy):
    """Evaluate 1/(1 + c*exp(-r*t)); ``c`` encodes the initial value."""
    if policy is None:
        if c == 0:
            return 1.0
        u = -r * t
        if u > _EXP_OVERFLOW:
            # exp overflows a double; the formula has decayed onto the x=0 branch
            return 0.0
        den = 1.0 + c * math.exp(u)
        if abs(den) < POLE_EPS:
            raise PoleError(f"solution has a pole at t={t!r}", where=t)
        return 1.0 / den
    with workprec(policy.significand_bits):
        den = 1 + mpf(c) * mp.exp(-mpf(r) * mpf(t))
        if abs(den) < POLE_EPS:
            raise PoleError(f"solution has a pole at t={t!r}", where=t)
        return 1 / den


def particular_solution(t: float, p: ContinuousParams,
                        policy: PrecisionPolicy | None = None):
    """The sigmoid through x0 at t=0: 1/(1 + (1/x0 - 1)*exp(-r*t)).

    Raises PoleError at the blow-up time that exists when x0 lies outside
    [0, 1] (for r > 0 the denominator then crosses zero).
    """
    if p.x0 == 0:
        raise DomainError("particular solution requires x0 != 0 (it divides by x0)")
    return _sigmoid(t, p.r, 1.0 / p.x0 - 1.0, policy)


def general_solution(t: float, p: ContinuousParams, shift: RiccatiShift,
                     policy: PrecisionPolicy | None = None):
    """Member of the one-parameter solution family selected by ``shift``.

    Algebraically this is just the particular solution restarted from
    gamma*x0/(gamma - x0): the free constant only changes the initial
    condition.  gamma below the admissible lower bound is still evaluated
    (the formula is defined) but flagged with GammaRangeWarning, since that
    family member has a pole.
    """
    if p.x0 == 0:
        raise DomainError("general solution requires x0 != 0 (it divides by x0)")
    g = shift.gamma
    if g == p.x0:
        raise PoleError("gamma equals x0: the effective initial condition diverges")
    if 0.0 < p.x0 < 1.0:
        lb = gamma_lower_bound(p.x0)
        if g == lb:
            raise PoleError(
                f"gamma == x0/(1-x0) == {lb!r} sits on the admissible-range boundary")
        if g < lb:
            warnings.warn(
                f"gamma={g!r} is below the admissible lower bound {lb!r}; "
                "the selected trajectory has a pole",
                GammaRangeWarning, stacklevel=2)
    c = (g - p.x0) / (g * p.x0) - 1.0
    return _sigmoid(t, p.r, c, policy)


def general_solution_correction_form(t: float, p: ContinuousParams,
                                     shift: RiccatiShift,
                                     policy: PrecisionPolicy | None = None):
    """The same family member written as particular * (1 + 1/(gamma*(exp(r*t)
    + 1/x0 - 1) - 1)).

    Kept as an independent algebraic route so the two printed forms can be
    cross-checked numerically; ``general_solution`` is the primary evaluator.
    """
    x1 = particular_solution(t, p, policy)
    g = shift.gamma
    if policy is None:
        u = p.r * t
        if u > _EXP_OVERFLOW:
            return x1  # the correction term has vanished
        inner = g * (math.exp(u) + 1.0 / p.x0 - 1.0) - 1.0
        if abs(inner) < POLE_EPS:
            raise PoleError(f"correction term has a pole at t={t!r}", where=t)
        return x1 * (1.0 + 1.0 / inner)
    with workprec(policy.significand_bits):
        inner = mpf(g) * (mp.exp(mpf(p.r) * mpf(t)) + 1 / mpf(p.x0) - 1) - 1
        if abs(inner) < POLE_EPS:
            raise PoleError(f"correction term has a pole at t={t!r}", where=t)
        return x1 * (1 + 1 / inner)


def rk4_oracle(p: ContinuousParams, t_end: float, dt: float) -> Trajectory:
    """Classical fourth-order Runge-Kutta trajectory sampled at multiples of dt.

    Deliberately independent of every closed form in this module: it is the
    ground truth the sigmoid formulas are checked against.  The step guard
    |r|*dt < 0.1 keeps the integrator comfortably inside its stability
    region.
    """
    if not (math.isfinite(t_end) and math.isfinite(dt) and 0 < dt <= t_end):
        raise ValueError("need 0 < dt <= t_end")
    if abs(p.r) * dt >= 0.1:
        raise ValueError("|r|*dt must stay below 0.1 for a trustworthy step")
    n = int(round(t_end / dt))
    r = p.r
    x = p.x0
    samples = [(0.0, x)]
    for k in range(1, n + 1):
        k1 = r * x * (1.0 - x)
        s = x + 0.5 * dt * k1
        k2 = r * s * (1.0 - s)
        s = x + 0.5 * dt * k2
        k3 = r * s * (1.0 - s)
        s = x + dt * k3
        k4 = r * s * (1.0 - s)
        x = x + dt * (k1 + 2.0 * (k2 + k3) + k4) / 6.0
        if not math.isfinite(x) or abs(x) > _ESCAPE_BOUND:
            raise EscapeError(f"integrator state ran away at step {k}", index=k)
        samples.append((k * dt, x))
    return Trajectory(METHOD_ODE_RK4, tuple(samples), DOUBLE)
