"""The backward-coupled logistic map x' - x = r*x*(1 - x').

Solving the implicit step for x' gives the Moebius map
x' = x*(1+r)/(1 + r*x), so unlike the quadratic map there is no chaos and
double precision suffices throughout.  The map inherits the ODE's whole
solution structure: a sigmoid-like particular solution with e^r replaced by
(1+r), and a one-parameter general family built from cumulative products of
step coefficients.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, EscapeError, PoleError
from .precision import (
    DOUBLE,
    METHOD_CLOSED_FORM,
    METHOD_ITERATED,
    Trajectory,
)

POLE_EPS = 1e-300
_PRODUCT_GUARD = 1e300


@dataclass(frozen=True)
class RiccatiMapParams:
    """Map parameter r and seed x0.

    r = -1 is accepted here because plain iteration handles it (the orbit is
    x0, 0, 0, ...), but the closed forms genuinely do not exist there and
    reject it.
    """

    r: float
    x0: float

    def __post_init__(self):
        if not math.isfinite(self.r):
            raise DomainError("map parameter r must be finite")
        if not math.isfinite(self.x0):
            raise DomainError("seed x0 must be finite")


@dataclass(frozen=True)
class RiccatiCoefficients:
    """Step coefficients g_n, h_n of the linearized equation, indexed 0..n_max-1."""

    g: tuple
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(float(v) for v in self.g))
        object.__setattr__(self, "h", tuple(float(v) for v in self.h))
        if len(self.g) != len(self.h):
            raise ValueError("g and h must have equal length")


def iterate(p: RiccatiMapParams, n: int) -> Trajectory:
    """Samples 0..n of the explicit step x' = x*(1+r)/(1 + r*x).

    Raises PoleError with the offending index when 1 + r*x vanishes.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")
    x = p.x0
    samples = [(0, x)]
    for k in range(1, n + 1):
        den = 1.0 + p.r * x
        if abs(den) < POLE_EPS:
            raise PoleError(f"1 + r*x vanished at step {k - 1}", where=k - 1)
        x = x * (1.0 + p.r) / den
        if not math.isfinite(x):
            raise PoleError(f"state overflowed at step {k}", where=k)
        samples.append((k, x))
    return Trajectory(METHOD_ITERATED, tuple(samples), DOUBLE)


def _check_closed_form_params(p: RiccatiMapParams):
    if p.r == -1.0:
        raise DomainError("closed forms do not exist at r = -1 "
                          "((1+r)^-n degenerates); use iterate instead")
    if p.x0 == 0:
        raise DomainError("closed forms require x0 != 0 (they divide by x0)")


def particular_solution(p: RiccatiMapParams, n: int) -> float:
    """The sigmoid analogue 1/(1 + (1/x0 - 1)*(1+r)^-n).

    Agrees with ``iterate`` exactly in exact arithmetic; the discrete
    counterpart of the ODE solution with e^r replaced by (1+r).
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")
    _check_closed_form_params(p)
    c = 1.0 / p.x0 - 1.0
    if c == 0.0:
        return 1.0
    try:
        decay = (1.0 + p.r) ** (-n)
    except OverflowError:
        return 0.0  # (1+r)^-n overflowed; the state has decayed onto x=0
    den = 1.0 + c * decay
    if abs(den) < POLE_EPS:
        raise PoleError(f"particular solution has a pole at n={n}", where=n)
    return 1.0 / den


def coefficients(p: RiccatiMapParams, n_max: int) -> RiccatiCoefficients:
    """g_n = (r*x_n + 1)/(r*(1 - x_{n+1}) + 1) and h_n = r/(same denominator)
    for n = 0..n_max-1, with x_n the particular solution."""
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    _check_closed_form_params(p)
    g = []
    h = []
    xn = particular_solution(p, 0)
    for n in range(n_max):
        xn1 = particular_solution(p, n + 1)
        den = p.r * (1.0 - xn1) + 1.0
        if abs(den) < POLE_EPS:
            raise PoleError(f"coefficient denominator vanished at n={n}", where=n)
        g.append((p.r * xn + 1.0) / den)
        h.append(p.r / den)
        xn = xn1
    return RiccatiCoefficients(tuple(g), tuple(h))


def general_solution(p: RiccatiMapParams, gamma: float, n: int,
                     coeffs: RiccatiCoefficients | None = None) -> float:
    """The one-parameter family member

        x_n + prod(1/g_k, k<n) / (gamma + sum(prod(1/g_j, j<=k) * h_k, k<n))

    with the empty product equal to 1 and the empty sum equal to 0, so n=0
    yields x0 + 1/gamma: as in the continuous case, gamma shifts the initial
    condition.  ``coeffs`` computed once per (r, x0) may be shared across
    gamma sweeps.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if not math.isfinite(gamma) or gamma == 0:
        raise DomainError("gamma must be finite and nonzero")
    _check_closed_form_params(p)
    if coeffs is None:
        coeffs = coefficients(p, n) if n > 0 else RiccatiCoefficients((), ())
    elif len(coeffs.g) < n:
        raise ValueError(f"coefficients cover {len(coeffs.g)} steps, need {n}")
    running = 1.0  # prod_{j<=k} 1/g_j while summing, equals prod_{k<n} 1/g_k at the end
    acc = 0.0
    for k in range(n):
        running /= coeffs.g[k]
        if abs(running) > _PRODUCT_GUARD or abs(running) < 1e-300:
            raise EscapeError(f"coefficient product left the guarded range at step {k}",
                              index=k)
        acc += running * coeffs.h[k]
    den = gamma + acc
    if abs(den) < POLE_EPS:
        raise PoleError(f"gamma={gamma!r} hits the pole of the general solution at n={n}",
                        where=n)
    return particular_solution(p, n) + running / den


def particular_trajectory(p: RiccatiMapParams, n: int) -> Trajectory:
    """Trajectory of the particular solution over steps 0..n."""
    samples = tuple((k, particular_solution(p, k)) for k in range(n + 1))
    return Trajectory(f"{METHOD_CLOSED_FORM}:particular", samples, DOUBLE)


def general_trajectory(p: RiccatiMapParams, gamma: float, n: int,
                       coeffs: RiccatiCoefficients | None = None) -> Trajectory:
    """Trajectory of the general solution over steps 0..n (coefficients are
    computed once and reused across the steps)."""
    if coeffs is None and n > 0:
        coeffs = coefficients(p, n)
    samples = tuple((k, general_solution(p, gamma, k, coeffs)) for k in range(n + 1))
    return Trajectory(f"{METHOD_CLOSED_FORM}:general", samples, DOUBLE)
