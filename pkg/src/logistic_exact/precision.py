"""Precision plumbing: budget rule, angle reduction, trajectory comparison.

Chaotic iteration loses a roughly constant number of significand bits per
step, so everything downstream states its working precision explicitly.
This module owns that contract: a policy type, the budget rule that turns a
step count into a bit width, a magnitude-aware reduction mod 2*pi (the
closed forms scale angles by 2^n, which outgrows any fixed significand),
and the trajectory comparison used to measure round-off divergence.

All functions are pure; values are immutable.  mpmath's context is mutated
only through ``workprec`` scopes, so callers wanting parallel sweeps should
prefer processes over threads.
"""

import math
from dataclasses import dataclass

from mpmath import mp, mpf, workprec

METHOD_ITERATED = "iterated"
METHOD_ORACLE = "oracle"
METHOD_CLOSED_FORM = "closed-form"
METHOD_ODE_CLOSED_FORM = "ode-closed-form"
METHOD_ODE_RK4 = "ode-rk4"

_REDUCE_GUARD_BITS = 20


@dataclass(frozen=True)
class PrecisionPolicy:
    """Significand width for a computation plus the safety margin used by budgets."""

    significand_bits: int
    baseline_bits: int = 64

    def __post_init__(self):
        if not isinstance(self.significand_bits, int) or self.significand_bits < 53:
            raise ValueError("significand_bits must be an integer >= 53 (native double)")
        if not isinstance(self.baseline_bits, int) or self.baseline_bits < 1:
            raise ValueError("baseline_bits must be a positive integer")


DOUBLE = PrecisionPolicy(53)


def precision_budget(n_steps: int, bits_lost_per_step: float,
                     policy: PrecisionPolicy = DOUBLE) -> int:
    """Working precision that keeps ``policy.baseline_bits`` of headroom after
    ``n_steps`` iterations each losing ``bits_lost_per_step`` bits.

    Returns ``ceil(n_steps * bits_lost_per_step) + baseline``, floored at 53.
    """
    if not isinstance(n_steps, int) or n_steps < 0:
        raise ValueError("n_steps must be a non-negative integer")
    if not math.isfinite(bits_lost_per_step) or bits_lost_per_step < 0:
        raise ValueError("bits_lost_per_step must be finite and non-negative")
    return max(53, math.ceil(n_steps * bits_lost_per_step) + policy.baseline_bits)


def budgeted_policy(n_steps: int, bits_lost_per_step: float = 1.0,
                    policy: PrecisionPolicy = DOUBLE) -> PrecisionPolicy:
    """Policy whose significand is the budget for ``n_steps`` chaotic steps.

    The default of one bit per step matches the angle-doubling maps, where
    each iteration amplifies input error by a factor of about two.
    """
    return PrecisionPolicy(precision_budget(n_steps, bits_lost_per_step, policy),
                           policy.baseline_bits)


def reduce_mod_2pi(angle, bits: int = 53) -> mpf:
    """Reduce ``angle`` into [0, 2*pi) at ``bits`` of precision.

    pi is evaluated with enough guard bits to absorb the magnitude of the
    argument, so the reduction stays accurate for angles as large as 2^60
    times a unit-scale phase.  Accepts float, int or mpf.
    """
    if not mp.isfinite(angle):
        raise ValueError("angle must be finite")
    if angle == 0:
        return mpf(0)
    extra = max(0, int(mp.mag(angle))) + _REDUCE_GUARD_BITS
    with workprec(bits + extra):
        x = angle if isinstance(angle, mpf) else mpf(angle)
        two_pi = 2 * mp.pi
        r = mp.fmod(x, two_pi)
        if r < 0:
            r += two_pi
    with workprec(bits):
        r = +r
        two_pi = 2 * mp.pi
        while r >= two_pi:
            r -= two_pi
        while r < 0:
            r += two_pi
    return r


@dataclass(frozen=True)
class Trajectory:
    """An ordered (index-or-time, value) series plus how it was produced.

    ``method_tag`` is one of the METHOD_* constants, optionally suffixed with
    a variant, e.g. ``"closed-form:simple"``.  Values may be floats or mpf at
    the declared precision; producers raise instead of emitting non-finite
    samples, and this constructor enforces that.
    """

    method_tag: str
    samples: tuple
    precision: PrecisionPolicy

    def __post_init__(self):
        if not self.method_tag:
            raise ValueError("method_tag must be non-empty")
        samples = tuple((i, v) for i, v in self.samples)
        if not samples:
            raise ValueError("a trajectory needs at least one sample")
        prev = None
        for i, v in samples:
            if prev is not None and not i > prev:
                raise ValueError("sample indices/times must be strictly increasing")
            prev = i
            if not mp.isfinite(v):
                raise ValueError(f"non-finite value at index {i!r}")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return len(self.samples)

    @property
    def indices(self):
        return tuple(i for i, _ in self.samples)

    @property
    def values(self):
        return tuple(v for _, v in self.samples)


@dataclass(frozen=True)
class DivergenceReport:
    """Per-step absolute errors between two trajectories.

    ``first_divergent_index`` is the smallest position whose error exceeds
    ``threshold`` (None if none does); ``max_error`` is the largest error.
    Both are validated against ``per_step_abs_error`` on construction.
    """

    per_step_abs_error: tuple
    first_divergent_index: int | None
    threshold: float
    max_error: float

    def __post_init__(self):
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")
        errors = tuple(float(e) for e in self.per_step_abs_error)
        object.__setattr__(self, "per_step_abs_error", errors)
        if any(e < 0 or not math.isfinite(e) for e in errors):
            raise ValueError("per-step errors must be finite and non-negative")
        if errors and self.max_error != max(errors):
            raise ValueError("max_error does not equal the largest per-step error")
        expected = next((i for i, e in enumerate(errors) if e > self.threshold), None)
        if self.first_divergent_index != expected:
            raise ValueError("first_divergent_index does not match the threshold")

    @classmethod
    def from_errors(cls, errors, threshold: float) -> "DivergenceReport":
        errors = tuple(float(e) for e in errors)
        first = next((i for i, e in enumerate(errors) if e > threshold), None)
        return cls(errors, first, float(threshold), max(errors) if errors else 0.0)


def compare_trajectories(a: Trajectory, b: Trajectory,
                         threshold: float) -> DivergenceReport:
    """Report the absolute per-step differences of two trajectories.

    The trajectories must be sampled on the identical index set.  The
    subtraction is carried out at the higher of the two precisions; the
    report stores the differences as doubles.
    """
    if len(a.samples) != len(b.samples):
        raise ValueError(
            f"trajectories have different lengths ({len(a.samples)} vs {len(b.samples)})")
    for (ia, _), (ib, _) in zip(a.samples, b.samples):
        if ia != ib:
            raise ValueError(
                f"trajectory index sets differ (first mismatch: {ia!r} vs {ib!r})")
    bits = max(a.precision.significand_bits, b.precision.significand_bits) + 10
    errors = []
    with workprec(bits):
        for (_, va), (_, vb) in zip(a.samples, b.samples):
            xa = va if isinstance(va, mpf) else mpf(va)
            xb = vb if isinstance(vb, mpf) else mpf(vb)
            errors.append(float(abs(xa - xb)))
    return DivergenceReport.from_errors(errors, threshold)
