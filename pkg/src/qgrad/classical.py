"""Classical finite-difference gradient baselines with query accounting.

Forward differences use d+1 function evaluations, central differences 2d.
An optional fixed-point quantizer routes every evaluation through the same
scale and rounding convention as the quantum oracle, to model a blackbox
that returns f with a finite number of bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ProblemSpec, quantize_output, round_half_up
from .functions import TestFunction


@dataclass
class ClassicalReport:
    gradient_estimate: np.ndarray
    queries: int
    l_used: float
    quantized: bool = False
    n_o: int | None = None


@dataclass
class FixedPointQuantizer:
    """Fixed-point evaluation model: one unit = m*l/(N*N_o) in function value.

    wrap=False keeps the full integer, the natural classical register (the
    bits needed to cover the range are what the precision formulas count).
    wrap=True reduces mod N_o exactly like the quantum oracle register and
    dequantizes to the centered representative; it is only faithful while
    |f| < m*l/(2N).
    """

    n_o: int
    N: int
    l: float
    m: float
    wrap: bool = False

    @classmethod
    def from_spec(cls, spec: ProblemSpec, wrap: bool = False) -> "FixedPointQuantizer":
        return cls(n_o=spec.n_o, N=spec.N, l=spec.l, m=spec.m, wrap=wrap)

    @property
    def N_o(self) -> int:
        return 2 ** self.n_o

    @property
    def step(self) -> float:
        return (self.m * self.l) / (self.N * self.N_o)

    def quantize(self, value):
        if self.wrap:
            spec = ProblemSpec(d=1, N=self.N, n_o=self.n_o, l=self.l, m=self.m)
            return quantize_output(value, spec)
        return round_half_up(np.asarray(value, dtype=float) / self.step)

    def dequantize(self, q):
        q = np.asarray(q)
        if self.wrap:
            q = (q + self.N_o // 2) % self.N_o - self.N_o // 2
        return q * self.step

    def evaluate(self, f: TestFunction, x) -> float:
        return float(self.dequantize(self.quantize(f.eval(x))))


def _evaluator(f: TestFunction, quantizer: FixedPointQuantizer | None):
    if quantizer is None:
        return lambda p: float(f.eval(p))
    return lambda p: quantizer.evaluate(f, p)


def forward_difference(
    f: TestFunction, x, l: float, quantizer: FixedPointQuantizer | None = None
) -> ClassicalReport:
    """g_i = (f(x + l*e_i) - f(x)) / l, using d+1 queries."""
    if not l > 0:
        raise ValueError(f"l must be positive, got {l}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = x.size
    ev = _evaluator(f, quantizer)
    f0 = ev(x)
    grad = np.empty(d)
    for i in range(d):
        shifted = x.copy()
        shifted[i] += l
        grad[i] = (ev(shifted) - f0) / l
    return ClassicalReport(
        gradient_estimate=grad,
        queries=d + 1,
        l_used=l,
        quantized=quantizer is not None,
        n_o=quantizer.n_o if quantizer else None,
    )


def central_difference(
    f: TestFunction, x, l: float, quantizer: FixedPointQuantizer | None = None
) -> ClassicalReport:
    """g_i = (f(x + (l/2)e_i) - f(x - (l/2)e_i)) / l, using 2d queries.

    Centering the stencil cancels the quadratic terms, leaving an error of
    order l^2 from the cubic ones.
    """
    if not l > 0:
        raise ValueError(f"l must be positive, got {l}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = x.size
    ev = _evaluator(f, quantizer)
    grad = np.empty(d)
    for i in range(d):
        hi, lo = x.copy(), x.copy()
        hi[i] += l / 2.0
        lo[i] -= l / 2.0
        grad[i] = (ev(hi) - ev(lo)) / l
    return ClassicalReport(
        gradient_estimate=grad,
        queries=2 * d,
        l_used=l,
        quantized=quantizer is not None,
        n_o=quantizer.n_o if quantizer else None,
    )


@dataclass
class ScalingFit:
    """Log-log fit of finite-difference error against step size.

    degenerate flags data at the floating-point noise floor (e.g. central
    differences on a quadratic, where truncation cancels exactly); the slope
    is meaningless there and reported as nan.
    """

    slope: float
    intercept: float
    degenerate: bool
    l_values: np.ndarray
    errors: np.ndarray


_METHODS = {"forward": forward_difference, "central": central_difference}


def error_scaling_fit(f: TestFunction, x, l_values, method: str = "central") -> ScalingFit:
    """Least-squares slope of log(error) vs log(l) over a sweep of step sizes.

    Needs at least 4 step sizes spanning a decade.  The error at each l is the
    max-norm deviation from the analytic gradient.
    """
    if method not in _METHODS:
        raise ValueError(f"method must be one of {sorted(_METHODS)}, got {method!r}")
    ls = np.sort(np.asarray(l_values, dtype=float))
    if ls.size < 4:
        raise ValueError(f"need at least 4 step sizes, got {ls.size}")
    if ls[-1] / ls[0] < 10.0:
        raise ValueError("step sizes must span at least one decade")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    true = np.atleast_1d(np.asarray(f.grad(x), dtype=float)).reshape(-1)
    diff = _METHODS[method]
    errors = np.array(
        [np.max(np.abs(diff(f, x, l).gradient_estimate - true)) for l in ls]
    )

    floor = 1e-10 * max(1.0, float(np.max(np.abs(true))))
    if np.any(errors == 0.0) or np.max(errors) < floor:
        return ScalingFit(slope=float("nan"), intercept=float("nan"), degenerate=True,
                          l_values=ls, errors=errors)
    slope, intercept = np.polyfit(np.log(ls), np.log(errors), 1)
    return ScalingFit(slope=float(slope), intercept=float(intercept), degenerate=False,
                      l_values=ls, errors=errors)
