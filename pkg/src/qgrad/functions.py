"""Catalog of test functions with analytic gradients and Hessians.

Every builder returns a `TestFunction` whose callbacks are vectorized over
leading axes: `eval` maps points of shape (..., d) to values of shape (...),
`grad` to (..., d), and `hess` to (..., d, d).  Scalar input is accepted for
one-dimensional functions.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .core import ProblemSpec, encode_input


@dataclass
class TestFunction:
    """A real scalar function of d reals with analytic derivative callbacks.

    f_min/f_max, when set, bound the values over the sampled domain and are
    checked while building the phase grid.
    """

    name: str
    d: int
    eval: Callable[[np.ndarray], np.ndarray]
    grad: Callable[[np.ndarray], np.ndarray]
    hess: Callable[[np.ndarray], np.ndarray]
    f_min: float | None = None
    f_max: float | None = None

    def __call__(self, x):
        return self.eval(x)


def _points(x, d: int) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0:
        pts = pts.reshape(1)
    if pts.shape[-1] != d:
        raise ValueError(f"expected points with last axis {d}, got shape {pts.shape}")
    return pts


def linear(g, c: float = 0.0) -> TestFunction:
    """f(x) = c + g.x, the exactly-linear case (zero Hessian everywhere)."""
    g = np.atleast_1d(np.asarray(g, dtype=float))
    d = g.size

    def ev(x):
        return _points(x, d) @ g + c

    def gr(x):
        pts = _points(x, d)
        return np.broadcast_to(g, pts.shape).copy()

    def he(x):
        pts = _points(x, d)
        return np.zeros(pts.shape[:-1] + (d, d))

    return TestFunction(name="linear", d=d, eval=ev, grad=gr, hess=he)


def quadratic(g, H, c: float = 0.0) -> TestFunction:
    """f(x) = c + g.x + x^T H x / 2 with symmetric H."""
    g = np.atleast_1d(np.asarray(g, dtype=float))
    H = np.atleast_2d(np.asarray(H, dtype=float))
    d = g.size
    if H.shape != (d, d):
        raise ValueError(f"H must have shape ({d}, {d}), got {H.shape}")
    if not np.allclose(H, H.T, rtol=1e-12, atol=1e-12):
        raise ValueError("H must be symmetric")

    def ev(x):
        pts = _points(x, d)
        return c + pts @ g + 0.5 * np.einsum("...i,ij,...j->...", pts, H, pts)

    def gr(x):
        return g + _points(x, d) @ H

    def he(x):
        pts = _points(x, d)
        return np.broadcast_to(H, pts.shape[:-1] + (d, d)).copy()

    return TestFunction(name="quadratic", d=d, eval=ev, grad=gr, hess=he)


def cubic_1d(a3: float) -> TestFunction:
    """f(x) = a3 * x^3 in one dimension; constant third derivative 6*a3."""

    def ev(x):
        return a3 * _points(x, 1)[..., 0] ** 3

    def gr(x):
        return 3.0 * a3 * _points(x, 1) ** 2

    def he(x):
        return (6.0 * a3 * _points(x, 1))[..., None]

    return TestFunction(name="cubic_1d", d=1, eval=ev, grad=gr, hess=he)


def sinusoid(amplitude: float, wavevector, phase: float = 0.0) -> TestFunction:
    """f(x) = amplitude * sin(k.x + phase) with wavevector k."""
    k = np.atleast_1d(np.asarray(wavevector, dtype=float))
    d = k.size

    def ev(x):
        return amplitude * np.sin(_points(x, d) @ k + phase)

    def gr(x):
        s = _points(x, d) @ k + phase
        return amplitude * np.cos(s)[..., None] * k

    def he(x):
        s = _points(x, d) @ k + phase
        return -amplitude * np.sin(s)[..., None, None] * np.outer(k, k)

    return TestFunction(name="sinusoid", d=d, eval=ev, grad=gr, hess=he)


CATALOG: dict[str, Callable[..., TestFunction]] = {
    "linear": linear,
    "quadratic": quadratic,
    "cubic_1d": cubic_1d,
    "sinusoid": sinusoid,
}


def scanned_range(fn: TestFunction, spec: ProblemSpec, points_per_axis: int | None = None):
    """(min, max) of `fn` over the sampled lattice, by full or coarse grid scan.

    With points_per_axis=None the scan covers every lattice point, so the
    bounds are exact for the sampled domain; a coarse scan may miss extrema
    between scanned points.
    """
    if points_per_axis is None:
        axes = [np.arange(spec.N)] * spec.d
    else:
        axes = [np.unique(np.round(np.linspace(0, spec.N - 1, points_per_axis)).astype(int))] * spec.d
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, spec.d)
    values = fn.eval(encode_input(mesh, spec))
    return float(np.min(values)), float(np.max(values))


def with_scanned_range(fn: TestFunction, spec: ProblemSpec, points_per_axis: int | None = None) -> TestFunction:
    """Copy of `fn` with f_min/f_max filled in by `scanned_range`."""
    lo, hi = scanned_range(fn, spec, points_per_axis)
    return replace(fn, f_min=lo, f_max=hi)
