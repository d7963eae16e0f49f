"""Problem parameters and fixed-point maps between lattice indices and real values.

Three maps tie the integer lattices to physical quantities:

    encode_input:    delta in [0,N)^d      ->  sample point x0 + (l/N)(delta - N/2)
    quantize_output: real function value   ->  round(N*N_o*f / (m*l)) mod N_o
    decode_outcome:  outcome k in [0,N)^d  ->  gradient m*k'/N, k' = k or k - N

`l` is the side length of the sampled hypercube, `m` the width of the symmetric
interval [-m/2, m/2) assumed to bound each gradient component.  Rounding is
round-to-nearest with ties toward +inf, centralized in `round_half_up` so the
convention can be swapped in one place.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_POINTS = 2 ** 24


def round_half_up(x) -> np.ndarray:
    """Nearest integer, ties toward +inf (3.5 -> 4, -2.5 -> -2)."""
    return np.floor(np.asarray(x, dtype=float) + 0.5).astype(np.int64)


def round_half_down(x) -> np.ndarray:
    """Nearest integer, ties toward -inf (2.5 -> 2, -2.5 -> -3)."""
    return np.ceil(np.asarray(x, dtype=float) - 0.5).astype(np.int64)


@dataclass(frozen=True)
class ProblemSpec:
    """All parameters of one gradient-estimation problem.

    d     number of input registers (gradient components)
    N     lattice points per axis (any integer >= 2, not only powers of two)
    n_o   output-register bits; the modular ring has N_o = 2**n_o elements
    l     side length of the sampled hypercube centered at x0
    m     width of the interval bounding each gradient component
    x0    evaluation point (defaults to the origin)
    max_points   cap on total lattice size N**d
    """

    d: int
    N: int
    n_o: int
    l: float
    m: float
    x0: np.ndarray | None = None
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if self.n_o < 1:
            raise ValueError(f"n_o must be >= 1, got {self.n_o}")
        if not self.l > 0:
            raise ValueError(f"l must be positive, got {self.l}")
        if not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.N ** self.d > self.max_points:
            raise ValueError(
                f"lattice size N**d = {self.N}**{self.d} exceeds the budget "
                f"of {self.max_points} points"
            )
        x0 = np.zeros(self.d) if self.x0 is None else np.asarray(self.x0, dtype=float)
        if x0.shape != (self.d,):
            raise ValueError(f"x0 must have shape ({self.d},), got {x0.shape}")
        object.__setattr__(self, "x0", x0)

    @property
    def N_o(self) -> int:
        return 2 ** self.n_o

    @property
    def shape(self) -> tuple[int, ...]:
        """Lattice shape (N, ..., N), d axes."""
        return (self.N,) * self.d

    @property
    def size(self) -> int:
        """Total number of lattice points N**d."""
        return self.N ** self.d


def _index_array(values, spec: ProblemSpec, what: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != spec.d:
        raise ValueError(f"{what} must have last axis of length d={spec.d}, got shape {arr.shape}")
    if np.any(arr < 0) or np.any(arr >= spec.N):
        raise ValueError(f"{what} components must lie in [0, {spec.N})")
    return arr


def encode_input(delta, spec: ProblemSpec) -> np.ndarray:
    """Physical sample point for lattice index `delta`, shape (..., d).

    Components lie in [x0 - l/2, x0 + l/2); the lattice midpoint delta = N/2
    maps exactly onto the evaluation point x0.
    """
    arr = _index_array(delta, spec, "delta")
    return spec.x0 + (spec.l / spec.N) * (arr - spec.N / 2.0)


def quantize_output(f_val, spec: ProblemSpec):
    """Fixed-point oracle output: round(N*N_o*f / (m*l)) reduced mod N_o.

    The modular wrap models an n_o-bit register written by modular addition;
    one unit corresponds to a function increment of m*l/(N*N_o).
    """
    scaled = np.asarray(f_val, dtype=float) * (spec.N * spec.N_o) / (spec.m * spec.l)
    q = round_half_up(scaled) % spec.N_o
    if np.ndim(f_val) == 0:
        return int(q)
    return q


def signed_index(k, N: int) -> np.ndarray:
    """Centered representative of k mod N: k if k < N/2, else k - N."""
    arr = np.asarray(k)
    return np.where(arr < N / 2.0, arr, arr - N)


def decode_outcome(k, spec: ProblemSpec) -> np.ndarray:
    """Gradient estimate for measured outcome `k`: m * k'/N with signed k'.

    Outcomes at or above N/2 represent negative frequencies, so every decoded
    component lies in [-m/2, m/2).
    """
    arr = _index_array(k, spec, "k")
    return spec.m * signed_index(arr, spec.N).astype(float) / spec.N


def nearest_lattice_index(gradient, spec: ProblemSpec) -> np.ndarray:
    """Wrapped lattice index of the representable frequency nearest `gradient`.

    Ties (gradient exactly between two lattice frequencies) break toward the
    negative neighbor.  Used to define "success" for a run: the measurement
    cannot do better than the nearest point of the m/N grid.
    """
    g = np.atleast_1d(np.asarray(gradient, dtype=float))
    if g.shape[-1] != spec.d:
        raise ValueError(f"gradient must have last axis of length d={spec.d}")
    return round_half_down(spec.N * g / spec.m) % spec.N
