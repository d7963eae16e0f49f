"""Shape of the 2D outcome peak against the predicted support region.

With Hessian H chosen so that (N/m) H = 0.1*[[1, 1], [1, -1]], the predicted
support is the image of the centered unit square under A = (N*l/m) H: a square
of side sqrt(2)/10 * l, rotated 45 degrees.  The left panel renders measured
probability (darker = more mass), the right panel the predicted region.
"""
import numpy as np

from qgrad import (
    ProblemSpec,
    build_phase_state,
    fourier_transform,
    outcome_distribution,
    quadratic,
    signed_index,
    stationary_phase_sigma,
    support_membership,
)

spec = ProblemSpec(d=2, N=64, n_o=16, l=100.0, m=1.0)
H = (spec.m / spec.N) * 0.1 * np.array([[1.0, 1.0], [1.0, -1.0]])

dist = outcome_distribution(fourier_transform(build_phase_state(quadratic([0, 0], H), spec)))
pred = stationary_phase_sigma(H, spec)

ks = signed_index(np.arange(spec.N), spec.N)
order = np.argsort(ks)  # display axes from most negative to most positive
probs = dist.reshaped()[np.ix_(order, order)]
k_sorted = ks[order]

window = 12  # cells around the origin
sel = (k_sorted >= -window) & (k_sorted <= window)
sub = probs[np.ix_(sel, sel)]
coords = k_sorted[sel]

shades = " .:*#@"
peak = sub.max()
print(f"measured probability (left) vs predicted region (right), |k| <= {window}")
for i, k1 in enumerate(coords):
    left = "".join(shades[min(int(len(shades) * v / (peak * 1.0001)), len(shades) - 1)]
                   for v in sub[i])
    right = "".join(
        "#" if support_membership([float(k1), float(k2)], pred, slack=0.0) else " "
        for k2 in coords
    )
    print(f"{left}   {right}")

inside = support_membership(
    np.stack(np.meshgrid(ks, ks, indexing="ij"), -1).reshape(-1, 2), pred, slack=1.5)
print()
print(f"predicted region: square of side {np.sqrt(2) / 10 * spec.l:.1f} cells, 45 degrees")
print(f"mass within 1.5 cells of it: {dist.probs[inside].sum():.4f}")
