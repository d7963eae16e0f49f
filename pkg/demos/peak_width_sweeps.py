"""Peak width of the outcome distribution versus the analytic prediction.

For a 1D quadratic with curvature parameter alpha = (l/2m) f'', the predicted
standard deviation of the measured frequency is alpha*N/sqrt(3) lattice cells.
Two sweeps: fixed alpha with growing lattice, and fixed lattice with growing
curvature.  Widths are wrapped (circular) standard deviations, since the
outcome lattice is periodic.
"""
import math

from qgrad import ProblemSpec, quadratic, run_gradient_estimation


def measure(alpha, N):
    spec = ProblemSpec(d=1, N=N, n_o=16, l=2.0 * alpha, m=1.0)  # f'' = 1
    report = run_gradient_estimation(quadratic([0.0], [[1.0]]), spec, shots=0)
    return float(report.sigma_k_measured[0])


print("sweep 1: alpha = 0.02, lattice size varies")
print(f"{'N':>5} {'predicted':>10} {'measured':>10} {'ratio':>7}")
for N in (16, 32, 64, 128, 256):
    pred = 0.02 * N / math.sqrt(3)
    meas = measure(0.02, N)
    print(f"{N:>5} {pred:>10.4f} {meas:>10.4f} {meas / pred:>7.3f}")

print()
print("sweep 2: N = 80, curvature varies")
print(f"{'alpha':>7} {'predicted':>10} {'measured':>10} {'ratio':>7}")
for alpha in (0.005, 0.01, 0.02, 0.03, 0.04, 0.05):
    pred = alpha * 80 / math.sqrt(3)
    meas = measure(alpha, 80)
    print(f"{alpha:>7.3f} {pred:>10.4f} {meas:>10.4f} {meas / pred:>7.3f}")

print()
print("In gradient units the predicted width (l/(2*sqrt(3))) * |f''| does not")
print("depend on N: doubling the lattice sharpens the frequency estimate at")
print("exactly the rate the peak (in cells) broadens.")
