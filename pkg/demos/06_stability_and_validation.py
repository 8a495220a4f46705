"""Phase stability, and checking every formula by seeded simulation.

A squeezed probe is exquisitely sharp along its squeezing axis but its
sensitivity blows up exponentially under a small quadrature-phase
mismatch.  The entangled probe's noise does not depend on that phase at
all.  The same Monte Carlo harness that certifies the error formulas
reproduces both behaviors from sampled outcomes alone.
"""

import numpy as np

from entprobe import (
    DiscriminationProblem,
    NoiseSpec,
    optimal_pair_input,
    sample_helstrom,
    sample_heterodyne,
    stability_scan,
)

print("variance under quadrature-phase mismatch (s = 2, x = 0.5):")
scan = stability_scan(2.0, 0.5, np.linspace(-0.1, 0.1, 5))
print(f"  photon budgets: squeezed {scan.squeezed_photons:.2f}, entangled {scan.entangled_photons:.2f}")
print("  phi        squeezed    entangled")
for phi, sq, ent in zip(scan.phis, scan.squeezed_variance, scan.entangled_variance):
    print(f"  {phi:+.3f}    {sq:.6f}    {ent:.6f}")
print("-> the squeezed column moves by orders of magnitude, the entangled one not at all")

print("\nMonte Carlo validation reports (seeded, bit-reproducible):")
w = np.diag([1.0, np.exp(1j * np.pi / 2)])
problem = DiscriminationProblem(w, np.eye(2, dtype=complex))
report = sample_helstrom(problem, optimal_pair_input(w), 100_000, seed=2024)
print(
    f"  discrimination: empirical {report.empirical:.5f} vs analytic {report.analytic:.5f}"
    f" (z = {report.z_score:+.2f}, rng = {report.rng})"
)
for scheme in ("entangled", "unentangled"):
    report = sample_heterodyne(0.6, 0.5 + 0.5j, NoiseSpec(0.4), scheme, 100_000, seed=2024)
    print(
        f"  heterodyne {scheme:12s}: empirical {report.empirical:.5f}"
        f" vs analytic {report.analytic:.5f} (z = {report.z_score:+.2f})"
    )
