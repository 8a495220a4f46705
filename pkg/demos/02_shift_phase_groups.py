"""The qubit story in any dimension: d^2 orthogonal outputs from one probe.

The shift-and-phase unitaries u(m, n) generalize the Pauli group to
dimension d.  A maximally entangled probe turns all d^2 of them into an
orthonormal basis of the doubled space; the output span scales as d times
the probe's Schmidt rank, and the accessible information grows by exactly
the probe's entanglement entropy.
"""

import numpy as np

from entprobe import (
    ProbeState,
    holevo_chi,
    output_gram,
    output_span_dimension,
    schur_overlap_omega,
    weyl_heisenberg_group,
)
from entprobe.rand import generator, random_probe

for d in (2, 3, 4):
    group = weyl_heisenberg_group(d)
    probe = ProbeState.maximally_entangled(d)
    gram = output_gram(group, probe)
    off = np.max(np.abs(gram - np.eye(d * d)))
    print(f"d={d}: {len(group)} transformations, Gram deviation from identity {off:.1e}")

print("\nhow the output span follows the Schmidt rank (d = 3):")
rng = generator(7)
group = weyl_heisenberg_group(3)
for rank in (1, 2, 3):
    probe = random_probe(3, rng, rank=rank)
    print(f"  Schmidt rank {rank}: span = {output_span_dimension(group, probe)} (= 3 x {rank})")

print("\ninformation bound, in bits (d = 2 to 4):")
for d in (2, 3, 4):
    group = weyl_heisenberg_group(d)
    maxent = ProbeState.maximally_entangled(d)
    skewed = ProbeState.from_schmidt([0.9] + [0.1 / (d - 1)] * (d - 1))
    print(
        f"  d={d}: maximally entangled {holevo_chi(group, maxent):.4f}"
        f" (= 2 log2 d), skewed probe {holevo_chi(group, skewed):.4f}"
    )

print("\naverage output overlap (smaller is better, floor is 1/d):")
for weights in ([1.0, 0.0], [0.75, 0.25], [0.5, 0.5]):
    omega = schur_overlap_omega(ProbeState.from_schmidt(weights))
    print(f"  Schmidt weights {weights}: overlap {omega:.4f}")
