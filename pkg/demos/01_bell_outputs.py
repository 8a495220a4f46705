"""Why an entangled probe tells the four Pauli transformations apart.

Feeding one qubit to an unknown Pauli gate can never work: the four
possible outputs live in a two-dimensional space, so they are linearly
dependent.  Feeding half of a maximally entangled pair instead produces
four mutually orthogonal outputs, and one measurement identifies the gate
with certainty.
"""

import numpy as np

from entprobe import ProbeState, output_gram, output_span_dimension, pauli_group
from entprobe.rand import generator, random_pure_state

group = pauli_group()

# A single-qubit probe: four outputs crammed into two dimensions.
psi = random_pure_state(2, generator(1))
outputs = np.stack([u @ psi for u in group.elements])
print("single-qubit probe:")
print("  outputs span a space of dimension", np.linalg.matrix_rank(outputs))
print("  -> linearly dependent, no measurement can sort four of them reliably")

# Half of a maximally entangled pair: the four outputs are the Bell basis.
probe = ProbeState.maximally_entangled(2)
gram = output_gram(group, probe)
print("\nentangled probe:")
print("  output span dimension:", output_span_dimension(group, probe))
print("  Gram matrix of the four outputs (abs values):")
for row in np.abs(gram):
    print("   ", np.array2string(row, precision=3, suppress_small=True))
print("  -> exactly orthogonal: the probe doubles the usable output space")
