"""Telling two unitaries apart: geometry on the unit circle decides.

For a pair (u1, u2) everything reduces to the eigenvalues of w = u2† u1,
which sit on the unit circle.  The minimum achievable overlap is the
distance from the origin to their polygon; entangling with an ancilla does
not move it, but spending several copies of the unknown gate rotates the
polygon's angular spread until the origin falls inside and discrimination
becomes perfect.
"""

import numpy as np

from entprobe import (
    DiscriminationProblem,
    copies_for_perfect,
    helstrom_error,
    min_overlap_r,
    optimal_pair_input,
    tensor_power_spread,
)
from entprobe.rand import generator, haar_unitary

w = np.diag(np.exp(1j * np.array([0.0, np.pi / 3.0])))
eye = np.eye(2, dtype=complex)
problem = DiscriminationProblem(w, eye)

polygon = min_overlap_r(w)
print(f"eigenphases 0 and pi/3: r = {polygon.r:.6f}, spread = {polygon.spread:.6f}")

psi = optimal_pair_input(w)
print(f"best single-use input reaches overlap {abs(np.vdot(psi, w @ psi)):.6f}")
print(f"and error probability {helstrom_error(problem, psi):.6f}")

print("\nspread of the n-copy polygon (origin captured once spread >= pi):")
for n in range(1, 5):
    print(f"  n={n}: spread = {tensor_power_spread(w, n):.6f}")
print("copies needed for an exact call:", copies_for_perfect(problem, 16))

print("\nthe same machinery on a random qutrit pair:")
rng = generator(3)
problem = DiscriminationProblem(haar_unitary(3, rng), haar_unitary(3, rng))
polygon = min_overlap_r(problem.relative_unitary)
psi = optimal_pair_input(problem.relative_unitary)
print(f"  r = {polygon.r:.6f}, one-shot error = {helstrom_error(problem, psi):.6f}")
print(f"  copies for perfect discrimination: {copies_for_perfect(problem, 64)}")
