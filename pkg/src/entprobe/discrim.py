"""Discrimination of unitary transformations with and without entangled probes.

Covers the finite-dimensional story end to end: projective unitary groups
and their entangled-probe outputs, accessible-information accounting,
group-covariant measurements, the two-hypothesis error bound, and the
eigenvalue-polygon geometry that decides when discrimination can be made
perfect by using several copies of the unknown transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linops import (
    ProbeState,
    assert_unitary,
    eig_unitary,
    matrix_rank,
    partial_trace,
    vectorize,
    von_neumann_entropy,
)

TWO_PI = 2.0 * np.pi

# Eigenphases closer than this (on the circle) collapse to one polygon vertex.
PHASE_DEDUPE_TOL = 1e-9


# ---------------------------------------------------------------------------
# unitary groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UnitaryGroup:
    """Finite list of same-dimension unitaries, closed under products up to phase."""

    dim: int
    elements: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("one label per element is required")
        frozen = []
        for u in self.elements:
            u = assert_unitary(u)
            if u.shape != (self.dim, self.dim):
                raise ValueError(f"element of shape {u.shape} in a dim-{self.dim} group")
            u = u.copy()
            u.setflags(write=False)
            frozen.append(u)
        object.__setattr__(self, "elements", tuple(frozen))
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def closure_defect(self) -> float:
        """Worst-case distance of any pairwise product from a phase times a member.

        For each product g*h the best-matching member k is the one maximizing
        |Tr[u_k† u_g u_h]|; the defect is the max-norm residual after peeling
        off the fitted phase.  Small defect certifies projective closure.
        """
        worst = 0.0
        for ug in self.elements:
            for uh in self.elements:
                prod = ug @ uh
                traces = np.array([np.vdot(uk, prod) for uk in self.elements])
                k = int(np.argmax(np.abs(traces)))
                omega = traces[k] / self.dim
                if abs(abs(omega) - 1.0) > 1e-6:
                    return float("inf")
                worst = max(worst, float(np.max(np.abs(prod - omega * self.elements[k]))))
        return worst

    def irreducibility_defect(self, n_probes: int = 5, seed: int = 7) -> float:
        """Max-norm gap between plainly averaged conjugations and Tr[m] I / d.

        Averaging u m u† over the group sends any test matrix m to
        Tr[m] I / d exactly when the representation is irreducible, so the
        returned defect doubles as an irreducibility certificate.
        """
        rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
        eye = np.eye(self.dim)
        worst = 0.0
        for _ in range(n_probes):
            m = rng.standard_normal((self.dim, self.dim)) + 1j * rng.standard_normal(
                (self.dim, self.dim)
            )
            avg = sum(u @ m @ u.conj().T for u in self.elements) / len(self)
            worst = max(worst, float(np.max(np.abs(avg - np.trace(m) * eye / self.dim))))
        return worst

    def is_irreducible(self, atol: float = 1e-8) -> bool:
        return self.irreducibility_defect() <= atol


def pauli_group() -> UnitaryGroup:
    """The four single-qubit Pauli transformations."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return UnitaryGroup(2, (np.eye(2, dtype=complex), sx, sy, sz), ("I", "X", "Y", "Z"))


def weyl_heisenberg_group(d: int) -> UnitaryGroup:
    """The d^2 shift-and-phase unitaries u(m, n) = sum_k e^(2 pi i k m / d) |k><k+n mod d|."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    elements = []
    labels = []
    for m in range(d):
        for n in range(d):
            u = np.zeros((d, d), dtype=complex)
            for k in range(d):
                u[k, (k + n) % d] = np.exp(2j * np.pi * k * m / d)
            elements.append(u)
            labels.append(f"U({m},{n})")
    return UnitaryGroup(d, tuple(elements), tuple(labels))


# ---------------------------------------------------------------------------
# entangled-probe outputs
# ---------------------------------------------------------------------------


def apply_local(u, e: ProbeState) -> ProbeState:
    """Act with ``u`` on the probed factor only; amplitudes map e -> u e."""
    u = assert_unitary(u)
    if u.shape[0] != e.dim:
        raise ValueError(f"unitary dim {u.shape[0]} does not match probe dim {e.dim}")
    return ProbeState(u @ e.e_op)


def output_vectors(group: UnitaryGroup, e: ProbeState) -> np.ndarray:
    """Stack of the bipartite output vectors, one row per group element."""
    if group.dim != e.dim:
        raise ValueError("group and probe dimensions differ")
    return np.stack([vectorize(u @ e.e_op) for u in group.elements])


def output_gram(group: UnitaryGroup, e: ProbeState) -> np.ndarray:
    v = output_vectors(group, e)
    return v.conj() @ v.T


def output_span_dimension(group: UnitaryGroup, e: ProbeState) -> int:
    """Rank of the averaged output projector; equals dim times the Schmidt rank."""
    v = output_vectors(group, e)
    avg = (v.T @ v.conj()) / len(group)
    return matrix_rank(avg)


def holevo_chi(group: UnitaryGroup, e: ProbeState, atol: float = 1e-8) -> float:
    """Accessible-information bound of the output ensemble, in bits.

    Computed straight from the ensemble definition, entropy of the average
    state minus average entropy of the (pure) outputs.  Requires the group
    representation to pass the irreducibility certificate; for such groups
    the value equals log2(dim) plus the entanglement entropy of the probe.
    """
    if group.irreducibility_defect() > atol:
        raise ValueError(
            "group representation failed the irreducibility certificate; "
            "reducible representations are not supported"
        )
    v = output_vectors(group, e)
    avg = (v.T @ v.conj()) / len(group)
    avg = (avg + avg.conj().T) / 2.0
    mean_member_entropy = float(
        np.mean([von_neumann_entropy(np.outer(row, row.conj())) for row in v])
    )
    return von_neumann_entropy(avg) - mean_member_entropy


# ---------------------------------------------------------------------------
# covariant measurements
# ---------------------------------------------------------------------------


def _validate_povm_seed(seed_op, d: int, atol: float = 1e-8) -> np.ndarray:
    s = np.asarray(seed_op, dtype=complex)
    if s.shape != (d * d, d * d):
        raise ValueError(f"seed must act on the doubled space, expected {(d * d, d * d)}")
    if np.max(np.abs(s - s.conj().T)) > 1e-8:
        raise ValueError("seed operator must be Hermitian")
    if np.linalg.eigvalsh(s).min() < -1e-10:
        raise ValueError("seed operator must be positive semidefinite")
    if np.max(np.abs(partial_trace(s, d, d, side=1) - np.eye(d))) > atol:
        raise ValueError("seed operator must have partial trace I over the probed factor")
    return s


def covariant_povm(group: UnitaryGroup, seed_op, atol: float = 1e-8) -> list:
    """Group-covariant POVM generated by conjugating a normalized seed.

    Elements are (d/|G|) (u ⊗ I) seed (u ⊗ I)† and sum to the identity on
    the doubled space whenever the seed passes validation.
    """
    d = group.dim
    s = _validate_povm_seed(seed_op, d, atol)
    weight = d / len(group)
    eye = np.eye(d)
    elements = []
    for u in group.elements:
        big = np.kron(u, eye)
        elements.append(weight * (big @ s @ big.conj().T))
    return elements


def average_likelihood(seed_op, e: ProbeState, atol: float = 1e-8) -> float:
    """Average likelihood <<e| seed |e>> of the matched covariant strategy.

    Bounded by the probe dimension, with equality exactly at maximally
    entangled probes paired with their own rank-one seed.
    """
    s = _validate_povm_seed(seed_op, e.dim, atol)
    v = e.as_vector()
    return float(np.real(np.vdot(v, s @ v)))


def povm_probabilities(elements, state_vector) -> np.ndarray:
    """Outcome probabilities of a POVM on a pure state vector."""
    v = np.asarray(state_vector, dtype=complex).reshape(-1)
    return np.array([float(np.real(np.vdot(v, p @ v))) for p in elements])


# ---------------------------------------------------------------------------
# two-hypothesis discrimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiscriminationProblem:
    """Two candidate unitaries with prior probabilities."""

    u1: np.ndarray
    u2: np.ndarray
    p1: float = 0.5
    p2: float = 0.5

    def __post_init__(self):
        u1 = assert_unitary(self.u1)
        u2 = assert_unitary(self.u2)
        if u1.shape != u2.shape:
            raise ValueError(f"hypotheses act on different spaces: {u1.shape} vs {u2.shape}")
        if self.p1 < 0 or self.p2 < 0 or abs(self.p1 + self.p2 - 1.0) > 1e-10:
            raise ValueError(f"priors must be nonnegative and sum to 1, got {self.p1}, {self.p2}")
        for name, u in (("u1", u1), ("u2", u2)):
            u = u.copy()
            u.setflags(write=False)
            object.__setattr__(self, name, u)

    @property
    def dim(self) -> int:
        return self.u1.shape[0]

    @property
    def relative_unitary(self) -> np.ndarray:
        """The operator u2† u1 whose eigenvalue geometry decides everything."""
        return self.u2.conj().T @ self.u1


def _input_overlap(problem: DiscriminationProblem, probe) -> complex:
    w = problem.relative_unitary
    if isinstance(probe, ProbeState):
        if probe.dim != problem.dim:
            raise ValueError("probe dimension does not match the hypotheses")
        return complex(np.trace(probe.e_op.conj().T @ w @ probe.e_op))
    psi = np.asarray(probe, dtype=complex).reshape(-1)
    if psi.size != problem.dim:
        raise ValueError(f"local input of length {psi.size} for dim {problem.dim}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("local input state must be normalized")
    return complex(np.vdot(psi, w @ psi))


def helstrom_error(problem: DiscriminationProblem, probe) -> float:
    """Minimum error probability for the two output states of the given input.

    ``probe`` is either a local pure state vector or a :class:`ProbeState`
    carrying an ancilla; only the modulus of the induced overlap enters.
    """
    c = abs(_input_overlap(problem, probe))
    radicand = max(0.0, 1.0 - 4.0 * problem.p1 * problem.p2 * c * c)
    return 0.5 * (1.0 - np.sqrt(radicand))


# ---------------------------------------------------------------------------
# eigenvalue-polygon geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenvaluePolygon:
    """Eigenphase geometry of a unitary: hull distance and angular spread."""

    phases: tuple
    r: float
    spread: float


def _dedupe_circular(phases: np.ndarray, tol: float = PHASE_DEDUPE_TOL) -> np.ndarray:
    """Collapse phases closer than ``tol`` on the circle; output sorted."""
    ph = np.sort(np.asarray(phases, dtype=float))
    if ph.size == 0:
        return ph
    keep = [ph[0]]
    for value in ph[1:]:
        if value - keep[-1] > tol:
            keep.append(value)
    # the ends may be the same point across the -pi/pi seam
    if len(keep) > 1 and (TWO_PI - (keep[-1] - keep[0])) <= tol:
        keep.pop()
    return np.asarray(keep)


def _phase_gaps(sorted_phases: np.ndarray) -> np.ndarray:
    gaps = np.diff(sorted_phases)
    wrap = TWO_PI - (sorted_phases[-1] - sorted_phases[0])
    return np.append(gaps, wrap)


def _segment_distance_to_origin(p: complex, q: complex) -> tuple[float, float]:
    """Distance from 0 to segment [p, q] and the parameter of the closest point."""
    d = q - p
    length_sq = abs(d) ** 2
    if length_sq == 0.0:
        return abs(p), 0.0
    t = -np.real(np.conj(d) * p) / length_sq
    t = min(1.0, max(0.0, t))
    return abs(p + t * d), t


def min_overlap_r(w, atol: float = 1e-10) -> EigenvaluePolygon:
    """Distance from the origin to the eigenvalue polygon of a unitary.

    The returned ``r`` is the smallest achievable |<psi| w |psi>| over unit
    vectors.  ``spread`` is the width of the smallest arc containing all
    eigenphases; it reaches or passes pi exactly when the polygon touches
    the origin and the minimum overlap drops to zero.
    """
    phases, _ = eig_unitary(w, atol)
    distinct = _dedupe_circular(phases)
    if distinct.size == 1:
        return EigenvaluePolygon(tuple(phases), 1.0, 0.0)
    gaps = _phase_gaps(distinct)
    max_gap = float(gaps.max())
    spread = TWO_PI - max_gap
    if max_gap <= np.pi + 1e-12:
        # origin inside or on the hull: perfect single-shot discrimination
        return EigenvaluePolygon(tuple(phases), 0.0, spread)
    points = np.exp(1j * distinct)
    best = 1.0
    for i in range(points.size):
        dist, _ = _segment_distance_to_origin(points[i], points[(i + 1) % points.size])
        best = min(best, dist)
    return EigenvaluePolygon(tuple(phases), best, spread)


def optimal_pair_input(w, atol: float = 1e-10) -> np.ndarray:
    """Local pure state whose overlap modulus under ``w`` attains r(w).

    The state is a superposition of eigenvectors whose weighted eigenvalue
    average lands on the hull point closest to the origin: two eigenvectors
    when that point sits on an edge, three when the origin lies strictly
    inside the polygon.
    """
    phases, vecs = eig_unitary(w, atol)

    # cluster eigenvectors by polygon vertex
    order = np.argsort(phases)
    phases = phases[order]
    vecs = vecs[:, order]
    reps: list[int] = [0]
    for idx in range(1, phases.size):
        if phases[idx] - phases[reps[-1]] > PHASE_DEDUPE_TOL:
            reps.append(idx)
    if len(reps) > 1 and (TWO_PI - (phases[reps[-1]] - phases[reps[0]])) <= PHASE_DEDUPE_TOL:
        reps.pop()
    points = np.exp(1j * phases[reps])
    members = vecs[:, reps]

    if points.size == 1:
        return vecs[:, 0].copy()

    gaps = _phase_gaps(phases[reps])
    if float(gaps.max()) > np.pi + 1e-12:
        # origin outside: the closest hull point lies on one edge
        best = (np.inf, 0, 0, 0.0)
        for i in range(points.size):
            j = (i + 1) % points.size
            dist, t = _segment_distance_to_origin(points[i], points[j])
            if dist < best[0]:
                best = (dist, i, j, t)
        _, i, j, t = best
        return np.sqrt(1.0 - t) * members[:, i] + np.sqrt(t) * members[:, j]

    # origin inside or on the hull: first try an edge through the origin
    for i in range(points.size):
        for j in range(i + 1, points.size):
            if abs(points[i] + points[j]) <= 1e-9:
                return (members[:, i] + members[:, j]) / np.sqrt(2.0)

    # otherwise three vertices carry the origin (planar Caratheodory)
    for i in range(points.size):
        for j in range(i + 1, points.size):
            for k in range(j + 1, points.size):
                a = np.array(
                    [
                        [points[i].real, points[j].real, points[k].real],
                        [points[i].imag, points[j].imag, points[k].imag],
                        [1.0, 1.0, 1.0],
                    ]
                )
                try:
                    lam = np.linalg.solve(a, np.array([0.0, 0.0, 1.0]))
                except np.linalg.LinAlgError:
                    continue
                if np.all(lam >= -1e-12):
                    lam = np.clip(lam, 0.0, None)
                    lam /= lam.sum()
                    combo = (
                        np.sqrt(lam[0]) * members[:, i]
                        + np.sqrt(lam[1]) * members[:, j]
                        + np.sqrt(lam[2]) * members[:, k]
                    )
                    return combo / np.linalg.norm(combo)
    raise RuntimeError("no eigenvector combination reached the hull point")


# ---------------------------------------------------------------------------
# several copies of the unknown transformation
# ---------------------------------------------------------------------------


def _accumulate_sums(values: np.ndarray, base: np.ndarray, tol: float) -> np.ndarray:
    sums = (values[:, None] + base[None, :]).reshape(-1)
    sums = np.sort(sums)
    keep = np.empty(sums.size, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(sums) > tol
    return sums[keep]


def tensor_power_spread(w, n: int, atol: float = 1e-10) -> float:
    """Angular spread of the n-copy eigenphase multiset, capped at 2 pi.

    The n-fold phase sums are enumerated combinatorially (never through a
    d^n-dimensional matrix) on the lifted arc, so the spread is read off the
    actual achieved extremes.
    """
    if n < 1:
        raise ValueError(f"copy count must be at least 1, got {n}")
    phases, _ = eig_unitary(w, atol)
    distinct = _dedupe_circular(phases)
    if distinct.size == 1:
        return 0.0
    gaps = _phase_gaps(distinct)
    anchor = distinct[(int(np.argmax(gaps)) + 1) % distinct.size]
    lifted = np.sort((distinct - anchor) % TWO_PI)
    sums = lifted.copy()
    for _ in range(n - 1):
        sums = _accumulate_sums(sums, lifted, PHASE_DEDUPE_TOL)
    return float(min(sums[-1] - sums[0], TWO_PI))


def copies_for_perfect(problem: DiscriminationProblem, n_max: int) -> int | None:
    """Fewest copies after which the two unitaries can be told apart exactly.

    Tests, for growing n, whether the origin falls inside the polygon of the
    n-copy eigenphases (all n-fold sums mod 2 pi); a phase-multiple of the
    identity never gets there and yields ``None``, as does exhausting
    ``n_max``.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    phases, _ = eig_unitary(problem.relative_unitary)
    base = _dedupe_circular(phases)
    if base.size == 1:
        return None
    sums = base.copy()
    for n in range(1, n_max + 1):
        gaps = _phase_gaps(sums)
        if float(gaps.max()) <= np.pi + PHASE_DEDUPE_TOL:
            return n
        if n == n_max:
            break
        sums = _accumulate_sums(sums, base, PHASE_DEDUPE_TOL)
        sums = np.sort(sums % TWO_PI)
        if sums.size > 1 and (TWO_PI - (sums[-1] - sums[0])) <= PHASE_DEDUPE_TOL:
            sums = sums[:-1]
    return None


# ---------------------------------------------------------------------------
# average overlap and majorization
# ---------------------------------------------------------------------------


def schur_overlap_omega(e: ProbeState) -> float:
    """Group-averaged squared overlap of the outputs: purity of the reduced state."""
    red = e.reduced_state()
    return float(np.real(np.trace(red @ red)))


def majorization_compare(p, q, atol: float = 1e-10) -> str:
    """Prefix-sum dominance order of two probability vectors.

    Returns ``"majorized"`` when p is dominated by q, ``"majorizes"`` for
    the reverse, ``"equal"`` for both, else ``"incomparable"``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    for name, vec in (("p", p), ("q", q)):
        if vec.ndim != 1 or vec.size == 0:
            raise ValueError(f"{name} must be a non-empty 1-d vector")
        if np.any(vec < -atol):
            raise ValueError(f"{name} has negative entries")
        if abs(vec.sum() - 1.0) > 1e-8:
            raise ValueError(f"{name} does not sum to 1")
    size = max(p.size, q.size)
    pp = np.zeros(size)
    qq = np.zeros(size)
    pp[: p.size] = np.sort(p)[::-1]
    qq[: q.size] = np.sort(q)[::-1]
    cp = np.cumsum(pp)
    cq = np.cumsum(qq)
    p_below = bool(np.all(cp <= cq + atol))
    q_below = bool(np.all(cq <= cp + atol))
    if p_below and q_below:
        return "equal"
    if p_below:
        return "majorized"
    if q_below:
        return "majorizes"
    return "incomparable"
