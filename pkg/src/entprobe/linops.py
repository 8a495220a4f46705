"""Dense complex linear algebra for bipartite probe states.

All operators are plain complex ``numpy`` arrays.  A bipartite vector is
identified with the matrix of its amplitudes on the product basis: the
vector with component ``a[i, j]`` on ``|i>|j>`` is ``vectorize(a)``, and
``devectorize`` inverts it.  Every function returns a fresh array; inputs
are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Hard cap on kron output dimensions; beyond this the dense representation
# stops being the right tool.
KRON_DIM_CAP = 4096

# Relative singular-value / eigenvalue cutoff used for every rank decision.
RANK_RTOL = 1e-10


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    return m


def is_unitary(u, atol: float = 1e-10) -> bool:
    """True when ``u`` satisfies u†u = I within ``atol`` (max-norm)."""
    u = _as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    defect = u.conj().T @ u - np.eye(u.shape[0])
    return bool(np.max(np.abs(defect)) <= atol)


def assert_unitary(u, atol: float = 1e-10) -> np.ndarray:
    u = _as_matrix(u)
    if not is_unitary(u, atol):
        raise ValueError(f"matrix is not unitary within {atol}")
    return u


def is_density(rho, atol: float = 1e-10) -> bool:
    """True for a Hermitian, positive-semidefinite, trace-one matrix."""
    rho = _as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        return False
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        return False
    if abs(np.trace(rho) - 1.0) > atol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -atol)


def assert_density(rho, atol: float = 1e-10) -> np.ndarray:
    rho = _as_matrix(rho)
    if not is_density(rho, atol):
        raise ValueError(f"matrix is not a density operator within {atol}")
    return rho


def kron(a, b, max_dim: int = KRON_DIM_CAP) -> np.ndarray:
    """Kronecker product with a guard on the output dimensions."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise ValueError(
            f"kron result would be {rows}x{cols}, beyond the configured cap {max_dim}"
        )
    return np.kron(a, b)


def vectorize(a) -> np.ndarray:
    """Flatten a square matrix row-major into the bipartite vector it carries."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"vectorize needs a square matrix, got {a.shape}")
    return a.reshape(-1).copy()


def devectorize(v, d: int) -> np.ndarray:
    """Inverse of :func:`vectorize` for local dimension ``d``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != d * d:
        raise ValueError(f"vector of length {v.size} is not d*d for d={d}")
    return v.reshape(d, d).copy()


def overlap(a, b) -> complex:
    """Inner product of two operators as bipartite vectors, Tr[a† b]."""
    return complex(np.vdot(_as_matrix(a), _as_matrix(b)))


def partial_trace(m, d1: int, d2: int, side: int) -> np.ndarray:
    """Trace out subsystem ``side`` (1 or 2) of a (d1*d2)-dimensional operator."""
    m = _as_matrix(m)
    if m.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"expected shape {(d1 * d2, d1 * d2)}, got {m.shape}")
    t = m.reshape(d1, d2, d1, d2)
    if side == 1:
        return np.einsum("ijil->jl", t)
    if side == 2:
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"side must be 1 or 2, got {side}")


def matrix_rank(a, rtol: float = RANK_RTOL) -> int:
    """Rank by singular values above ``rtol`` times the largest one."""
    s = np.linalg.svd(_as_matrix(a), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


@dataclass(frozen=True, eq=False)
class ProbeState:
    """Bipartite pure probe stored through its amplitude matrix.

    ``e_op[i, j]`` is the amplitude on ``|i>|j>``; the unknown transformation
    acts on the first factor only.  The state must be normalized,
    Tr[e† e] = 1 within 1e-10.
    """

    e_op: np.ndarray

    def __post_init__(self):
        e = _as_matrix(self.e_op)
        if e.shape[0] != e.shape[1]:
            raise ValueError(f"probe amplitude matrix must be square, got {e.shape}")
        norm_sq = float(np.real(np.vdot(e, e)))
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(f"probe is not normalized: Tr[e†e] = {norm_sq!r}")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "e_op", e)

    @property
    def dim(self) -> int:
        return self.e_op.shape[0]

    @property
    def schmidt_number(self) -> int:
        return matrix_rank(self.e_op)

    def as_vector(self) -> np.ndarray:
        return vectorize(self.e_op)

    def reduced_state(self) -> np.ndarray:
        """Reduced density matrix e† e of the untouched factor."""
        return self.e_op.conj().T @ self.e_op

    @classmethod
    def maximally_entangled(cls, d: int) -> "ProbeState":
        return cls(np.eye(d) / np.sqrt(d))

    @classmethod
    def from_schmidt(cls, weights) -> "ProbeState":
        """Probe with the given Schmidt-squared weights on the diagonal basis."""
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if np.any(w < -1e-12):
            raise ValueError("Schmidt weights must be nonnegative")
        w = np.clip(w, 0.0, None)
        total = w.sum()
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"Schmidt weights must sum to 1, got {total!r}")
        return cls(np.diag(np.sqrt(w / total)))

    @classmethod
    def product(cls, psi, phi) -> "ProbeState":
        """Unentangled probe |psi>|phi> (both vectors are normalized here)."""
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        phi = np.asarray(phi, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        phi = phi / np.linalg.norm(phi)
        return cls(np.outer(psi, phi))


def schmidt_coefficients(p: ProbeState) -> np.ndarray:
    """Singular values of the probe amplitude matrix, descending."""
    return np.linalg.svd(p.e_op, compute_uv=False)


def von_neumann_entropy(rho, base: float = 2.0, atol: float = 1e-10) -> float:
    """Entropy -sum(lam log lam) of a density matrix, in base-``base`` units."""
    rho = assert_density(rho, atol)
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-15]
    return float(-(evals * (np.log(evals) / np.log(base))).sum())


def eig_unitary(u, atol: float = 1e-10):
    """Eigenphases in (-pi, pi] and orthonormal eigenvectors of a unitary.

    Works through the commuting Hermitian pair (u + u†)/2 and (u - u†)/2i:
    the first is diagonalized outright and the second is rediagonalized
    inside every nearly degenerate eigenspace, which keeps the whole
    computation on Hermitian solvers.

    Returns
    -------
    phases : ndarray of float, ascending
    vectors : ndarray, column k is the eigenvector for ``phases[k]``
    """
    u = assert_unitary(u, atol)
    n = u.shape[0]
    h_re = (u + u.conj().T) / 2.0
    h_im = (u - u.conj().T) / 2.0j
    h_re = (h_re + h_re.conj().T) / 2.0
    h_im = (h_im + h_im.conj().T) / 2.0
    cos_vals, vecs = np.linalg.eigh(h_re)
    vecs = vecs.astype(complex)

    start = 0
    for stop in range(1, n + 1):
        boundary = stop == n or (cos_vals[stop] - cos_vals[stop - 1]) > 1e-8
        if boundary:
            if stop - start > 1:
                block = vecs[:, start:stop]
                m = block.conj().T @ h_im @ block
                _, rot = np.linalg.eigh((m + m.conj().T) / 2.0)
                vecs[:, start:stop] = block @ rot
            start = stop

    cos_diag = np.real(np.einsum("ik,ij,jk->k", vecs.conj(), h_re, vecs))
    sin_diag = np.real(np.einsum("ik,ij,jk->k", vecs.conj(), h_im, vecs))
    phases = np.arctan2(sin_diag, cos_diag)
    # canonical interval (-pi, pi]: fold anything hugging -pi up to +pi
    phases = np.where(phases <= -np.pi + 1e-12, phases + 2.0 * np.pi, phases)
    order = np.argsort(phases)
    return phases[order], vecs[:, order]
