"""Seeded Monte Carlo validation of the analytic error rates and variances.

Randomness comes from the Philox 4x64 counter-based generator keyed by the
64-bit scenario seed.  Trial i owns a fixed slice of the key stream, so a
report depends only on (scenario, seed, trials), never on batching or
thread scheduling.  Normal deviates are produced by Box-Muller on the
trial's uniforms; the choice is recorded in every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gauss
from .discrim import DiscriminationProblem, helstrom_error
from .linops import ProbeState, vectorize

RNG_DESCRIPTION = "philox4x64/box-muller"


@dataclass(frozen=True)
class TrialReport:
    """Outcome of one validation run: empirical statistic against its analytic value."""

    scenario: str
    seed: int
    trials: int
    empirical: float
    analytic: float
    z_score: float
    rng: str = RNG_DESCRIPTION

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not math.isfinite(self.z_score):
            raise ValueError("z-score must be finite")


def trial_uniforms(seed: int, trials: int, per_trial: int) -> np.ndarray:
    """Uniforms in (0, 1], shaped (trials, per_trial), trial i on stream slice i.

    Each raw 64-bit Philox word maps to ((word >> 11) + 1) * 2^-53, which
    never returns 0 and therefore feeds logarithms safely.
    """
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    words = np.random.Philox(key=np.uint64(seed)).random_raw(trials * per_trial)
    words = np.asarray(words, dtype=np.uint64).reshape(trials, per_trial)
    return ((words >> np.uint64(11)) + np.uint64(1)).astype(float) * 2.0**-53


def standard_normal_pairs(seed: int, trials: int) -> tuple[np.ndarray, np.ndarray]:
    """One Box-Muller pair per trial from its uniform slice."""
    u = trial_uniforms(seed, trials, 2)
    radius = np.sqrt(-2.0 * np.log(u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    return radius * np.cos(angle), radius * np.sin(angle)


def _z_score(empirical: float, analytic: float, std_error: float) -> float:
    if std_error == 0.0:
        return 0.0
    return (empirical - analytic) / std_error


def _output_vector(problem: DiscriminationProblem, probe, which: int) -> np.ndarray:
    u = problem.u1 if which == 1 else problem.u2
    if isinstance(probe, ProbeState):
        return vectorize(u @ probe.e_op)
    psi = np.asarray(probe, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("local input state must be normalized")
    return u @ psi


def sample_helstrom(
    problem: DiscriminationProblem, probe, trials: int, seed: int
) -> TrialReport:
    """Sample the optimal binary measurement and compare the error rate to theory.

    Each trial draws a hypothesis from the priors, applies the matching
    unitary to the probe and measures the projector onto the nonnegative
    eigenspace of p1 rho1 - p2 rho2; the empirical error rate is z-scored
    against the minimum-error formula with its binomial standard error.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    psi1 = _output_vector(problem, probe, 1)
    psi2 = _output_vector(problem, probe, 2)
    rho1 = np.outer(psi1, psi1.conj())
    rho2 = np.outer(psi2, psi2.conj())
    gap = problem.p1 * rho1 - problem.p2 * rho2
    evals, evecs = np.linalg.eigh((gap + gap.conj().T) / 2.0)
    accept = evecs[:, evals >= 0.0]
    project = accept @ accept.conj().T
    # probability of announcing hypothesis 1 under each true hypothesis
    q1 = float(np.real(np.vdot(psi1, project @ psi1)))
    q2 = float(np.real(np.vdot(psi2, project @ psi2)))

    u = trial_uniforms(seed, trials, 2)
    is_first = u[:, 0] <= problem.p1
    errors = np.where(is_first, u[:, 1] > q1, u[:, 1] <= q2)
    empirical = int(errors.sum()) / trials

    analytic = float(helstrom_error(problem, probe))
    std_error = math.sqrt(max(analytic * (1.0 - analytic), 0.0) / trials)
    return TrialReport(
        scenario=f"helstrom[d={problem.dim},p1={problem.p1}]",
        seed=seed,
        trials=trials,
        empirical=float(empirical),
        analytic=analytic,
        z_score=float(_z_score(empirical, analytic, std_error)),
    )


def sample_heterodyne(
    x: float,
    alpha: complex,
    noise: gauss.NoiseSpec,
    scheme: str,
    trials: int,
    seed: int,
) -> TrialReport:
    """Sample heterodyne outcomes and compare the scatter to the noise formula.

    ``entangled`` probes with the two-mode squeezed state and is scored
    against Delta^2 + 2 nbar; ``unentangled`` probes with the vacuum and is
    scored against 1 + nbar.  The sampling law itself comes from the
    covariance machinery, so the two routes stay independent.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if scheme == "entangled":
        law = gauss.epr_heterodyne(gauss.tmsv_state(x), alpha, noise)
        analytic = gauss.tmsv_epr_variance(x) + 2.0 * noise.nbar_per_mode
    elif scheme == "unentangled":
        law = gauss.heterodyne(gauss.vacuum_state(), alpha, noise)
        analytic = 1.0 + noise.nbar_per_mode
    else:
        raise ValueError(f"scheme must be 'entangled' or 'unentangled', got {scheme!r}")

    g_re, g_im = standard_normal_pairs(seed, trials)
    scale = math.sqrt(law.variance / 2.0)
    z_re = law.mean.real + scale * g_re
    z_im = law.mean.imag + scale * g_im
    deviations = (z_re - np.real(alpha)) ** 2 + (z_im - np.imag(alpha)) ** 2
    empirical = math.fsum(deviations.tolist()) / trials

    # E|z-alpha|^2 is delta^2/2 times a chi-square with 2 dof per trial
    std_error = analytic / math.sqrt(trials)
    return TrialReport(
        scenario=f"heterodyne[{scheme},x={x},nbar={noise.nbar_per_mode}]",
        seed=seed,
        trials=trials,
        empirical=float(empirical),
        analytic=float(analytic),
        z_score=float(_z_score(empirical, analytic, std_error)),
    )


@dataclass(frozen=True)
class StabilityScan:
    """Phase-mismatch sensitivity table for squeezed versus entangled probes."""

    phis: np.ndarray
    squeezed_variance: np.ndarray
    entangled_variance: np.ndarray
    squeezed_photons: float
    entangled_photons: float


def stability_scan(s: float, x: float, phi_grid) -> StabilityScan:
    """Tabulate both probes' measured variance across a quadrature-phase grid.

    The squeezed column is the single-mode quadrature variance at each
    mismatch angle; the entangled column is the EPR outcome variance with
    the measured pair rotated by the same angle, which stays flat.
    """
    phis = np.asarray(phi_grid, dtype=float).reshape(-1)
    if phis.size == 0:
        raise ValueError("the phase grid must not be empty")
    sq_state = gauss.squeezed_state(s)
    ent_state = gauss.tmsv_state(x)
    squeezed = np.array([gauss.quadrature_variance(sq_state, 0, phi) for phi in phis])
    entangled = np.array(
        [gauss.epr_heterodyne(ent_state, phi=phi).variance for phi in phis]
    )
    return StabilityScan(
        phis=phis,
        squeezed_variance=squeezed,
        entangled_variance=entangled,
        squeezed_photons=gauss.photon_budget("squeezed", s),
        entangled_photons=gauss.photon_budget("tmsv", x),
    )
