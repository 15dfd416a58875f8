"""Monte-Carlo harness: batched verdict kernels, scans and sample records.

The scan pipeline keeps the criterion route (characteristic coefficients
of the partial transpose) and the oracle route (smallest PT eigenvalue
from a dense eigensolver) strictly separate; both consume the identical
sample stream, so their verdicts are comparable sample by sample.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from . import tolerances as tol
from .linalg4 import herm_eigenvalues
from .sampling import ENSEMBLES, ensemble_chunks, ensemble_state
from .separability import (
    BOUNDARY,
    ENTANGLED,
    S3_BOUND,
    S4_BOUND,
    SEPARABLE,
    analyze,
    verdict_from_coeffs,
)


def pt_batch(rhos):
    """Partial transpose on subsystem B of a stack of 4x4 matrices."""
    n = rhos.shape[0]
    return rhos.reshape(n, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)


def char_poly_batch(h):
    """Vectorized (S2, S3, S4) of a stack of Hermitian matrices via
    Newton's identities on the power traces."""
    h2 = h @ h
    p1 = np.einsum("nii->n", h).real
    p2 = np.einsum("nii->n", h2).real
    p3 = np.einsum("nij,nji->n", h2, h).real
    p4 = np.einsum("nij,nji->n", h2, h2).real
    s2 = (p1 * p1 - p2) / 2.0
    s3 = (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 6.0
    s4 = (p1 ** 4 - 6 * p1 ** 2 * p2 + 3 * p2 ** 2 + 8 * p1 * p3 - 6 * p4) / 24.0
    return s2, s3, s4


def verdict_masks(s3, s4, band=tol.VERDICT_TOL):
    """Boolean (separable, entangled, boundary) masks from PT coefficients."""
    separable = (s3 >= band) & (s4 >= band)
    entangled = (s3 < -band) | (s4 < -band)
    boundary = ~(separable | entangled)
    return separable, entangled, boundary


def oracle_masks(min_eig, band=tol.MINEIG_BAND):
    """Masks from the smallest PT eigenvalue, with an exclusion band.

    States with |min_eig| <= band land in the third (undecided) mask and
    are not counted against the criterion.
    """
    separable = min_eig > band
    entangled = min_eig < -band
    return separable, entangled, ~(separable | entangled)


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of a harness run."""

    ensemble: str = "hs"
    samples: int = 1000
    seed: int = 0
    band: float = tol.VERDICT_TOL

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise DomainError(
                f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}"
            )
        if self.samples < 1:
            raise DomainError(f"sample count must be positive, got {self.samples}")
        if not 0 <= self.seed < (1 << 64):
            raise DomainError(f"seed must fit in 64 bits, got {self.seed}")
        if not 0 < self.band < 1:
            raise DomainError(f"verdict band must lie in (0, 1), got {self.band}")


@dataclass(frozen=True)
class ScanResult:
    """Aggregated verdict counts of a Monte-Carlo scan.

    ``fraction`` is the separable fraction by the algebraic criterion,
    ``oracle_fraction`` the same count from the eigenvalue oracle on the
    identical stream.  ``mismatches`` counts states (outside both boundary
    bands) where the two routes disagree.  ``bound_violations`` records how
    often each one-sided inequality failed: lhs3 < 0, lhs3 > 1/16,
    lhs4 < 0, lhs4 > 1/256 (raw counts over all samples, no band).
    """

    config: RunConfig
    separable: int
    entangled: int
    boundary: int
    oracle_separable: int
    oracle_entangled: int
    oracle_undecided: int
    mismatches: int
    bound_violations: dict = field(default_factory=dict)

    @property
    def samples(self):
        return self.config.samples

    @property
    def fraction(self):
        return self.separable / self.config.samples

    @property
    def oracle_fraction(self):
        return self.oracle_separable / self.config.samples

    @property
    def wald_error(self):
        """Wald standard error sqrt(f (1-f) / n) of the separable fraction."""
        f = self.fraction
        return float(np.sqrt(f * (1.0 - f) / self.config.samples))


def separable_fraction(config):
    """Scan an ensemble, counting verdicts along both routes.

    Returns a ScanResult whose criterion and oracle counts come from the
    same deterministic stream.
    """
    counts = {SEPARABLE: 0, ENTANGLED: 0, BOUNDARY: 0}
    oracle = [0, 0, 0]
    mismatches = 0
    violations = np.zeros(4, dtype=int)
    for _, states in ensemble_chunks(config.ensemble, config.seed, config.samples):
        pts = pt_batch(states)
        _, s3, s4 = char_poly_batch(pts)
        sep, ent, bnd = verdict_masks(s3, s4, config.band)
        counts[SEPARABLE] += int(sep.sum())
        counts[ENTANGLED] += int(ent.sum())
        counts[BOUNDARY] += int(bnd.sum())
        min_eig = np.linalg.eigvalsh(pts)[:, 0]
        osep, oent, oundec = oracle_masks(min_eig)
        oracle[0] += int(osep.sum())
        oracle[1] += int(oent.sum())
        oracle[2] += int(oundec.sum())
        decided = ~(bnd | oundec)
        mismatches += int(np.sum(decided & (sep != osep)))
        violations += np.array(
            [
                np.sum(s3 < 0),
                np.sum(s3 > S3_BOUND),
                np.sum(s4 < 0),
                np.sum(s4 > S4_BOUND),
            ]
        )
    return ScanResult(
        config=config,
        separable=counts[SEPARABLE],
        entangled=counts[ENTANGLED],
        boundary=counts[BOUNDARY],
        oracle_separable=oracle[0],
        oracle_entangled=oracle[1],
        oracle_undecided=oracle[2],
        mismatches=mismatches,
        bound_violations={
            "lhs3_below_0": int(violations[0]),
            "lhs3_above_1_16": int(violations[1]),
            "lhs4_below_0": int(violations[2]),
            "lhs4_above_1_256": int(violations[3]),
        },
    )


@dataclass(frozen=True)
class SampleRecord:
    """One scanned state: index, verdict and its certifying quantities."""

    index: int
    verdict: str
    lhs3: float
    lhs4: float
    min_pt_eig: float
    spectrum: tuple

    FIELDS = ("index", "verdict", "lhs3", "lhs4", "min_pt_eig", "r1", "r2", "r3", "r4")


def sample_records(config):
    """Yield a SampleRecord per scanned state.

    The verdict and left-hand sides agree with a fresh analyze() call on
    the reconstructed state; the spectrum is computed with the package
    eigensolver, the minimal PT eigenvalue with the oracle route.
    """
    for start, states in ensemble_chunks(
        config.ensemble, config.seed, config.samples
    ):
        pts = pt_batch(states)
        _, s3, s4 = char_poly_batch(pts)
        min_eig = np.linalg.eigvalsh(pts)[:, 0]
        for i in range(states.shape[0]):
            yield SampleRecord(
                index=start + i,
                verdict=verdict_from_coeffs(s3[i], s4[i], config.band),
                lhs3=float(s3[i]),
                lhs4=float(s4[i]),
                min_pt_eig=float(min_eig[i]),
                spectrum=tuple(herm_eigenvalues(states[i])),
            )


def reanalyze_record(config, record):
    """Recompute a record from scratch; used for spot re-verification."""
    rho = ensemble_state(config.ensemble, config.seed, record.index)
    report = analyze(rho, config.band)
    return SampleRecord(
        index=record.index,
        verdict=report.verdict,
        lhs3=report.s3_pt,
        lhs4=report.s4_pt,
        min_pt_eig=float(
            np.linalg.eigvalsh(pt_batch(rho[None, :, :]))[0, 0]
        ),
        spectrum=tuple(herm_eigenvalues(rho)),
    )


def purity_mean(seed, n):
    """Mean purity tr(rho^2) over the Hilbert-Schmidt ensemble."""
    total = 0.0
    for _, states in ensemble_chunks("hs", seed, n):
        total += float(np.einsum("nij,nji->", states, states).real)
    return total / n
