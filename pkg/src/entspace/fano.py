"""Fano (Bloch) parameterization of two-qubit states and local unitaries.

A two-qubit density matrix is written as

    rho = (1/4) [ I4 + sum_i a_i s_i(x)I + sum_j b_j I(x)s_j
                  + sum_ij C_ij s_i(x)s_j ]

with real local Bloch vectors a, b and real correlation matrix C.  Qubit A
is always the left (slow) tensor factor.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from . import tolerances as tol
from .linalg4 import I2, I4, SIGMA, dag, herm_eigenvalues, hermitize, tensor_product

# Precomputed operator stacks: BASIS_A[i] = sigma_i (x) I, BASIS_B[j] = I (x) sigma_j,
# BASIS_AB[i, j] = sigma_i (x) sigma_j.
BASIS_A = np.stack([tensor_product(s, I2) for s in SIGMA])
BASIS_B = np.stack([tensor_product(I2, s) for s in SIGMA])
BASIS_AB = np.stack(
    [[tensor_product(si, sj) for sj in SIGMA] for si in SIGMA]
)


def density_matrix(m, trace_tol=tol.TRACE_TOL, positivity_tol=tol.POSITIVITY_TOL):
    """Validate and normalize a candidate density matrix.

    The single positivity gate of the package: Hermiticity within
    HERMITICITY_TOL, unit trace within ``trace_tol`` and minimal eigenvalue
    >= -``positivity_tol``.  Returns the Hermitian part as a fresh array.

    Raises DomainError on any violation.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
    h = hermitize(m)
    tr = np.trace(h).real
    if abs(tr - 1.0) > trace_tol:
        raise DomainError(f"trace {tr!r} deviates from 1 by more than {trace_tol:.1e}")
    w = herm_eigenvalues(h)
    if w[-1] < -positivity_tol:
        raise DomainError(
            f"matrix is not positive semidefinite: min eigenvalue {w[-1]:.3e}"
        )
    return h


@dataclass(frozen=True)
class FanoState:
    """Fano coefficients (a, b, C) of a unit-trace Hermitian operator."""

    a: np.ndarray
    b: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(3)
        b = np.asarray(self.b, dtype=float).reshape(3)
        c = np.asarray(self.C, dtype=float).reshape(3, 3)
        bound = 1.0 + tol.FANO_BOUND_TOL
        if np.linalg.norm(a) > bound or np.linalg.norm(b) > bound:
            raise DomainError(
                f"Bloch vector norm out of range: |a| = {np.linalg.norm(a):.6f}, "
                f"|b| = {np.linalg.norm(b):.6f}"
            )
        if np.max(np.abs(c)) > bound:
            raise DomainError(
                f"correlation entry out of range: max |C_ij| = {np.max(np.abs(c)):.6f}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "C", c)


def to_fano(rho):
    """Extract Fano coefficients from a unit-trace Hermitian 4x4 matrix.

    a_i = tr(rho s_i(x)I), b_j = tr(rho I(x)s_j), C_ij = tr(rho s_i(x)s_j);
    all are real for Hermitian input.
    """
    rho = np.asarray(rho, dtype=complex)
    a = np.einsum("kij,ji->k", BASIS_A, rho).real
    b = np.einsum("kij,ji->k", BASIS_B, rho).real
    c = np.einsum("klij,ji->kl", BASIS_AB, rho).real
    return FanoState(a=a, b=b, C=c)


def from_fano(f):
    """Reassemble the 4x4 matrix from Fano coefficients.

    Positivity is not assumed: any (a, b, C) within the coefficient bounds
    yields a unit-trace Hermitian matrix, not necessarily a state.
    """
    m = I4 + np.einsum("k,kij->ij", f.a, BASIS_A)
    m = m + np.einsum("k,kij->ij", f.b, BASIS_B)
    m = m + np.einsum("kl,klij->ij", f.C, BASIS_AB)
    return 0.25 * m


def schlienz_mahler(f):
    """Covariance-style correlation matrix M = C - a b^T."""
    return f.C - np.outer(f.a, f.b)


@dataclass(frozen=True)
class LocalUnitary:
    """A pair (u, v) of SU(2) factors acting as u (x) v."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("u", "v"):
            m = np.asarray(getattr(self, name), dtype=complex)
            if m.shape != (2, 2):
                raise DomainError(f"{name} must be 2x2, got shape {m.shape}")
            gram = np.max(np.abs(dag(m) @ m - I2))
            det = abs(np.linalg.det(m) - 1.0)
            if gram > tol.UNITARITY_TOL or det > tol.UNITARITY_TOL:
                raise DomainError(
                    f"{name} is not special unitary: |u^dag u - I| = {gram:.3e}, "
                    f"|det - 1| = {det:.3e}"
                )
            object.__setattr__(self, name, m)

    def matrix(self):
        """The 4x4 product u (x) v."""
        return tensor_product(self.u, self.v)


def local_unitary_action(rho, g):
    """Conjugate rho by the local unitary g: (u(x)v) rho (u(x)v)^dag."""
    k = g.matrix()
    return k @ np.asarray(rho, dtype=complex) @ dag(k)


def su2_to_so3(u):
    """Rotation matrix R_ij = (1/2) tr(s_i u s_j u^dag) of an SU(2) element.

    Under conjugation by u the Bloch vector transforms as n -> R n.
    """
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r[i, j] = 0.5 * np.trace(SIGMA[i] @ u @ SIGMA[j] @ dag(u)).real
    return r
