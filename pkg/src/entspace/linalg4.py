"""Dense complex linear algebra kernels for 2x2 and 4x4 matrices.

Everything in here is a pure function on numpy arrays.  The eigensolver
and the matrix exponential are written out explicitly (cyclic complex
Jacobi, scaling-and-squaring Taylor) so that their numerical behaviour is
pinned down by this module alone; numpy supplies array arithmetic and
determinants.
"""

import numpy as np

from .errors import DomainError, NumericalError
from . import tolerances as tol

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Pauli matrices indexed 0..3 with sigma_0 = identity.
PAULI = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)
#: The traceless triple sigma_1..sigma_3 as a (3,2,2) stack.
SIGMA = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def dag(m):
    """Conjugate transpose."""
    return np.conj(np.swapaxes(m, -1, -2))


def tensor_product(a, b):
    """Kronecker product a (x) b.

    The first factor is the slow index: row index of the product is
    2*i_a + i_b for 2x2 factors.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitize(h, asym_tol=tol.HERMITICITY_TOL):
    """Return the Hermitian part (H + H^dag)/2 of an almost-Hermitian H.

    Raises DomainError if the anti-Hermitian defect max|H - H^dag| exceeds
    ``asym_tol``.
    """
    h = np.asarray(h, dtype=complex)
    defect = np.max(np.abs(h - dag(h)))
    if defect > asym_tol:
        raise DomainError(
            f"matrix is not Hermitian: max|H - H^dag| = {defect:.3e} > {asym_tol:.1e}"
        )
    return 0.5 * (h + dag(h))


def _jacobi_rotation(a, p, q):
    """2x2 unitary zeroing a[p, q] of the Hermitian matrix ``a``.

    Returns the full-size rotation embedded in an identity.
    """
    apq = a[p, q]
    phase = apq / abs(apq)
    tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    j = np.eye(a.shape[0], dtype=complex)
    j[p, p] = c
    j[q, q] = c
    j[p, q] = s * phase
    j[q, p] = -s * np.conj(phase)
    return j


def herm_eigensystem(h, asym_tol=tol.HERMITICITY_TOL):
    """Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi.

    Parameters
    ----------
    h : (n, n) array_like, Hermitian within ``asym_tol``.

    Returns
    -------
    w : (n,) float array, eigenvalues sorted in descending order.
    v : (n, n) complex array, unitary; column k is the eigenvector of w[k].

    Raises
    ------
    NumericalError if the off-diagonal norm has not fallen below the stop
    threshold after JACOBI_MAX_SWEEPS sweeps.
    """
    a = hermitize(h, asym_tol)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(a))
    stop = tol.JACOBI_OFF_TOL * scale

    def off_norm(m):
        return np.sqrt(np.sum(np.abs(m - np.diag(np.diag(m))) ** 2))

    converged = False
    for _ in range(tol.JACOBI_MAX_SWEEPS):
        if off_norm(a) <= stop:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= stop / (n * n):
                    continue
                j = _jacobi_rotation(a, p, q)
                a = dag(j) @ a @ j
                a[p, q] = 0.0
                a[q, p] = 0.0
                v = v @ j
    if not converged:
        raise NumericalError(
            f"Jacobi sweep cap ({tol.JACOBI_MAX_SWEEPS}) reached, "
            f"off-diagonal norm {off_norm(a):.3e} > {stop:.3e}"
        )
    w = np.diag(a).real
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def herm_eigenvalues(h, asym_tol=tol.HERMITICITY_TOL):
    """Descending eigenvalues of a Hermitian matrix (cyclic Jacobi)."""
    return herm_eigensystem(h, asym_tol)[0]


def exp_antihermitian(x, asym_tol=tol.ANTIHERM_TOL):
    """Matrix exponential of an anti-Hermitian X by scaling and squaring.

    X is halved until |X|_F / 2^s <= EXPM_SCALE_THETA, the exponential of
    the scaled matrix is taken as a truncated Taylor series of order
    EXPM_TAYLOR_ORDER (Horner form), and the result is squared s times.
    The result of exp of an anti-Hermitian matrix is unitary.

    Raises DomainError if max|X + X^dag| exceeds ``asym_tol``.
    """
    x = np.asarray(x, dtype=complex)
    defect = np.max(np.abs(x + dag(x)))
    if defect > asym_tol:
        raise DomainError(
            f"matrix is not anti-Hermitian: max|X + X^dag| = {defect:.3e}"
        )
    n = x.shape[0]
    eye = np.eye(n, dtype=complex)
    norm = np.linalg.norm(x)
    s = 0
    if norm > tol.EXPM_SCALE_THETA:
        s = int(np.ceil(np.log2(norm / tol.EXPM_SCALE_THETA)))
    y = x / (2.0 ** s)
    # Horner evaluation of sum_{k<=order} Y^k / k!
    r = eye.copy()
    for k in range(tol.EXPM_TAYLOR_ORDER, 0, -1):
        r = eye + (y @ r) / k
    for _ in range(s):
        r = r @ r
    return r


def exp_commuting_paulis(angles, generators):
    """exp(sum_k (angles[k]/2i) * generators[k]) for commuting Pauli words.

    Each generator must square to the identity and the family must commute
    pairwise; then the exponential factorises exactly into half-angle
    rotations cos(t/2) I - i sin(t/2) P.  No series truncation is involved.
    """
    angles = np.asarray(angles, dtype=float)
    n = generators[0].shape[0]
    u = np.eye(n, dtype=complex)
    for t, g in zip(angles, generators):
        u = u @ (np.cos(t / 2.0) * np.eye(n) - 1j * np.sin(t / 2.0) * g)
    return u


def partial_transpose(rho, subsystem="B"):
    """Partial transpose of a two-qubit operator on one tensor factor.

    ``subsystem`` selects the transposed factor: "A" is the left (slow)
    factor, "B" the right (fast) one.  The operation is an involution and
    preserves trace and Hermiticity exactly.
    """
    rho = np.asarray(rho, dtype=complex)
    r = rho.reshape(2, 2, 2, 2)
    if subsystem == "B":
        r = r.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise DomainError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return r.reshape(4, 4).copy()


def partial_trace(rho, subsystem="B"):
    """Trace out one qubit of a two-qubit operator.

    ``subsystem`` names the factor that is traced *out*; the reduced 2x2
    operator of the other factor is returned.
    """
    rho = np.asarray(rho, dtype=complex)
    r = rho.reshape(2, 2, 2, 2)
    if subsystem == "B":
        return np.einsum("ijkj->ik", r)
    if subsystem == "A":
        return np.einsum("jijk->ik", r)
    raise DomainError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def char_poly_coeffs(h):
    """Elementary symmetric functions (S2, S3, S4) of a Hermitian 4x4 matrix.

    With eigenvalues l_i, the characteristic polynomial is
    det(x I - H) = x^4 - S1 x^3 + S2 x^2 - S3 x + S4.  The coefficients are
    obtained from the power traces p_k = tr(H^k) through Newton's
    identities, so no eigendecomposition is performed.
    """
    h = np.asarray(h, dtype=complex)
    h2 = h @ h
    p1 = np.trace(h).real
    p2 = np.trace(h2).real
    p3 = np.trace(h2 @ h).real
    p4 = np.trace(h2 @ h2).real
    s2 = (p1 * p1 - p2) / 2.0
    s3 = (p1 ** 3 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0
    s4 = (p1 ** 4 - 6.0 * p1 * p1 * p2 + 3.0 * p2 * p2 + 8.0 * p1 * p3 - 6.0 * p4) / 24.0
    return s2, s3, s4


def unitarity_defect(u):
    """Return (max|U^dag U - I|, |det U - 1|)."""
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    gram = np.max(np.abs(dag(u) @ u - np.eye(n)))
    det = abs(np.linalg.det(u) - 1.0)
    return gram, det


def check_special_unitary(u, defect_tol=tol.UNITARITY_TOL):
    """Raise DomainError unless U is special unitary within ``defect_tol``."""
    gram, det = unitarity_defect(u)
    if gram > defect_tol or det > defect_tol:
        raise DomainError(
            f"matrix is not special unitary: |U^dag U - I| = {gram:.3e}, "
            f"|det U - 1| = {det:.3e}"
        )
