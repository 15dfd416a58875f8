"""Coordinates on the space of two-qubit states.

The spectrum of a density matrix is parameterized by a point (x, y, z) of
a simplex via

    r1 = (1 + x + y + z)/4,   r2 = (1 + x - y - z)/4,
    r3 = (1 - x + y - z)/4,   r4 = (1 - x - y + z)/4,

with r1 >= r2 >= r3 >= r4 >= 0.  The eigenbasis is parameterized by two
triples of angles (alpha, beta), each ranging over the closed l1-ball of
radius 2*pi (a double octahedron), through the commuting-family factors

    A = exp((1/2i) sum_k alpha_k A_k) * exp((1/2i) sum_k beta_k B_k)

with A_k in {X(x)I, I(x)X, X(x)X} and B_k in {Z(x)X, Y(x)Y, X(x)Z}.  A
full SU(4) element additionally carries a local unitary pair and a maximal
torus factor.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from . import tolerances as tol
from .fano import LocalUnitary
from .linalg4 import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    dag,
    exp_antihermitian,
    exp_commuting_paulis,
    hermitize,
    tensor_product,
)

TWO_PI = 2.0 * np.pi

#: Commuting Pauli words generating the alpha factor.
ALPHA_WORDS = (
    tensor_product(SIGMA_X, I2),
    tensor_product(I2, SIGMA_X),
    tensor_product(SIGMA_X, SIGMA_X),
)
#: Commuting Pauli words generating the beta factor.
BETA_WORDS = (
    tensor_product(SIGMA_Z, SIGMA_X),
    tensor_product(SIGMA_Y, SIGMA_Y),
    tensor_product(SIGMA_X, SIGMA_Z),
)
#: Diagonal words generating the maximal torus.
TORUS_WORDS = (
    tensor_product(SIGMA_Z, I2),
    tensor_product(I2, SIGMA_Z),
    tensor_product(SIGMA_Z, SIGMA_Z),
)


class OctahedronWarning(UserWarning):
    """Angle triple lies outside the closed l1-ball of radius 2*pi."""


class DegenerateSpectrumWarning(UserWarning):
    """Chart point has a (nearly) degenerate spectrum; the chart is not
    one-to-one on this stratum."""


@dataclass(frozen=True)
class SimplexPoint:
    """Coordinates (x, y, z) of an ordered spectrum."""

    x: float
    y: float
    z: float

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class ChartPoint:
    """A simplex point plus the two octahedron angle triples."""

    simplex: SimplexPoint
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _angle_triple(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _angle_triple(self.beta, "beta"))


def _angle_triple(v, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DomainError(f"{name} must be a triple of angles, got shape {v.shape}")
    return v


_INEQUALITY_NAMES = ("r1 >= r2", "r2 >= r3", "r3 >= r4", "r4 >= 0")


def eigenvalues_from_xyz(s, slack=tol.SIMPLEX_TOL):
    """Ordered spectrum (r1, r2, r3, r4) of a simplex point.

    Raises DomainError naming the violated inequality when the point lies
    outside the simplex (ordering or positivity fails by more than
    ``slack``).
    """
    x, y, z = float(s.x), float(s.y), float(s.z)
    r = np.array(
        [
            (1.0 + x + y + z) / 4.0,
            (1.0 + x - y - z) / 4.0,
            (1.0 - x + y - z) / 4.0,
            (1.0 - x - y + z) / 4.0,
        ]
    )
    gaps = (r[0] - r[1], r[1] - r[2], r[2] - r[3], r[3])
    for name, gap in zip(_INEQUALITY_NAMES, gaps):
        if gap < -slack:
            raise DomainError(
                f"simplex inequality violated: {name} fails by {-gap:.3e} "
                f"at (x, y, z) = ({x}, {y}, {z})"
            )
    return r


def xyz_from_eigenvalues(r, slack=tol.SIMPLEX_TOL):
    """Simplex coordinates of an ordered unit-sum spectrum.

    The inverse of eigenvalues_from_xyz: x = r1+r2-r3-r4, y = r1-r2+r3-r4,
    z = r1-r2-r3+r4.
    """
    r = np.asarray(r, dtype=float).reshape(4)
    if abs(r.sum() - 1.0) > tol.TRACE_TOL:
        raise DomainError(f"spectrum must sum to 1, got {r.sum()!r}")
    gaps = (r[0] - r[1], r[1] - r[2], r[2] - r[3], r[3])
    for name, gap in zip(_INEQUALITY_NAMES, gaps):
        if gap < -slack:
            raise DomainError(f"spectrum not ordered: {name} fails by {-gap:.3e}")
    return SimplexPoint(
        x=r[0] + r[1] - r[2] - r[3],
        y=r[0] - r[1] + r[2] - r[3],
        z=r[0] - r[1] - r[2] + r[3],
    )


def in_octahedron(v):
    """Membership in the closed l1-ball of radius 2*pi."""
    v = np.asarray(v, dtype=float)
    return bool(np.sum(np.abs(v)) <= TWO_PI + tol.OCTAHEDRON_TOL)


def _warn_outside(v, name):
    if not in_octahedron(v):
        warnings.warn(
            f"{name} lies outside the closed octahedron (l1 norm "
            f"{np.sum(np.abs(np.asarray(v, dtype=float))):.6f} > 2*pi); the chart "
            "wraps around",
            OctahedronWarning,
            stacklevel=3,
        )


def _word_sum(angles, words):
    return -0.5j * sum(t * w for t, w in zip(np.asarray(angles, dtype=float), words))


def a_factor(alpha, beta, method="closed"):
    """The eigenbasis factor A = exp-alpha-family * exp-beta-family.

    ``method`` selects the evaluation route: "closed" uses the exact
    half-angle product over each commuting family, "series" the generic
    scaling-and-squaring exponential of the summed generators.  The two
    agree to EXPM_PATH_TOL and exist for any angles; leaving the double
    octahedron only triggers OctahedronWarning.
    """
    alpha = _angle_triple(alpha, "alpha")
    beta = _angle_triple(beta, "beta")
    _warn_outside(alpha, "alpha")
    _warn_outside(beta, "beta")
    if method == "closed":
        return exp_commuting_paulis(alpha, ALPHA_WORDS) @ exp_commuting_paulis(
            beta, BETA_WORDS
        )
    if method == "series":
        return exp_antihermitian(_word_sum(alpha, ALPHA_WORDS)) @ exp_antihermitian(
            _word_sum(beta, BETA_WORDS)
        )
    raise DomainError(f"method must be 'closed' or 'series', got {method!r}")


def torus_factor(t):
    """Diagonal maximal-torus element with phase pattern
    (t1+t2+t3, t1-t2-t3, -t1+t2-t3, -t1-t2+t3) over the half angles;
    determinant is exactly 1."""
    t = _angle_triple(t, "t")
    return exp_commuting_paulis(t, TORUS_WORDS)


def spectral_gap(r):
    """Smallest gap between consecutive entries of an ordered spectrum."""
    r = np.asarray(r, dtype=float)
    return float(np.min(r[:-1] - r[1:]))


def representative_state(point, method="closed"):
    """Density matrix A diag(r) A^dag of a chart point.

    The result has the spectrum prescribed by the simplex point exactly
    (unitary conjugation), so it is positive semidefinite with unit trace
    by construction.  A DegenerateSpectrumWarning is emitted when the
    spectrum has a gap below GENERIC_GAP, where the chart stops being
    one-to-one.
    """
    r = eigenvalues_from_xyz(point.simplex)
    if spectral_gap(r) < tol.GENERIC_GAP:
        warnings.warn(
            f"degenerate spectrum {tuple(r)}: chart point is non-generic",
            DegenerateSpectrumWarning,
            stacklevel=2,
        )
    a = a_factor(point.alpha, point.beta, method=method)
    return hermitize((a * r) @ dag(a))


def assemble_su4(k, alpha, beta, t):
    """Full SU(4) element (u (x) v) * A(alpha, beta) * T(t).

    ``k`` is a LocalUnitary pair; the result is special unitary to
    UNITARITY_TOL.
    """
    if not isinstance(k, LocalUnitary):
        raise DomainError("k must be a LocalUnitary")
    return k.matrix() @ a_factor(alpha, beta) @ torus_factor(t)
