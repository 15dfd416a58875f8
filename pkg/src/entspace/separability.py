"""Algebraic separability criteria for two-qubit states.

For a two-qubit density matrix rho with partial transpose rho^TB, write
det(x I - rho^TB) = x^4 - x^3 + S2 x^2 - S3 x + S4.  Positivity of the
partial transpose -- and hence separability -- is equivalent to

    0 <= S3(rho^TB) <= 1/16,      0 <= S4(rho^TB) <= 1/256,

and both left-hand sides admit purely invariant-theoretic evaluations:

    S3(rho^TB) = S3(rho) + (1/4) det|C|,
    S4(rho^TB) = S4(rho) + (1/16) det|M|,

with the correlation determinant det|C|, the Schlienz-Mahler determinant
det|M| = det|C| - C112/2 and the degree-(1,1,2) invariant C112.  On the
chart of representative states both determinants collapse to short
trigonometric polynomials in the chart coordinates, which this module
implements alongside brute-force routes and a polynomial fitting harness
for the full quartic coefficient table of C112.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from . import tolerances as tol
from .chart import ChartPoint, SimplexPoint, representative_state, xyz_from_eigenvalues
from .fano import from_fano, schlienz_mahler, to_fano
from .linalg4 import char_poly_coeffs, partial_transpose

SEPARABLE = "separable"
ENTANGLED = "entangled"
BOUNDARY = "boundary"

#: Upper bounds attained by the maximally mixed state.
S3_BOUND = 1.0 / 16.0
S4_BOUND = 1.0 / 256.0

#: The Bell state (|00> + |11>)/sqrt(2) as a density matrix.
BELL_PHI_PLUS = 0.5 * np.array(
    [
        [1, 0, 0, 1],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [1, 0, 0, 1],
    ],
    dtype=complex,
)


def werner_state(p):
    """Werner family p |phi+><phi+| + (1-p) I/4.

    PPT (hence separable) exactly for p <= 1/3; the minimal PT eigenvalue
    is (1 - 3p)/4.
    """
    p = float(p)
    if not -1.0 / 3.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return p * BELL_PHI_PLUS + (1.0 - p) * np.eye(4, dtype=complex) / 4.0

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_i, _k, _j] = -1.0


def s_coeffs_pt(rho):
    """Characteristic coefficients (S2, S3, S4) of the partial transpose."""
    return char_poly_coeffs(partial_transpose(np.asarray(rho, dtype=complex), "B"))


def verdict_from_coeffs(s3, s4, band=tol.VERDICT_TOL):
    """Classify a state from the PT coefficients with a boundary band.

    Separable when both coefficients clear +band, entangled when either
    falls below -band, boundary otherwise.
    """
    if s3 >= band and s4 >= band:
        return SEPARABLE
    if s3 < -band or s4 < -band:
        return ENTANGLED
    return BOUNDARY


def ppt_verdict(rho, band=tol.VERDICT_TOL):
    """Separability verdict of a two-qubit state by the PPT criterion."""
    _, s3, s4 = s_coeffs_pt(rho)
    return verdict_from_coeffs(s3, s4, band)


def det_correlation(f):
    """Determinant of the 3x3 correlation matrix C."""
    return float(np.linalg.det(f.C))


def det_schlienz_mahler(f):
    """Determinant of the Schlienz-Mahler matrix M = C - a b^T."""
    return float(np.linalg.det(schlienz_mahler(f)))


def quesne_c112(f):
    """The degree-(1,1,2) invariant eps_ijk eps_abc a_i b_a C_jb C_kc."""
    return float(
        np.einsum("ijk,abc,i,a,jb,kc->", _EPS3, _EPS3, f.a, f.b, f.C, f.C)
    )


def p201(alpha3, beta):
    """Closed-form coefficient of z(x^2 + y^2) in det|C| on the chart."""
    b1, b2, b3 = np.asarray(beta, dtype=float)
    return 0.25 * np.sin(2 * alpha3) * np.sin(2 * b2) * np.cos(b1) * np.cos(b3)


def p111(alpha3, beta):
    """Closed-form coefficient of x*y*z in det|C| on the chart."""
    b1, b2, b3 = np.asarray(beta, dtype=float)
    sa, ca = np.sin(alpha3) ** 2, np.cos(alpha3) ** 2
    return -(
        sa * np.cos(b2) ** 2 * (np.cos(b1) ** 2 + np.sin(b1) ** 2 * np.cos(b3) ** 2)
        + ca * np.sin(b2) ** 2 * np.cos(b1) ** 2 * np.cos(b3) ** 2
        + np.sin(b1) ** 2 * np.sin(b3) ** 2 * np.cos(b2) ** 2
    )


def p022(alpha3, beta):
    """Closed-form coefficient of y^2 z^2 in the quartic expansion of C112."""
    b1, b2, b3 = np.asarray(beta, dtype=float)
    sa2, ca2 = np.sin(alpha3) ** 2, np.cos(alpha3) ** 2
    bracket = (
        np.cos(2 * (alpha3 - b1))
        + np.cos(2 * (alpha3 + b1))
        + 4 * np.cos(2 * b3) * (np.cos(2 * b2) * (1 - ca2 * np.cos(2 * b1)) + sa2)
        - 4 * sa2 * np.cos(2 * b2)
        + 2 * np.cos(2 * b1)
        - 4
    )
    return 0.125 * ca2 * np.cos(b1) ** 2 * bracket


def det_c_closed_form(s, alpha3, beta):
    """det|C| of the representative state at a chart point, in closed form:
    z * (p201 * (x^2 + y^2) + p111 * x * y)."""
    return s.z * (
        p201(alpha3, beta) * (s.x ** 2 + s.y ** 2) + p111(alpha3, beta) * s.x * s.y
    )


#: All degree-4 monomial exponents (i, j, k) in x, y, z, in descending
#: lexicographic order.
MONOMIALS = tuple(
    (i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)
)

#: Monomials observed to carry the quartic expansion of C112; the
#: coefficient table is even under z -> -z.
C112_SUPPORT = frozenset(m for m in MONOMIALS if m[2] % 2 == 0)


def _fit_spectra(denominator=20):
    """Deterministic rational interior spectra: strictly decreasing positive
    integer 4-tuples over ``denominator``, descending lexicographically."""
    out = []
    n = denominator
    for a in range(n, 0, -1):
        for b in range(min(a - 1, n - a), 0, -1):
            for c in range(min(b - 1, n - a - b), 0, -1):
                d = n - a - b - c
                if 0 < d < c:
                    out.append((a / n, b / n, c / n, d / n))
    return tuple(out)


FIT_SPECTRA = _fit_spectra()


@dataclass(frozen=True)
class CoeffTable:
    """The 15 quartic coefficients of C112 on a fixed (alpha, beta) fibre.

    ``values`` follows MONOMIALS order.  ``provenance`` records how the
    table was obtained ("fitted" or "closed-form"); fitted tables must
    reproduce their sample values to FIT_RESIDUAL_TOL.
    """

    values: np.ndarray
    provenance: str
    residual: float = 0.0
    condition: float = float("nan")

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(len(MONOMIALS))
        object.__setattr__(self, "values", v)
        if self.provenance not in ("fitted", "closed-form"):
            raise DomainError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "fitted" and self.residual > tol.FIT_RESIDUAL_TOL:
            raise NumericalError(
                f"fit residual {self.residual:.3e} exceeds {tol.FIT_RESIDUAL_TOL:.1e}"
            )

    def entry(self, monomial):
        return float(self.values[MONOMIALS.index(tuple(monomial))])

    def support(self, eps=tol.COEFF_EPS):
        """Monomials whose coefficient magnitude exceeds ``eps``."""
        return tuple(m for m, v in zip(MONOMIALS, self.values) if abs(v) > eps)

    def as_dict(self):
        return {m: float(v) for m, v in zip(MONOMIALS, self.values)}


def c112_of_chart_point(point):
    """C112 of the representative state at a chart point (brute force)."""
    return quesne_c112(to_fano(representative_state(point)))


def fit_c112_coeffs(alpha, beta, spectra=FIT_SPECTRA):
    """Fit the 15 quartic coefficients of C112 at fixed (alpha, beta).

    C112 restricted to the fibre over (alpha, beta) is a homogeneous
    quartic in the simplex coordinates.  The table is recovered by solving
    the Vandermonde system over a deterministic grid of rational interior
    spectra (>= 20 points).  Raises NumericalError when the system is
    ill-conditioned (condition number above FIT_COND_CAP) or the residual
    exceeds FIT_RESIDUAL_TOL.
    """
    if len(spectra) < len(MONOMIALS):
        raise DomainError(
            f"need at least {len(MONOMIALS)} grid spectra, got {len(spectra)}"
        )
    rows = []
    targets = []
    for r in spectra:
        s = xyz_from_eigenvalues(np.asarray(r, dtype=float))
        rows.append([s.x ** i * s.y ** j * s.z ** k for i, j, k in MONOMIALS])
        targets.append(c112_of_chart_point(ChartPoint(s, alpha, beta)))
    v = np.array(rows)
    y = np.array(targets)
    condition = float(np.linalg.cond(v))
    if condition > tol.FIT_COND_CAP:
        raise NumericalError(
            f"fit grid is ill-conditioned: cond = {condition:.3e} > "
            f"{tol.FIT_COND_CAP:.1e}"
        )
    coeffs, *_ = np.linalg.lstsq(v, y, rcond=None)
    residual = float(np.max(np.abs(v @ coeffs - y)))
    return CoeffTable(
        values=coeffs, provenance="fitted", residual=residual, condition=condition
    )


def separability_inequalities(f, band=tol.VERDICT_TOL):
    """Evaluate both separability inequalities along both routes.

    Returns (lhs3, lhs4, within_bounds) where lhs3 = S3(rho^TB) and
    lhs4 = S4(rho^TB).  Each left-hand side is computed spectrally (from
    the partial transpose) and through the invariant identities; the two
    routes must agree to DUAL_PATH_TOL or NumericalError is raised.
    ``within_bounds`` is true when 0 <= lhs3 <= 1/16 and
    0 <= lhs4 <= 1/256, all within ``band``.
    """
    rho = from_fano(f)
    _, s3_pt, s4_pt = s_coeffs_pt(rho)
    _, s3, s4 = char_poly_coeffs(rho)
    lhs3 = s3 + 0.25 * det_correlation(f)
    lhs4 = s4 + det_schlienz_mahler(f) / 16.0
    if abs(lhs3 - s3_pt) > tol.DUAL_PATH_TOL or abs(lhs4 - s4_pt) > tol.DUAL_PATH_TOL:
        raise NumericalError(
            f"inequality routes disagree: |d3| = {abs(lhs3 - s3_pt):.3e}, "
            f"|d4| = {abs(lhs4 - s4_pt):.3e}"
        )
    within = (
        -band <= lhs3 <= S3_BOUND + band and -band <= lhs4 <= S4_BOUND + band
    )
    return lhs3, lhs4, within


@dataclass(frozen=True)
class SeparabilityReport:
    """Full invariant record of a separability analysis.

    ``s*_pt`` are the spectral-route PT coefficients, ``lhs3``/``lhs4`` the
    invariant-route values of the same quantities.  Construction verifies
    the determinant identity det_m = det_c - c112/2 to DET_IDENTITY_TOL.
    """

    s2_pt: float
    s3_pt: float
    s4_pt: float
    det_c: float
    det_m: float
    c112: float
    lhs3: float
    lhs4: float
    verdict: str

    def __post_init__(self):
        gap = abs(self.det_m - (self.det_c - 0.5 * self.c112))
        if gap > tol.DET_IDENTITY_TOL:
            raise NumericalError(
                f"det|M| identity violated by {gap:.3e} "
                f"(det_c = {self.det_c!r}, det_m = {self.det_m!r}, "
                f"c112 = {self.c112!r})"
            )


def analyze(rho, band=tol.VERDICT_TOL):
    """Analyze a (validated) two-qubit density matrix.

    Computes the PT characteristic coefficients, the three correlation
    invariants and the dual-route left-hand sides, checks the routes
    against each other to DUAL_PATH_TOL and returns a SeparabilityReport.
    """
    rho = np.asarray(rho, dtype=complex)
    f = to_fano(rho)
    s2_pt, s3_pt, s4_pt = s_coeffs_pt(rho)
    lhs3, lhs4, _ = separability_inequalities(f, band)
    return SeparabilityReport(
        s2_pt=s2_pt,
        s3_pt=s3_pt,
        s4_pt=s4_pt,
        det_c=det_correlation(f),
        det_m=det_schlienz_mahler(f),
        c112=quesne_c112(f),
        lhs3=lhs3,
        lhs4=lhs4,
        verdict=verdict_from_coeffs(s3_pt, s4_pt, band),
    )
