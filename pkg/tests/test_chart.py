"""Chart tests: simplex maps, octahedron membership, group factors."""

import numpy as np
import pytest

from entspace import tolerances as tol
from entspace.chart import (
    ChartPoint,
    DegenerateSpectrumWarning,
    OctahedronWarning,
    SimplexPoint,
    TWO_PI,
    a_factor,
    assemble_su4,
    eigenvalues_from_xyz,
    in_octahedron,
    representative_state,
    spectral_gap,
    torus_factor,
    xyz_from_eigenvalues,
)
from entspace.errors import DomainError
from entspace.fano import LocalUnitary
from entspace.linalg4 import (
    I4,
    dag,
    herm_eigenvalues,
    unitarity_defect,
)
from entspace.sampling import (
    philox_stream,
    sample_chart_point,
    sample_local_unitary,
)
from entspace.separability import analyze


def test_eigenvalues_from_xyz_examples():
    assert np.array_equal(
        eigenvalues_from_xyz(SimplexPoint(0, 0, 0)), [0.25, 0.25, 0.25, 0.25]
    )
    r = eigenvalues_from_xyz(SimplexPoint(0.4, 0.2, 0.1))
    assert np.max(np.abs(r - [0.425, 0.275, 0.175, 0.125])) < 1e-15
    assert np.array_equal(eigenvalues_from_xyz(SimplexPoint(1, 1, 1)), [1, 0, 0, 0])


def test_eigenvalues_from_xyz_rejects_with_named_inequality():
    with pytest.raises(DomainError, match="r2 >= r3"):
        eigenvalues_from_xyz(SimplexPoint(0.0, 0.5, 0.0))
    with pytest.raises(DomainError, match="r1 >= r2"):
        eigenvalues_from_xyz(SimplexPoint(0.0, -0.2, 0.1))
    with pytest.raises(DomainError, match="r4 >= 0"):
        eigenvalues_from_xyz(SimplexPoint(0.9, 0.5, 0.2))


def test_xyz_from_eigenvalues_examples_and_validation():
    s = xyz_from_eigenvalues([0.25, 0.25, 0.25, 0.25])
    assert (s.x, s.y, s.z) == (0.0, 0.0, 0.0)
    s = xyz_from_eigenvalues([1.0, 0.0, 0.0, 0.0])
    assert (s.x, s.y, s.z) == (1.0, 1.0, 1.0)
    with pytest.raises(DomainError, match="sum to 1"):
        xyz_from_eigenvalues([0.5, 0.4, 0.3, 0.2])
    with pytest.raises(DomainError, match="not ordered"):
        xyz_from_eigenvalues([0.2, 0.4, 0.3, 0.1])
    with pytest.raises(DomainError, match="r4 >= 0"):
        xyz_from_eigenvalues([0.7, 0.4, 0.0, -0.1])


def test_simplex_roundtrip():
    g = philox_stream(21, 62)
    for _ in range(300):
        r = np.sort(g.dirichlet(np.ones(4)))[::-1]
        s = xyz_from_eigenvalues(r)
        back = eigenvalues_from_xyz(s)
        assert np.max(np.abs(back - r)) < 1e-14


def test_in_octahedron():
    assert in_octahedron([0, 0, 0])
    assert in_octahedron([TWO_PI, 0, 0])  # boundary is included
    assert in_octahedron([2, 2, 2])
    assert not in_octahedron([TWO_PI, 1e-3, 0])
    assert not in_octahedron([5, 5, 0])


def test_a_factor_identity_and_half_turn():
    assert np.array_equal(a_factor([0, 0, 0], [0, 0, 0]), I4)
    u = a_factor([TWO_PI, 0, 0], [0, 0, 0])
    assert np.max(np.abs(u + I4)) < 1e-12


def test_a_factor_unitary_and_paths_agree():
    g = philox_stream(22, 62)
    for _ in range(100):
        alpha = g.uniform(-1.8, 1.8, 3)
        beta = g.uniform(-1.8, 1.8, 3)
        closed = a_factor(alpha, beta, "closed")
        series = a_factor(alpha, beta, "series")
        assert np.max(np.abs(closed - series)) < tol.EXPM_PATH_TOL
        gram, det = unitarity_defect(closed)
        assert gram < tol.UNITARITY_TOL and det < tol.UNITARITY_TOL
    with pytest.raises(DomainError, match="method"):
        a_factor([0, 0, 0], [0, 0, 0], "pade")


def test_a_factor_warns_outside_octahedron():
    with pytest.warns(OctahedronWarning):
        a_factor([TWO_PI, 0.5, 0], [0, 0, 0])
    with pytest.warns(OctahedronWarning):
        a_factor([0, 0, 0], [3, 3, 3])


def test_torus_factor_structure():
    g = philox_stream(23, 62)
    t = g.uniform(-np.pi, np.pi, 3)
    u = torus_factor(t)
    assert np.max(np.abs(u - np.diag(np.diag(u)))) == 0.0
    assert np.max(np.abs(np.abs(np.diag(u)) - 1.0)) < 1e-15
    assert abs(np.linalg.det(u) - 1.0) < 1e-14
    phases = np.angle(np.diag(u))
    expected = -0.5 * np.array(
        [
            t[0] + t[1] + t[2],
            t[0] - t[1] - t[2],
            -t[0] + t[1] - t[2],
            -t[0] - t[1] + t[2],
        ]
    )
    delta = (phases - expected + np.pi) % (2 * np.pi) - np.pi
    assert np.max(np.abs(delta)) < 1e-14
    # diagonal, so it commutes with any diagonal spectrum
    d = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    assert np.max(np.abs(u @ d - d @ u)) == 0.0


def test_representative_state_trivial_angles():
    point = ChartPoint(SimplexPoint(0.4, 0.2, 0.1), np.zeros(3), np.zeros(3))
    rho = representative_state(point)
    assert np.allclose(rho, np.diag([0.425, 0.275, 0.175, 0.125]), atol=1e-15)


def test_representative_state_spectrum_preserved():
    for i in range(200):
        point = sample_chart_point(77, i)
        r = eigenvalues_from_xyz(point.simplex)
        rho = representative_state(point)
        assert abs(np.trace(rho).real - 1.0) < 1e-14
        w = herm_eigenvalues(rho)
        assert np.max(np.abs(w - r)) < 1e-12
        assert w[-1] > -1e-14


def test_representative_state_methods_agree():
    for i in range(50):
        point = sample_chart_point(78, i)
        closed = representative_state(point, "closed")
        series = representative_state(point, "series")
        assert np.max(np.abs(closed - series)) < 1e-12


def test_representative_state_degenerate_warning():
    point = ChartPoint(SimplexPoint(0, 0, 0), np.array([0.3, 0.1, 0.2]), np.zeros(3))
    with pytest.warns(DegenerateSpectrumWarning):
        rho = representative_state(point)
    assert np.allclose(rho, I4 / 4.0, atol=1e-15)
    assert spectral_gap(eigenvalues_from_xyz(point.simplex)) == 0.0


def test_assemble_su4():
    k = LocalUnitary(u=np.eye(2), v=np.eye(2))
    assert np.array_equal(assemble_su4(k, np.zeros(3), np.zeros(3), np.zeros(3)), I4)
    with pytest.raises(DomainError, match="LocalUnitary"):
        assemble_su4(np.eye(4), np.zeros(3), np.zeros(3), np.zeros(3))
    g = philox_stream(24, 62)
    for i in range(40):
        k = sample_local_unitary(24, i)
        alpha = g.uniform(-1.5, 1.5, 3)
        beta = g.uniform(-1.5, 1.5, 3)
        t = g.uniform(-np.pi, np.pi, 3)
        u = assemble_su4(k, alpha, beta, t)
        gram, det = unitarity_defect(u)
        assert gram < tol.UNITARITY_TOL and det < tol.UNITARITY_TOL


def test_full_orbit_spectrum_and_local_invariance():
    g = philox_stream(25, 62)
    for i in range(25):
        point = sample_chart_point(25, i)
        r = eigenvalues_from_xyz(point.simplex)
        rho = representative_state(point)
        k = sample_local_unitary(26, i)
        t = g.uniform(-np.pi, np.pi, 3)
        u = assemble_su4(k, point.alpha, point.beta, t)
        sigma = u @ np.diag(r).astype(complex) @ dag(u)
        # any state assembled over the same simplex point has spectrum r
        assert np.max(np.abs(herm_eigenvalues(sigma) - r)) < 1e-12
        # the local factor alone leaves every report invariant unchanged
        r0 = analyze(rho)
        r2 = analyze(k.matrix() @ rho @ dag(k.matrix()))
        for name in ("s2_pt", "s3_pt", "s4_pt", "det_c", "det_m", "c112"):
            assert abs(getattr(r0, name) - getattr(r2, name)) < 1e-10
