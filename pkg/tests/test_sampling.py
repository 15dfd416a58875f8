"""Ensemble samplers: determinism, addressability and distributions."""

import numpy as np
import pytest

from entspace import tolerances as tol
from entspace.chart import eigenvalues_from_xyz, in_octahedron
from entspace.errors import DomainError
from entspace.linalg4 import dag, herm_eigenvalues
from entspace.sampling import (
    ensemble_chunks,
    ensemble_state,
    philox_stream,
    random_su2,
    sample_chart_point,
    sample_hs_state,
    sample_local_unitary,
    sample_product_state,
)


def test_philox_streams_are_keyed():
    a = philox_stream(1, 2, 3).standard_normal(8)
    b = philox_stream(1, 2, 3).standard_normal(8)
    c = philox_stream(1, 2, 4).standard_normal(8)
    d = philox_stream(2, 2, 3).standard_normal(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    with pytest.raises(DomainError, match="index"):
        philox_stream(1, 2, 1 << 60)


def test_hs_states_are_valid_and_deterministic():
    for i in (0, 1, 17, tol.CHUNK - 1, tol.CHUNK, tol.CHUNK + 5):
        rho = sample_hs_state(99, i)
        assert np.max(np.abs(rho - dag(rho))) < 1e-15
        assert abs(np.trace(rho).real - 1.0) < 1e-14
        w = herm_eigenvalues(rho)
        assert w[-1] > 0  # full rank almost surely
        assert np.array_equal(rho, sample_hs_state(99, i))


def test_index_addressing_matches_chunk_iteration():
    n = tol.CHUNK + 40  # crosses a chunk boundary
    seen = {}
    for start, states in ensemble_chunks("hs", 5, n):
        for k in range(states.shape[0]):
            seen[start + k] = states[k]
    assert len(seen) == n
    for i in (0, 3, tol.CHUNK - 1, tol.CHUNK, n - 1):
        assert np.array_equal(seen[i], sample_hs_state(5, i))
        assert np.array_equal(seen[i], ensemble_state("hs", 5, i))


def test_sample_count_does_not_shift_streams():
    short = dict()
    for start, states in ensemble_chunks("hs", 6, 10):
        for k in range(states.shape[0]):
            short[start + k] = states[k]
    for start, states in ensemble_chunks("hs", 6, 200):
        for k in range(min(10, states.shape[0])):
            assert np.array_equal(short[start + k], states[k])
        break


def test_product_states_are_products():
    from entspace.fano import to_fano
    from entspace.linalg4 import partial_trace, tensor_product

    for i in range(50):
        rho = sample_product_state(77, i)
        assert abs(np.trace(rho).real - 1.0) < 1e-14
        a = partial_trace(rho, "B")
        b = partial_trace(rho, "A")
        assert np.max(np.abs(tensor_product(a, b) - rho)) < 1e-14
        f = to_fano(rho)
        assert np.linalg.norm(f.a) <= 1.0 + 1e-12
        assert np.array_equal(rho, sample_product_state(77, i))


def test_chart_points_in_domain_and_deterministic():
    for i in range(200):
        p = sample_chart_point(31, i)
        r = eigenvalues_from_xyz(p.simplex)
        assert np.all(np.diff(r) < 0)
        assert r[-1] > 0
        assert in_octahedron(p.alpha)
        assert in_octahedron(p.beta)
        q = sample_chart_point(31, i)
        assert np.array_equal(p.alpha, q.alpha)
        assert np.array_equal(p.beta, q.beta)
        assert (p.simplex.x, p.simplex.y, p.simplex.z) == (
            q.simplex.x,
            q.simplex.y,
            q.simplex.z,
        )


def test_chart_spectrum_first_moment():
    # E[r1] of the ordered flat Dirichlet is 25/48; cross-check with an
    # independently sorted reference stream
    n = 20000
    mine = np.mean(
        [eigenvalues_from_xyz(sample_chart_point(32, i).simplex)[0] for i in range(n)]
    )
    g = philox_stream(33, 65)
    ref = np.mean([sorted(g.dirichlet(np.ones(4)))[-1] for _ in range(n)])
    assert abs(mine - 25.0 / 48.0) < 0.005
    assert abs(ref - 25.0 / 48.0) < 0.005
    assert abs(mine - ref) < 0.01


def test_hs_purity_moment():
    from entspace.montecarlo import purity_mean

    # E[tr rho^2] = 8/17 for the 4x4 Hilbert-Schmidt (Ginibre) ensemble
    assert abs(purity_mean(34, 200000) - 8.0 / 17.0) < 1e-3


def test_random_su2_is_special_unitary():
    g = philox_stream(35, 65)
    for _ in range(100):
        u = random_su2(g)
        assert np.max(np.abs(dag(u) @ u - np.eye(2))) < 1e-14
        assert abs(np.linalg.det(u) - 1.0) < 1e-14
    k = sample_local_unitary(36, 4)
    assert np.array_equal(k.u, sample_local_unitary(36, 4).u)


def test_bloch_ball_radius_distribution():
    # |r|^3 should be uniform on [0, 1] for uniform solid-ball sampling
    from entspace.fano import to_fano
    from entspace.linalg4 import partial_trace

    cubes = []
    for i in range(4000):
        rho = sample_product_state(37, i)
        f = to_fano(rho)
        cubes.append(np.linalg.norm(f.a) ** 3)
    cubes = np.array(cubes)
    assert abs(cubes.mean() - 0.5) < 0.02
    assert abs(np.mean(cubes < 0.25) - 0.25) < 0.025


def test_ensemble_chunks_validation():
    with pytest.raises(DomainError, match="ensemble"):
        list(ensemble_chunks("haar", 0, 10))
    with pytest.raises(DomainError, match="positive"):
        list(ensemble_chunks("hs", 0, 0))
    with pytest.raises(DomainError, match="ensemble"):
        ensemble_state("haar", 0, 1)
