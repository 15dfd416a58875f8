"""Separability criteria: verdicts, invariants and closed forms."""

import itertools

import numpy as np
import pytest

from entspace import tolerances as tol
from entspace.chart import ChartPoint, SimplexPoint, representative_state
from entspace.errors import DomainError, NumericalError
from entspace.fano import to_fano
from entspace.linalg4 import herm_eigenvalues, partial_transpose
from entspace.montecarlo import char_poly_batch, pt_batch
from entspace.sampling import (
    ensemble_chunks,
    philox_stream,
    sample_chart_point,
    sample_hs_state,
    sample_product_state,
)
from entspace.separability import (
    BELL_PHI_PLUS,
    BOUNDARY,
    ENTANGLED,
    S3_BOUND,
    S4_BOUND,
    SEPARABLE,
    SeparabilityReport,
    analyze,
    det_c_closed_form,
    det_correlation,
    det_schlienz_mahler,
    p022,
    p111,
    p201,
    ppt_verdict,
    quesne_c112,
    s_coeffs_pt,
    separability_inequalities,
    verdict_from_coeffs,
    werner_state,
)


def c112_epsilon_oracle(f):
    """Brute-force contraction over explicit permutations."""
    total = 0.0
    perms = list(itertools.permutations(range(3)))

    def sign(p):
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    for p in perms:
        for q in perms:
            i, j, k = p
            a, b, c = q
            total += sign(p) * sign(q) * f.a[i] * f.b[a] * f.C[j, b] * f.C[k, c]
    return total


def adjugate3(m):
    adj = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * np.linalg.det(minor)
    return adj


def test_s_coeffs_pt_maximally_mixed():
    s2, s3, s4 = s_coeffs_pt(np.eye(4) / 4.0)
    assert (s2, s3, s4) == (3.0 / 8.0, S3_BOUND, S4_BOUND)


def test_werner_family_verdicts():
    assert ppt_verdict(werner_state(0.2)) == SEPARABLE
    assert ppt_verdict(werner_state(1.0 / 3.0)) == BOUNDARY
    assert ppt_verdict(werner_state(0.5)) == ENTANGLED
    # minimal PT eigenvalue of the Werner family is (1 - 3p)/4
    for p in (0.0, 0.2, 1.0 / 3.0, 0.6, 1.0):
        w = herm_eigenvalues(partial_transpose(werner_state(p), "B"))
        assert abs(w[-1] - (1.0 - 3.0 * p) / 4.0) < 1e-14
    with pytest.raises(DomainError):
        werner_state(1.2)


def test_bell_state_values():
    f = to_fano(BELL_PHI_PLUS)
    assert abs(det_correlation(f) + 1.0) < 1e-14
    lhs3, lhs4, within = separability_inequalities(f)
    assert abs(lhs3 + 0.25) < 1e-14
    assert abs(lhs4 + 1.0 / 16.0) < 1e-14
    assert not within
    assert ppt_verdict(BELL_PHI_PLUS) == ENTANGLED
    # werner(p=1) is the Bell state itself
    assert np.max(np.abs(werner_state(1.0) - BELL_PHI_PLUS)) == 0.0


def test_verdict_band():
    assert verdict_from_coeffs(1e-6, 1e-6) == SEPARABLE
    assert verdict_from_coeffs(1e-6, -1e-6) == ENTANGLED
    assert verdict_from_coeffs(1e-6, 1e-12) == BOUNDARY
    assert verdict_from_coeffs(1e-12, -1e-12) == BOUNDARY
    assert verdict_from_coeffs(1e-12, -1e-6, band=1e-3) == BOUNDARY


def test_quesne_c112_against_epsilon_and_adjugate():
    for i in range(80):
        f = to_fano(sample_hs_state(300, i))
        v = quesne_c112(f)
        assert abs(v - c112_epsilon_oracle(f)) < 1e-13
        assert abs(v - 2.0 * f.b @ adjugate3(f.C) @ f.a) < 1e-12


def test_quesne_c112_vanishes_on_products_and_mixed():
    assert quesne_c112(to_fano(np.eye(4) / 4.0)) == 0.0
    for i in range(40):
        f = to_fano(sample_product_state(301, i))
        assert abs(quesne_c112(f)) < 1e-13


def test_det_m_identity_on_random_states():
    for i in range(300):
        f = to_fano(sample_hs_state(302, i))
        lhs = det_schlienz_mahler(f)
        rhs = det_correlation(f) - 0.5 * quesne_c112(f)
        assert abs(lhs - rhs) < tol.DET_IDENTITY_TOL


def test_det_c_closed_form_structure():
    beta = np.array([0.3, -0.7, 1.1])
    # z = 0 kills the determinant
    assert det_c_closed_form(SimplexPoint(0.3, 0.2, 0.0), 0.9, beta) == 0.0
    # alpha3 = 0 and beta = 0 give a diagonal-ish chart with det C = 0
    assert det_c_closed_form(SimplexPoint(0.4, 0.2, 0.1), 0.0, np.zeros(3)) == 0.0


def test_det_c_closed_form_against_brute_force():
    for i in range(400):
        point = sample_chart_point(303, i)
        brute = det_correlation(to_fano(representative_state(point)))
        closed = det_c_closed_form(point.simplex, point.alpha[2], point.beta)
        assert abs(brute - closed) < tol.CLOSED_FORM_TOL


def test_p_coefficients_pointwise():
    g = philox_stream(304, 63)
    assert p201(0.0, np.zeros(3)) == 0.0
    assert p111(0.0, np.zeros(3)) == 0.0
    assert p022(0.0, np.zeros(3)) == 0.0  # bracket is 2 + 0 + 0 + 2 - 4
    for _ in range(100):
        alpha3 = g.uniform(-np.pi, np.pi)
        beta = g.uniform(-np.pi, np.pi, 3)
        assert p111(alpha3, beta) <= 1e-15  # a negated sum of squares
        # p201 and p111 are symmetric under swapping beta1 and beta3
        swapped = beta[[2, 1, 0]]
        assert abs(p201(alpha3, beta) - p201(alpha3, swapped)) < 1e-15
        assert abs(p111(alpha3, beta) - p111(alpha3, swapped)) < 1e-15
        # p022 carries an overall cos^2(beta1) factor
        pinned = beta.copy()
        pinned[0] = np.pi / 2.0
        assert abs(p022(alpha3, pinned)) < 1e-15


def test_separability_inequalities_bounds_attained():
    f = to_fano(np.eye(4) / 4.0)
    lhs3, lhs4, within = separability_inequalities(f)
    assert abs(lhs3 - S3_BOUND) < 1e-12
    assert abs(lhs4 - S4_BOUND) < 1e-12
    assert within


def test_separability_inequalities_dual_route():
    for i in range(300):
        rho = sample_hs_state(305, i)
        f = to_fano(rho)
        lhs3, lhs4, within = separability_inequalities(f)
        _, s3_pt, s4_pt = s_coeffs_pt(rho)
        assert abs(lhs3 - s3_pt) < tol.DUAL_PATH_TOL
        assert abs(lhs4 - s4_pt) < tol.DUAL_PATH_TOL
        assert within == (ppt_verdict(rho) != ENTANGLED)


def test_within_bounds_equivalent_to_ppt_vectorized():
    # batched version over a bigger sample: membership in the box
    # [0, 1/16] x [0, 1/256] is exactly PPT-ness (band-relaxed)
    n = 40000
    for _, states in ensemble_chunks("hs", 306, n):
        _, s3, s4 = char_poly_batch(pt_batch(states))
        within = (
            (s3 >= -tol.VERDICT_TOL)
            & (s3 <= S3_BOUND + tol.VERDICT_TOL)
            & (s4 >= -tol.VERDICT_TOL)
            & (s4 <= S4_BOUND + tol.VERDICT_TOL)
        )
        not_entangled = ~((s3 < -tol.VERDICT_TOL) | (s4 < -tol.VERDICT_TOL))
        assert np.array_equal(within, not_entangled)


def test_analyze_reports():
    rep = analyze(np.eye(4) / 4.0)
    assert rep.verdict == SEPARABLE
    assert rep.det_c == 0.0 and rep.det_m == 0.0 and rep.c112 == 0.0
    assert abs(rep.lhs3 - S3_BOUND) < 1e-15
    rep = analyze(BELL_PHI_PLUS)
    assert rep.verdict == ENTANGLED
    assert abs(rep.det_c + 1.0) < 1e-14
    assert abs(rep.lhs4 + 1.0 / 16.0) < 1e-14
    for i in range(50):
        rho = sample_product_state(307, i)
        rep = analyze(rho)
        assert rep.verdict in (SEPARABLE, BOUNDARY)
        assert abs(rep.c112) < 1e-12


def test_report_checks_det_identity_at_construction():
    with pytest.raises(NumericalError, match="identity"):
        SeparabilityReport(
            s2_pt=0.3,
            s3_pt=0.01,
            s4_pt=0.001,
            det_c=0.5,
            det_m=0.2,
            c112=0.0,
            lhs3=0.01,
            lhs4=0.001,
            verdict=SEPARABLE,
        )


def test_ppt_verdict_matches_eigenvalue_oracle():
    for i in range(500):
        rho = sample_hs_state(308, i)
        min_eig = np.linalg.eigvalsh(partial_transpose(rho, "B"))[0]
        if abs(min_eig) <= tol.MINEIG_BAND:
            continue
        want = SEPARABLE if min_eig > 0 else ENTANGLED
        assert ppt_verdict(rho) == want


def test_dual_route_guard_fires(monkeypatch):
    # sabotage one route and confirm the cross-check notices
    import entspace.separability as sep

    f = to_fano(sample_hs_state(309, 0))
    monkeypatch.setattr(sep, "det_correlation", lambda _: 123.0)
    with pytest.raises(NumericalError, match="routes disagree"):
        sep.separability_inequalities(f)
