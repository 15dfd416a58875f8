"""Self-verification suite.

Every load-bearing identity of the package is re-checked here at runtime
against an independent route: closed forms against brute force, spectral
routes against invariant routes, the algebraic PPT criterion against a
dense eigensolver.  Checks are grouped into suites ("identities",
"coeffs", "ppt"); each check consumes its own deterministic stream, never
aborts the others, and reports its worst residual against its tolerance.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .chart import (
    ALPHA_WORDS,
    BETA_WORDS,
    ChartPoint,
    SimplexPoint,
    a_factor,
    eigenvalues_from_xyz,
    representative_state,
    xyz_from_eigenvalues,
)
from .fano import (
    from_fano,
    local_unitary_action,
    density_matrix,
    schlienz_mahler,
    to_fano,
)
from .linalg4 import (
    I4,
    SIGMA,
    char_poly_coeffs,
    dag,
    exp_antihermitian,
    exp_commuting_paulis,
    herm_eigensystem,
    herm_eigenvalues,
    partial_trace,
    partial_transpose,
    tensor_product,
    unitarity_defect,
)
from .montecarlo import char_poly_batch, oracle_masks, pt_batch, verdict_masks
from .sampling import (
    ensemble_chunks,
    random_antihermitian,
    random_hermitian,
    sample_chart_point,
    sample_local_unitary,
    verify_stream,
)
from .separability import (
    BOUNDARY,
    C112_SUPPORT,
    ENTANGLED,
    MONOMIALS,
    S3_BOUND,
    S4_BOUND,
    SEPARABLE,
    analyze,
    det_c_closed_form,
    det_correlation,
    det_schlienz_mahler,
    fit_c112_coeffs,
    p022,
    ppt_verdict,
    quesne_c112,
    s_coeffs_pt,
    werner_state,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    group: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "group": self.group,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }


def _result(name, group, samples, residual, tolerance, detail=""):
    return CheckResult(
        name=name,
        group=group,
        samples=samples,
        max_residual=float(residual),
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        detail=detail,
    )


# -- identities -----------------------------------------------------------------

def _check_kron_mixed_product(n, seed, band):
    m = min(n, 2000)
    g = verify_stream(seed, 0)
    worst = 0.0
    for _ in range(m):
        a, b, c, d = (random_hermitian(g, dim=2) for _ in range(4))
        lhs = tensor_product(a, b) @ tensor_product(c, d)
        rhs = tensor_product(a @ c, b @ d)
        worst = max(worst, np.max(np.abs(lhs - rhs)))
    return _result("kron_mixed_product", "identities", m, worst, 1e-13)


def _check_eigensolver_reconstruction(n, seed, band):
    m = min(n, 1500)
    g = verify_stream(seed, 1)
    worst = 0.0
    for _ in range(m):
        h = random_hermitian(g)
        w, v = herm_eigensystem(h)
        worst = max(worst, np.max(np.abs(v @ np.diag(w) @ dag(v) - h)))
        worst = max(worst, np.max(np.abs(dag(v) @ v - I4)))
        if np.any(np.diff(w) > 0):
            return _result(
                "eigensolver_reconstruction", "identities", m, np.inf,
                tol.EIG_RECONSTRUCT_TOL, "eigenvalues not sorted descending",
            )
    return _result(
        "eigensolver_reconstruction", "identities", m, worst, tol.EIG_RECONSTRUCT_TOL
    )


def _check_charpoly_vs_spectrum(n, seed, band):
    m = min(n, 1500)
    g = verify_stream(seed, 2)
    worst = 0.0
    for _ in range(m):
        h = random_hermitian(g)
        w = herm_eigenvalues(h)
        s2, s3, s4 = char_poly_coeffs(h)
        e2 = sum(w[i] * w[j] for i in range(4) for j in range(i + 1, 4))
        e3 = sum(
            w[i] * w[j] * w[k]
            for i in range(4)
            for j in range(i + 1, 4)
            for k in range(j + 1, 4)
        )
        e4 = np.prod(w)
        worst = max(worst, abs(s2 - e2), abs(s3 - e3), abs(s4 - e4))
        worst = max(worst, abs(s4 - np.linalg.det(h).real))
    return _result("charpoly_vs_spectrum", "identities", m, worst, 1e-10)


def _check_expm_paths(n, seed, band):
    m = min(n, 600)
    g = verify_stream(seed, 3)
    worst = 0.0
    for _ in range(m):
        angles = g.uniform(-2 * np.pi, 2 * np.pi, 3)
        words = ALPHA_WORDS if g.random() < 0.5 else BETA_WORDS
        closed = exp_commuting_paulis(angles, words)
        gen = -0.5j * sum(t * w for t, w in zip(angles, words))
        series = exp_antihermitian(gen)
        worst = max(worst, np.max(np.abs(closed - series)))
        worst = max(worst, max(unitarity_defect(series)))
        x = random_antihermitian(g, scale=2.0)
        worst = max(
            worst, np.max(np.abs(exp_antihermitian(x) @ exp_antihermitian(-x) - I4))
        )
    return _result("expm_paths", "identities", m, worst, tol.EXPM_PATH_TOL)


def _check_fano_roundtrip(n, seed, band):
    m = min(n, 4096)
    worst = 0.0
    for _, states in ensemble_chunks("hs", seed, m):
        for rho in states:
            f = to_fano(rho)
            worst = max(worst, np.max(np.abs(from_fano(f) - rho)))
    return _result("fano_roundtrip", "identities", m, worst, 1e-13)


def _check_partial_transpose_trace(n, seed, band):
    m = min(n, 2000)
    g = verify_stream(seed, 5)
    worst = 0.0
    for _, states in ensemble_chunks("hs", seed, m):
        for rho in states:
            pt = partial_transpose(rho, "B")
            worst = max(worst, np.max(np.abs(partial_transpose(pt, "B") - rho)))
            worst = max(worst, abs(np.trace(pt).real - np.trace(rho).real))
            f = to_fano(rho)
            reduced = partial_trace(rho, "B")
            bloch_a = np.array(
                [np.trace(reduced @ s).real for s in SIGMA]
            )
            worst = max(worst, np.max(np.abs(f.a - bloch_a)))
    return _result("partial_transpose_trace", "identities", m, worst, 1e-12)


def _check_local_unitary_invariance(n, seed, band):
    m = min(n, 300)
    worst = 0.0
    for start, states in ensemble_chunks("hs", seed, m):
        for i, rho in enumerate(states):
            g = sample_local_unitary(seed, start + i)
            rotated = local_unitary_action(rho, g)
            r0 = analyze(rho)
            r1 = analyze(rotated)
            for name in ("s2_pt", "s3_pt", "s4_pt", "det_c", "det_m", "c112"):
                worst = max(worst, abs(getattr(r0, name) - getattr(r1, name)))
    return _result("local_unitary_invariance", "identities", m, worst, 1e-10)


def _check_chart_spectrum_roundtrip(n, seed, band):
    m = min(n, 500)
    worst = 0.0
    for i in range(m):
        point = sample_chart_point(seed, i)
        r = eigenvalues_from_xyz(point.simplex)
        rho = representative_state(point)
        worst = max(worst, np.max(np.abs(herm_eigenvalues(rho) - r)))
        worst = max(
            worst,
            np.max(
                np.abs(
                    a_factor(point.alpha, point.beta, "closed")
                    - a_factor(point.alpha, point.beta, "series")
                )
            ),
        )
        back = xyz_from_eigenvalues(r)
        worst = max(
            worst,
            abs(back.x - point.simplex.x),
            abs(back.y - point.simplex.y),
            abs(back.z - point.simplex.z),
        )
    return _result("chart_spectrum_roundtrip", "identities", m, worst, 1e-12)


def _check_det_m_identity(n, seed, band):
    worst = 0.0
    for _, states in ensemble_chunks("hs", seed, n):
        for rho in states:
            f = to_fano(rho)
            lhs = det_schlienz_mahler(f)
            rhs = det_correlation(f) - 0.5 * quesne_c112(f)
            worst = max(worst, abs(lhs - rhs))
    return _result("det_m_identity", "identities", n, worst, tol.DET_IDENTITY_TOL)


# -- coefficient table ------------------------------------------------------------

def _check_det_c_closed_form(n, seed, band):
    m = min(n, 2000)
    worst = 0.0
    for i in range(m):
        point = sample_chart_point(seed, i)
        brute = det_correlation(to_fano(representative_state(point)))
        closed = det_c_closed_form(point.simplex, point.alpha[2], point.beta)
        worst = max(worst, abs(brute - closed))
    return _result("det_c_closed_form", "coeffs", m, worst, tol.CLOSED_FORM_TOL)


def _fit_points(seed, check_id, count):
    # draws stay inside the double octahedron (l1 <= 6 < 2*pi per triple)
    g = verify_stream(seed, check_id)
    out = []
    for _ in range(count):
        alpha = g.uniform(-2.0, 2.0, 3)
        beta = g.uniform(-2.0, 2.0, 3)
        out.append((alpha, beta))
    return out


def _check_fit_support_frozen(n, seed, band):
    fits = max(2, min(6, n // 1500))
    worst = 0.0
    detail = ""
    for alpha, beta in _fit_points(seed, 10, fits):
        table = fit_c112_coeffs(alpha, beta)
        worst = max(worst, table.residual)
        outside = [m for m in table.support() if m not in C112_SUPPORT]
        if outside or len(table.support()) > len(C112_SUPPORT):
            detail = f"support escaped the frozen set: {outside}"
            worst = np.inf
    return _result(
        "fit_support_frozen", "coeffs", fits, worst, tol.FIT_RESIDUAL_TOL, detail
    )


def _check_fit_alpha12_invariance(n, seed, band):
    fits = max(2, min(5, n // 2000))
    g = verify_stream(seed, 11)
    worst = 0.0
    for _ in range(fits):
        alpha = g.uniform(-2.0, 2.0, 3)
        beta = g.uniform(-2.0, 2.0, 3)
        other = alpha.copy()
        other[0], other[1] = g.uniform(-2.0, 2.0, 2)
        t0 = fit_c112_coeffs(alpha, beta)
        t1 = fit_c112_coeffs(other, beta)
        worst = max(worst, np.max(np.abs(t0.values - t1.values)))
    return _result(
        "fit_alpha12_invariance", "coeffs", fits, worst, tol.FIT_RESIDUAL_TOL
    )


def _check_fit_closed_form_entry(n, seed, band):
    fits = max(3, min(8, n // 1200))
    worst = 0.0
    for alpha, beta in _fit_points(seed, 12, fits):
        table = fit_c112_coeffs(alpha, beta)
        worst = max(worst, abs(table.entry((0, 2, 2)) - p022(alpha[2], beta)))
        mirrored = beta[::-1].copy()
        worst = max(worst, abs(table.entry((2, 0, 2)) - p022(alpha[2], mirrored)))
    return _result(
        "fit_closed_form_entry", "coeffs", fits, worst, tol.FIT_RESIDUAL_TOL
    )


def _check_c112_quartic_predicts(n, seed, band):
    fits = max(2, min(4, n // 2500))
    g = verify_stream(seed, 13)
    worst = 0.0
    for alpha, beta in _fit_points(seed, 23, fits):
        table = fit_c112_coeffs(alpha, beta)
        for _ in range(40):
            r = np.sort(g.dirichlet(np.ones(4)))[::-1]
            s = xyz_from_eigenvalues(r)
            predicted = sum(
                c * s.x ** i * s.y ** j * s.z ** k
                for c, (i, j, k) in zip(table.values, MONOMIALS)
            )
            actual = quesne_c112(
                to_fano(representative_state(ChartPoint(s, alpha, beta)))
            )
            worst = max(worst, abs(predicted - actual))
    return _result("c112_quartic_predicts", "coeffs", fits * 40, worst, 1e-9)


# -- PPT criterion ------------------------------------------------------------------

def _check_ppt_vs_eigenvalue_oracle(n, seed, band):
    mismatches = 0
    undecided = 0
    for _, states in ensemble_chunks("hs", seed, n):
        pts = pt_batch(states)
        _, s3, s4 = char_poly_batch(pts)
        sep, ent, bnd = verdict_masks(s3, s4, band)
        osep, oent, oundec = oracle_masks(np.linalg.eigvalsh(pts)[:, 0])
        decided = ~(bnd | oundec)
        mismatches += int(np.sum(decided & (sep != osep)))
        undecided += int(np.sum(~decided))
    return _result(
        "ppt_vs_eigenvalue_oracle",
        "ppt",
        n,
        float(mismatches),
        0.0,
        f"undecided(band)={undecided}",
    )


def _check_dual_path_agreement(n, seed, band):
    m = min(n, 2000)
    worst = 0.0
    for _, states in ensemble_chunks("hs", seed, m):
        for rho in states:
            f = to_fano(rho)
            _, s3_pt, s4_pt = s_coeffs_pt(rho)
            _, s3, s4 = char_poly_coeffs(rho)
            worst = max(worst, abs(s3 + det_correlation(f) / 4.0 - s3_pt))
            worst = max(worst, abs(s4 + det_schlienz_mahler(f) / 16.0 - s4_pt))
    return _result("dual_path_agreement", "ppt", m, worst, tol.DUAL_PATH_TOL)


def _check_werner_verdicts(n, seed, band):
    expected = ((0.2, SEPARABLE), (1.0 / 3.0, BOUNDARY), (0.5, ENTANGLED))
    bad = []
    for p, want in expected:
        got = ppt_verdict(density_matrix(werner_state(p)))
        if got != want:
            bad.append(f"p={p}: got {got}, want {want}")
    return _result(
        "werner_verdicts", "ppt", len(expected), float(len(bad)), 0.0, "; ".join(bad)
    )


def _check_bounds_attained_at_i4(n, seed, band):
    _, s3, s4 = s_coeffs_pt(I4 / 4.0)
    worst = max(abs(s3 - S3_BOUND), abs(s4 - S4_BOUND))
    return _result("bounds_attained_at_i4", "ppt", 1, worst, 1e-12)


def _check_product_states_separable(n, seed, band):
    m = min(n, 5000)
    entangled = 0
    worst = 0.0
    for _, states in ensemble_chunks("product", seed, m):
        pts = pt_batch(states)
        _, s3, s4 = char_poly_batch(pts)
        _, ent, _ = verdict_masks(s3, s4, band)
        entangled += int(ent.sum())
        for rho in states[:: max(1, len(states) // 64)]:
            f = to_fano(rho)
            worst = max(worst, np.max(np.abs(schlienz_mahler(f))), abs(quesne_c112(f)))
    if entangled:
        return _result(
            "product_states_separable", "ppt", m, np.inf, 1e-12,
            f"{entangled} product states judged entangled",
        )
    return _result("product_states_separable", "ppt", m, worst, 1e-12)


CHECKS = (
    ("identities", _check_kron_mixed_product),
    ("identities", _check_eigensolver_reconstruction),
    ("identities", _check_charpoly_vs_spectrum),
    ("identities", _check_expm_paths),
    ("identities", _check_fano_roundtrip),
    ("identities", _check_partial_transpose_trace),
    ("identities", _check_local_unitary_invariance),
    ("identities", _check_chart_spectrum_roundtrip),
    ("identities", _check_det_m_identity),
    ("coeffs", _check_det_c_closed_form),
    ("coeffs", _check_fit_support_frozen),
    ("coeffs", _check_fit_alpha12_invariance),
    ("coeffs", _check_fit_closed_form_entry),
    ("coeffs", _check_c112_quartic_predicts),
    ("ppt", _check_ppt_vs_eigenvalue_oracle),
    ("ppt", _check_dual_path_agreement),
    ("ppt", _check_werner_verdicts),
    ("ppt", _check_bounds_attained_at_i4),
    ("ppt", _check_product_states_separable),
)

SUITES = ("all", "identities", "coeffs", "ppt")


def run_suite(suite="all", samples=1000, seed=1, band=tol.VERDICT_TOL):
    """Run the selected verification suite.

    Returns a JSON-ready dict with one entry per check; a check that
    raises is recorded as failed with the exception text, and the
    remaining checks still run.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    results = []
    for group, fn in CHECKS:
        if suite != "all" and group != suite:
            continue
        try:
            results.append(fn(samples, seed, band))
        except Exception as exc:  # noqa: BLE001 - the suite must never abort early
            name = fn.__name__.removeprefix("_check_")
            results.append(
                CheckResult(
                    name=name,
                    group=group,
                    samples=0,
                    max_residual=float("inf"),
                    tolerance=0.0,
                    passed=False,
                    detail=f"{type(exc).__name__}: {exc}",
                )
            )
    passed = all(r.passed for r in results)
    return {
        "suite": suite,
        "samples": samples,
        "seed": seed,
        "band": band,
        "checks": [r.to_dict() for r in results],
        "passed_count": sum(r.passed for r in results),
        "failed_count": sum(not r.passed for r in results),
        "passed": passed,
    }
