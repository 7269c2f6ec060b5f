import numpy as np
import pytest
from hypothesis import given, strategies as st

from multop import (
    BasisLabel,
    DomainViolation,
    NotHermitian,
    Truncation,
    annulus,
    build_z_star,
    build_zzstar,
    build_z,
    characteristic_roots,
    classify_eigenvalues,
    closed_form_spectrum,
    disk,
    eigenvector_phi_lambda_z_star,
    eigenvector_simple,
    enumerate_basis,
    pants,
    simple_eigenvalue,
    spectrum_convergence_report,
    truncated_eigenvalues,
)
from multop.operators import OperatorMatrix


def test_simple_eigenvalue_values():
    assert simple_eigenvalue(pants(0.5, 0.2, 0.2)) == pytest.approx(
        0.032380952380952384, abs=1e-16
    )
    assert simple_eigenvalue(pants(0.6, 0.1, 0.2)) == pytest.approx(
        0.01 * 0.31 / 0.35, rel=1e-15
    )


def test_closed_form_spectrum_pants(pants_default):
    spec = closed_form_spectrum(pants_default)
    values = dict((fam, v) for v, fam in spec.isolated)
    assert values["E-family"] == 1.0
    assert values["F-family"] == pytest.approx(0.04)
    assert values["simple"] == pytest.approx(0.032380952380952384)
    assert spec.band == (pytest.approx(0.09), pytest.approx(0.49))


def test_closed_form_spectrum_annulus_disk(annulus_default):
    spec = closed_form_spectrum(annulus_default)
    assert sorted(v for v, _ in spec.isolated) == [pytest.approx(0.25), 1.0]
    assert spec.band is None
    spec = closed_form_spectrum(disk())
    assert sorted(v for v, _ in spec.isolated) == [0.0, 1.0]


def test_characteristic_roots_frozen(pants_default):
    lam = simple_eigenvalue(pants_default)
    roots = characteristic_roots(pants_default, lam)
    assert roots.x_plus.real == pytest.approx(-0.47619047619047616, abs=1e-12)
    assert roots.x_minus.real == pytest.approx(-2.1, abs=1e-12)


@given(st.floats(-1.0, 2.0))
def test_roots_product_one(lam):
    p = pants(0.5, 0.2, 0.2)
    roots = characteristic_roots(p, lam)
    assert roots.x_plus * roots.x_minus == pytest.approx(1.0, abs=1e-9)
    assert abs(roots.x_plus) <= abs(roots.x_minus) + 1e-9
    # delta factors through the band endpoints
    assert roots.delta == pytest.approx((0.09 - lam) * (0.49 - lam), rel=1e-12)


def test_roots_on_band_unimodular(pants_default):
    for lam in (0.1, 0.25, 0.48):
        roots = characteristic_roots(pants_default, lam)
        assert abs(roots.x_plus) == pytest.approx(1.0, abs=1e-10)
        assert roots.x_plus.imag >= 0


def test_eigenvector_phi_lambda(pants_default):
    t = Truncation(80)
    zs = build_z_star(pants_default, t).array
    for lam in (0.75, 0.3 + 0.55j, -0.8j):
        phi, tail = eigenvector_phi_lambda_z_star(pants_default, lam, t)
        resid = np.linalg.norm(zs @ phi.values - lam * phi.values)
        assert resid <= 5 * tail + 1e-12
        assert resid / phi.norm() < 1e-6


def test_eigenvector_phi_lambda_region_guard(pants_default):
    t = Truncation(10)
    for lam in (1.1, 0.1, 0.55, 0.05j):
        with pytest.raises(DomainViolation):
            eigenvector_phi_lambda_z_star(pants_default, lam, t)


def test_eigenvector_simple_exact(pants_default):
    t = Truncation(60)
    v = eigenvector_simple(pants_default, t).values
    zz = build_zzstar(pants_default, t, "exact").array
    lam = simple_eigenvalue(pants_default)
    assert np.max(np.abs(zz @ v - lam * v)) < 1e-12 * np.linalg.norm(v)


def test_truncated_eigenvalues_rejects_nonhermitian(pants_default, trunc40):
    op = build_z(pants_default, trunc40)
    with pytest.raises(NotHermitian):
        truncated_eigenvalues(op)


def test_exact_spectrum_multiplicities(pants_default):
    N = 60
    eigs = truncated_eigenvalues(build_zzstar(pants_default, Truncation(N), "exact"))
    assert np.sum(np.abs(eigs - 1.0) < 1e-12) == N
    assert np.sum(np.abs(eigs - 0.04) < 1e-12) == N
    assert np.min(np.abs(eigs - simple_eigenvalue(pants_default))) < 1e-12


def test_classify_eigenvalues(pants_default):
    eigs = truncated_eigenvalues(build_zzstar(pants_default, Truncation(60), "exact"))
    band_vals, iso = classify_eigenvalues(pants_default, eigs)
    # the chain [E_0, G_{-1}, ..., G_{-N}] has N + 1 eigenvalues, one of
    # which is the simple isolated one below the band
    assert len(band_vals) == 60
    assert all(0.09 - 0.008 <= w <= 0.49 + 0.008 for w in band_vals)
    counts = {round(k, 12): len(v) for k, v in iso.items()}
    assert counts[1.0] == 60
    assert counts[0.04] == 60
    assert counts[round(simple_eigenvalue(pants_default), 12)] == 1


def test_convergence_report_decreasing(pants_default):
    rows = spectrum_convergence_report(pants_default, [20, 40, 80])
    assert [r["N"] for r in rows] == [20, 40, 80]
    for r in rows:
        assert r["err_lambda_star"] < 1e-12
        assert r["err_r1sq"] == 0.0
        assert r["err_one"] == 0.0
    lo_errs = [r["band_lo_err"] for r in rows]
    hi_errs = [r["band_hi_err"] for r in rows]
    assert lo_errs[2] < lo_errs[0] and hi_errs[2] < hi_errs[0]


def test_annulus_zstarz_spectrum_exact(annulus_default, trunc40):
    from multop import build_zstarz

    eigs = truncated_eigenvalues(build_zstarz(annulus_default, trunc40, "exact"))
    assert set(np.round(eigs, 14)) == {0.25, 1.0}
