import numpy as np
import pytest

from multop import (
    BasisLabel,
    CoefficientVector,
    GridSpec,
    NearEigenvalue,
    RegionViolation,
    Truncation,
    annulus,
    build_z,
    build_zzstar,
    dense_oracle_z,
    enumerate_basis,
    pants,
    pseudospectrum_grid,
    simple_eigenvalue,
    smallest_singular_value,
    solve_resolvent_z,
    solve_resolvent_zzstar,
    spectrum_membership,
)


def _rhs(index, rng, half_support=True):
    values = np.zeros(index.dim, dtype=complex)
    half = index.trunc.N // 2
    for i, label in enumerate(index.order):
        if not half_support or abs(label.n) <= half:
            values[i] = rng.standard_normal() + 1j * rng.standard_normal()
    return CoefficientVector(index, values)


def test_membership(pants_default):
    assert spectrum_membership(pants_default, 0.0) == "hole1"
    assert spectrum_membership(pants_default, 0.5) == "hole2"
    assert spectrum_membership(pants_default, 1.5) == "outside"
    assert spectrum_membership(pants_default, 0.3) == "pants"
    assert spectrum_membership(annulus(0.5), 0.1) == "hole1"
    assert spectrum_membership(annulus(0.5), 0.7) == "annulus"


def test_region_violation(pants_default):
    index = enumerate_basis(pants_default, Truncation(20))
    rhs = CoefficientVector(index, np.zeros(index.dim, dtype=complex))
    for lam in (0.3, 0.21):  # inside the pants region
        with pytest.raises(RegionViolation):
            solve_resolvent_z(pants_default, lam, rhs)


def test_resolvent_z_residual(pants_default, rng):
    """(z - lambda) phi - rhs stays below tolerance (non-edge rows)."""
    t = Truncation(100)
    index = enumerate_basis(pants_default, t)
    z = build_z(pants_default, t).array
    edge = np.zeros(index.dim, dtype=bool)
    edge[index.index_of(BasisLabel("F", -t.N))] = True
    edge[index.index_of(BasisLabel("G", -t.N))] = True
    for lam in (0.1, 0.12j, 0.02, 0.5 + 0.1j, 0.55, 1.5, -2.0j):
        rhs = _rhs(index, rng)
        phi = solve_resolvent_z(pants_default, lam, rhs)
        resid = (z - lam * np.eye(index.dim)) @ phi.values - rhs.values
        assert np.linalg.norm(resid[~edge]) <= 1e-9 * rhs.norm()


def test_resolvent_z_matches_dense_oracle(pants_default, rng):
    t = Truncation(100)
    index = enumerate_basis(pants_default, t)
    for lam in (0.1, 0.05j, 0.55, 0.45, 1.5j):
        rhs = _rhs(index, rng)
        phi = solve_resolvent_z(pants_default, lam, rhs)
        dense = dense_oracle_z(pants_default, lam, rhs)
        assert np.linalg.norm(phi.values - dense) <= 1e-9 * np.linalg.norm(dense)


def test_resolvent_z_zero_lambda(pants_default):
    """lambda = 0: z maps F_{-4} to r1 F_{-3}, so the preimage of F_{-3}
    is (1/r1) F_{-4}."""
    t = Truncation(30)
    index = enumerate_basis(pants_default, t)
    values = np.zeros(index.dim, dtype=complex)
    values[index.index_of(BasisLabel("F", -3))] = 1.0
    phi = solve_resolvent_z(pants_default, 0.0, CoefficientVector(index, values))
    expect = np.zeros(index.dim, dtype=complex)
    expect[index.index_of(BasisLabel("F", -4))] = 5.0
    assert np.max(np.abs(phi.values - expect)) < 1e-14


def test_resolvent_z_annulus(annulus_default, rng):
    t = Truncation(80)
    index = enumerate_basis(annulus_default, t)
    z = build_z(annulus_default, t).array
    for lam in (0.2, 0.3j, 1.4):
        rhs = _rhs(index, rng)
        phi = solve_resolvent_z(annulus_default, lam, rhs)
        dense = dense_oracle_z(annulus_default, lam, rhs)
        assert np.linalg.norm(phi.values - dense) <= 1e-9 * np.linalg.norm(dense)


def test_resolvent_zzstar_regions(pants_default):
    index = enumerate_basis(pants_default, Truncation(20))
    rhs = CoefficientVector(index, np.zeros(index.dim, dtype=complex))
    for lam in (0.2, 0.095, 1.2):
        with pytest.raises(RegionViolation):
            solve_resolvent_zzstar(pants_default, lam, rhs)
    for lam in (simple_eigenvalue(pants_default), 0.04):
        with pytest.raises(NearEigenvalue):
            solve_resolvent_zzstar(pants_default, lam, rhs)


def test_resolvent_zzstar_f_block(pants_default):
    index = enumerate_basis(pants_default, Truncation(30))
    values = np.zeros(index.dim, dtype=complex)
    values[index.index_of(BasisLabel("F", -2))] = 1.0
    phi = solve_resolvent_zzstar(pants_default, 0.05, CoefficientVector(index, values))
    expect = np.zeros(index.dim, dtype=complex)
    expect[index.index_of(BasisLabel("F", -2))] = -100.0
    assert np.max(np.abs(phi.values - expect)) < 1e-9


def test_resolvent_zzstar_matches_dense(pants_default, rng):
    t = Truncation(120)
    index = enumerate_basis(pants_default, t)
    zz = build_zzstar(pants_default, t, "exact").array
    eye = np.eye(index.dim)
    for lam in (0.02, 0.05, 0.07, 0.6, 0.75, 0.9):
        rhs = _rhs(index, rng)
        phi = solve_resolvent_zzstar(pants_default, lam, rhs)
        dense = np.linalg.solve(zz - lam * eye, rhs.values)
        assert np.linalg.norm(phi.values - dense) <= 1e-9 * np.linalg.norm(dense)


def test_smin_floor_and_decay(pants_default):
    # bounded below off the spectrum, decaying inside it
    for N in (50, 100):
        t = Truncation(N)
        for lam in (0.0, 0.5, 1.2 * np.exp(1j * np.pi / 3)):
            assert smallest_singular_value(pants_default, t, lam) >= 0.01
    assert smallest_singular_value(pants_default, Truncation(100), 0.8) <= 1e-8


def test_pseudospectrum_grid_layout(pants_default):
    grid = GridSpec(-1.0, 1.0, -1.0, 1.0, 5)
    rows = pseudospectrum_grid(pants_default, Truncation(15), grid)
    assert len(rows) == 25
    assert rows[0][:2] == (-1.0, -1.0)
    assert rows[1][:2] == (-0.5, -1.0)  # row-major, x fastest
    regions = {r[3] for r in rows}
    assert "outside" in regions and "pants" in regions and "hole1" in regions


def test_pseudospectrum_containment(pants_default):
    """{smin < 1e-6} stays inside the filled spectrum region (dilated)."""
    grid = GridSpec(-1.2, 1.2, -1.2, 1.2, 25)
    rows = pseudospectrum_grid(pants_default, Truncation(60), grid)
    for re, im, smin, region in rows:
        if smin < 1e-6:
            lam = complex(re, im)
            assert abs(lam) <= 1.0 + 0.05
            assert abs(lam) >= 0.2 - 0.05
            assert abs(lam - 0.5) >= 0.2 - 0.05
