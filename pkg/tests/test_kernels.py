import numpy as np
import pytest

from multop import KERNEL_NAMES, KernelSpec, RegionViolation, pants, schur_young_bound
from multop.kernels import bound_squared, kernel_matrix, printed_bound_squared


def sample_lambda(name, rng, lo=0.09, hi=0.49):
    if name == "T1":
        if rng.uniform() < 0.5:
            return rng.uniform(0.02, 0.18) * np.exp(2j * np.pi * rng.uniform())
        return 0.5 + rng.uniform(0.02, 0.18) * np.exp(2j * np.pi * rng.uniform())
    if name in ("T2", "T3", "T7"):
        return rng.uniform(0.02, 0.18) * np.exp(2j * np.pi * rng.uniform())
    if name in ("T4", "T5", "T6"):
        return 0.5 + rng.uniform(0.02, 0.18) * np.exp(2j * np.pi * rng.uniform())
    if name in ("L1", "L2", "Q"):
        # keep away from the eigenvalues lambda* and r1^2 inside the gap
        while True:
            lam = rng.uniform(0.05 * lo, 0.9 * lo)
            if abs(lam - 0.032380952380952384) > 0.004 and abs(lam - 0.04) > 0.004:
                return lam
    return rng.uniform(hi + 0.1 * (1 - hi), 1 - 0.1 * (1 - hi))


@pytest.mark.parametrize("name", KERNEL_NAMES)
def test_bound_dominates(name, pants_default):
    rng = np.random.default_rng(hash(name) % 2 ** 32)
    for _ in range(10):
        spec = KernelSpec(name, pants_default, sample_lambda(name, rng))
        rep = schur_young_bound(spec, 300)
        assert rep.measured_norm <= rep.schur_young_bound * (1 + 1e-9), (
            f"{name} at {spec.lam}: bound {rep.schur_young_bound} "
            f"< measured {rep.measured_norm}"
        )
        assert rep.measured_norm > 0


def test_t1_closed_form(pants_default):
    spec = KernelSpec("T1", pants_default, 0.1)
    assert bound_squared(spec) == pytest.approx(1 / 0.81)


def test_t3_closed_form(pants_default):
    spec = KernelSpec("T3", pants_default, 0.1)
    assert bound_squared(spec) == pytest.approx(100.0)


def test_printed_forms_match_evaluator(pants_default):
    # the printed closed forms for T1, T3, T7, L1 agree with the bound
    # evaluator at the default (r1 == r2) parameters
    for name, lam in (("T1", 0.1), ("T3", 0.08), ("T7", 0.1 * 1j), ("L1", 0.05)):
        spec = KernelSpec(name, pants_default, lam)
        assert printed_bound_squared(spec) == pytest.approx(bound_squared(spec), rel=1e-12)


def test_region_violation(pants_default):
    with pytest.raises(RegionViolation):
        bound_squared(KernelSpec("T3", pants_default, 0.5))  # hole2, not hole1
    with pytest.raises(RegionViolation):
        bound_squared(KernelSpec("L1", pants_default, 0.3))  # not in the low gap
    with pytest.raises(RegionViolation):
        bound_squared(KernelSpec("R", pants_default, 0.05))  # low, not high


def test_rank_one_kernels_exact(pants_default):
    # T2, T5, Q, R are rank one; the reported bound is the exact norm,
    # so truncated measurement converges to it from below
    for name, lam in (("T2", 0.1), ("T5", 0.5 + 0.08j), ("Q", 0.02), ("R", 0.7)):
        spec = KernelSpec(name, pants_default, lam)
        sv = np.linalg.svd(kernel_matrix(spec, 200), compute_uv=False)
        assert sv[1] <= 1e-12 * sv[0]
        rep = schur_young_bound(spec, 300)
        assert rep.measured_norm == pytest.approx(rep.schur_young_bound, rel=1e-6)


def test_t1_kernel_structure(pants_default):
    mat = kernel_matrix(KernelSpec("T1", pants_default, 0.1), 6)
    assert mat[0, 1] == pytest.approx(1.0)  # lam^{j-n-1} at j=n+1
    assert mat[0, 2] == pytest.approx(0.1)
    assert np.all(mat[np.tril_indices(6)] == 0)
