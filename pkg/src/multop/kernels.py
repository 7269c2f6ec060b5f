"""Schur-Young norm bounds for the resolvent kernel operators.

Thirteen kernels appear in the analytic resolvent solutions: T1..T7 for
(z - lambda)^{-1} and Q, R, L1..L4 for (zz* - lambda)^{-1}.  For each one
this module evaluates a closed-form norm bound (the Schur-Young double
supremum summed geometrically, or the exact rank-one norm for T2, T5, Q
and R) and measures the largest singular value of the truncated kernel
matrix, so that bound >= measurement can be certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .domains import PANTS, DomainParams
from .errors import RegionViolation
from .spectra import characteristic_roots

KERNEL_NAMES = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "L1", "L2", "L3", "L4", "Q", "R")

DEFAULT_KERNEL_SIZE = 400


@dataclass(frozen=True)
class KernelSpec:
    name: str
    params: DomainParams
    lam: complex


@dataclass(frozen=True)
class BoundReport:
    name: str
    schur_young_bound: float
    measured_norm: float

    @property
    def slack(self) -> float:
        return self.schur_young_bound - self.measured_norm


def _check_region(spec: KernelSpec) -> None:
    p, lam = spec.params, complex(spec.lam)
    assert p.kind == PANTS
    name = spec.name
    in_hole1 = abs(lam) < p.r1
    in_hole2 = abs(lam - p.a) < p.r2
    if name == "T1":
        ok = in_hole1 or in_hole2
    elif name in ("T2", "T3", "T7"):
        ok = in_hole1
    elif name in ("T4", "T5", "T6"):
        ok = in_hole2
    elif name in ("L1", "L2", "Q"):
        ok = lam.imag == 0 and 0.0 < lam.real < (p.r2 - p.a) ** 2
    else:  # L3, L4, R
        ok = lam.imag == 0 and (p.r2 + p.a) ** 2 < lam.real < 1.0
    if not ok:
        raise RegionViolation(f"{name} is not valid at lambda={lam}")


def _ratios(p: DomainParams, lam: complex):
    nu = lam / p.r1
    mu = (lam - p.a) / p.r2
    return nu, mu


def bound_squared(spec: KernelSpec) -> float:
    """Closed-form squared norm bound for one kernel operator."""
    _check_region(spec)
    p, lam = spec.params, complex(spec.lam)
    a, r1, r2 = p.a, p.r1, p.r2
    nu, mu = _ratios(p, lam)
    name = spec.name
    if name == "T1":
        return 1.0 / (1.0 - abs(lam)) ** 2
    if name == "T2":
        return (
            1.0
            / (r1 ** 2 * (1.0 - abs(nu) ** 2))
            * (1.0 / (1.0 - abs(lam) ** 2) + 1.0 / (abs(mu) ** 2 - 1.0))
        )
    if name == "T3":
        return 1.0 / (r1 ** 2 * (1.0 - abs(nu)) ** 2)
    if name == "T4":
        return 1.0 / (r1 ** 2 * (abs(nu) - 1.0) ** 2)
    if name == "T5":
        return (
            1.0
            / (r2 ** 2 * (1.0 - abs(mu) ** 2))
            * (1.0 / (1.0 - abs(lam) ** 2) + 1.0 / (abs(nu) ** 2 - 1.0))
        )
    if name == "T6":
        return 1.0 / (r2 ** 2 * (1.0 - abs(mu)) ** 2)
    if name == "T7":
        return 1.0 / (r2 ** 2 * (abs(mu) - 1.0) ** 2)

    roots = characteristic_roots(p, lam)
    delta = abs(roots.delta)
    axp, axm = abs(roots.x_plus), abs(roots.x_minus)
    # |x_plus| < 1 < |x_minus| in both gap intervals; kernels supported on
    # j <= n decay through the large root, j >= n+1 through the small one.
    if name in ("L1", "L3"):
        return 1.0 / (delta * (1.0 - 1.0 / axm) ** 2)
    if name in ("L2", "L4"):
        return (axp / (1.0 - axp)) ** 2 / delta
    # Q and R are rank one: ||u|| * ||w|| is the exact infinite norm.
    s = r1 ** 2 + r2 ** 2 - lam.real
    x_out = roots.x_minus
    x_in = roots.x_plus
    ax = abs(x_out)
    denom = x_out * s + a * r2
    if abs(denom) < 1e-12:
        raise RegionViolation(f"{name} singular at lambda={lam} (eigenvalue)")
    u_sq = ax ** 2 / (1.0 - ax ** -2)
    ratio = abs((x_in * s + a * r2) / denom)
    w_sq = 1.0 / abs(denom) ** 2 + ratio ** 2 / (delta * (1.0 - ax ** -2))
    return u_sq * w_sq


def printed_bound_squared(spec: KernelSpec) -> float:
    """The closed forms exactly as printed for T1, T3, T7 and L1."""
    _check_region(spec)
    p, lam = spec.params, complex(spec.lam)
    nu, mu = _ratios(p, lam)
    name = spec.name
    if name == "T1":
        return 1.0 / (1.0 - abs(lam)) ** 2
    if name == "T3":
        return 1.0 / (p.r1 ** 2 * (1.0 - abs(nu)) ** 2)
    if name == "T7":
        # printed with an r1^2 prefactor; equals bound_squared when r1 == r2
        return 1.0 / (p.r1 ** 2 * (abs(mu) - 1.0) ** 2)
    if name == "L1":
        roots = characteristic_roots(p, lam)
        return 1.0 / (abs(roots.delta) * (1.0 - 1.0 / abs(roots.x_minus)) ** 2)
    raise KeyError(name)


def kernel_matrix(spec: KernelSpec, size: int = DEFAULT_KERNEL_SIZE) -> np.ndarray:
    """Truncated kernel matrix on the first ``size`` indices of each leg."""
    _check_region(spec)
    p, lam = spec.params, complex(spec.lam)
    a, r1, r2 = p.a, p.r1, p.r2
    nu, mu = _ratios(p, lam)
    name = spec.name
    k = np.arange(size)

    if name == "T1":
        # n, j >= 0; K = lam^{j-n-1} for j >= n+1
        n, j = np.meshgrid(k, k, indexing="ij")
        with np.errstate(invalid="ignore"):
            mat = np.where(j >= n + 1, lam ** ((j - n - 1).clip(min=0)), 0.0)
        return mat.astype(complex)
    if name in ("T3", "T4", "T6", "T7"):
        # n, j in -1..-size; columns/rows stored by |n|-1
        base, pref = (nu, 1.0 / r1) if name in ("T3", "T4") else (mu, 1.0 / r2)
        ni, ji = np.meshgrid(-(k + 1), -(k + 1), indexing="ij")
        if name in ("T3", "T6"):
            support = ji >= ni + 1
        else:
            support = ji <= ni
        expo = np.where(support, ji - ni - 1, 0)
        return np.where(support, pref * base ** expo, 0.0).astype(complex)
    if name in ("T2", "T5"):
        # rank one: rows n = -1..-size; columns are the two input legs
        if name == "T2":
            left = (1.0 / r1) * nu ** (-(-(k + 1)) - 1)  # (lam/r1)^{-n-1}
            cols = np.concatenate([lam ** k, mu ** (-(k + 1))])
        else:
            left = (1.0 / r2) * mu ** (-(-(k + 1)) - 1)
            cols = np.concatenate([lam ** k, nu ** (-(k + 1))])
        return np.outer(left, cols).astype(complex)

    roots = characteristic_roots(p, lam)
    sq = np.sqrt(complex(roots.delta))
    if name in ("L1", "L2", "L3", "L4"):
        x = roots.x_minus if name in ("L1", "L3") else roots.x_plus
        ni, ji = np.meshgrid(-(k + 1), -(k + 1), indexing="ij")
        support = ji <= ni if name in ("L1", "L3") else ji >= ni + 1
        expo = np.where(support, ji - ni, 0)
        return np.where(support, x ** expo / sq, 0.0).astype(complex)

    # Q and R: rows and columns indexed by n, j in 0..-size
    s = r1 ** 2 + r2 ** 2 - lam.real
    x_out = roots.x_minus
    x_in = roots.x_plus
    denom = x_out * s + a * r2
    if abs(denom) < 1e-12:
        raise RegionViolation(f"{name} singular at lambda={lam} (eigenvalue)")
    sign = -1.0 if name == "Q" else 1.0
    u = x_out ** (1 - k)  # n = -k, entry x_out^{n+1}
    w = np.zeros(size + 1, dtype=complex)
    w[0] = 1.0 / denom
    w[1:] = sign * ((x_in * s + a * r2) / denom) * x_out ** (-k[: size]) / sq
    return np.outer(u, w).astype(complex)


def schur_young_bound(spec: KernelSpec, size: int = DEFAULT_KERNEL_SIZE) -> BoundReport:
    """Bound vs measured truncated norm for one kernel."""
    bound = sqrt(bound_squared(spec))
    measured = float(np.linalg.norm(kernel_matrix(spec, size), 2))
    return BoundReport(spec.name, bound, measured)
