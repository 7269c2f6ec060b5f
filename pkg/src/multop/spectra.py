"""Closed-form spectra, characteristic roots, explicit eigenvectors and
numerical eigensolves of the truncated operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .domains import (
    ANNULUS,
    DISK,
    PANTS,
    BasisIndex,
    BasisLabel,
    DomainParams,
    Truncation,
    enumerate_basis,
    validate,
)
from .errors import DomainViolation, NotHermitian
from .operators import OperatorMatrix, build_zzstar


@dataclass(frozen=True)
class SpectrumDescription:
    """Closed-form spectrum: isolated eigenvalues plus an optional band.

    ``isolated`` holds (value, family) pairs where family is "E-family",
    "F-family" or "simple".
    """

    isolated: tuple
    band: Optional[tuple] = None


@dataclass(frozen=True)
class RootData:
    """Roots of a*r2*x^2 + (r2^2+a^2-lambda)*x + a*r2 = 0."""

    lam: complex
    delta: complex
    x_plus: complex
    x_minus: complex


@dataclass(frozen=True)
class CoefficientVector:
    """A finite coefficient vector aligned with a BasisIndex."""

    index: BasisIndex
    values: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def simple_eigenvalue(params: DomainParams) -> float:
    """The isolated simple eigenvalue of zz* below the band (pants only)."""
    assert params.kind == PANTS
    a, r1, r2 = params.a, params.r1, params.r2
    lam = r1 ** 2 * (a ** 2 - r2 ** 2 - r1 ** 2) / (a ** 2 - r1 ** 2)
    assert 0.0 < lam < r1 ** 2
    assert lam < (r2 - a) ** 2
    return lam


def closed_form_spectrum(params: DomainParams) -> SpectrumDescription:
    """sigma(zz*) in closed form.

    The disk value {0, 1} is derived from the shift formulas (zz* E_0 = 0),
    not stated as such in closed form anywhere; it is tagged the same way
    the annulus isolated values are.
    """
    validate(params)
    if params.kind == DISK:
        return SpectrumDescription(isolated=((1.0, "E-family"), (0.0, "simple")))
    if params.kind == ANNULUS:
        return SpectrumDescription(
            isolated=((1.0, "E-family"), (params.r ** 2, "F-family"))
        )
    a, r2 = params.a, params.r2
    band = ((r2 - a) ** 2, (r2 + a) ** 2)
    assert 0.0 < band[0] and band[1] < 1.0
    return SpectrumDescription(
        isolated=(
            (1.0, "E-family"),
            (params.r1 ** 2, "F-family"),
            (simple_eigenvalue(params), "simple"),
        ),
        band=band,
    )


def characteristic_roots(params: DomainParams, lam: complex) -> RootData:
    """Roots of the two-step recurrence character equation for the G chain.

    Branch fixed so |x_plus| <= |x_minus|; on the band (equal moduli) the
    root with positive imaginary part is x_plus.
    """
    assert params.kind == PANTS
    a, r2 = params.a, params.r2
    lam = complex(lam)
    delta = ((a - r2) ** 2 - lam) * ((a + r2) ** 2 - lam)
    sq = np.sqrt(delta)
    x1 = (lam - r2 ** 2 - a ** 2 + sq) / (2 * a * r2)
    x2 = (lam - r2 ** 2 - a ** 2 - sq) / (2 * a * r2)
    m1, m2 = abs(x1), abs(x2)
    if abs(m1 - m2) <= 1e-12 * max(m1, m2, 1.0):
        if x1.imag >= x2.imag:
            xp, xm = x1, x2
        else:
            xp, xm = x2, x1
    elif m1 < m2:
        xp, xm = x1, x2
    else:
        xp, xm = x2, x1
    return RootData(lam=lam, delta=delta, x_plus=xp, x_minus=xm)


def _geom_tail(q: float, N: int) -> float:
    # sum_{k > N} q^{2k} for 0 <= q < 1
    return q ** (2 * (N + 1)) / (1.0 - q ** 2)


def eigenvector_phi_lambda_z_star(
    params: DomainParams, lam: complex, trunc: Truncation
) -> tuple[CoefficientVector, float]:
    """Truncated coefficients of the z* eigenvector at an interior point.

    Returns the unnormalized vector and an l2 bound on the dropped tail,
    so callers can account for the truncation residual honestly.
    """
    validate(params)
    index = enumerate_basis(params, trunc)
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise DomainViolation(f"|lambda| < 1 required, got {abs(lam)}")
    if params.kind in (ANNULUS, PANTS):
        r_in = params.r if params.kind == ANNULUS else params.r1
        if abs(lam) <= r_in:
            raise DomainViolation(f"|lambda| > {r_in} required, got {abs(lam)}")
    if params.kind == PANTS and abs(lam - params.a) <= params.r2:
        raise DomainViolation(
            f"|lambda - a| > {params.r2} required, got {abs(lam - params.a)}"
        )

    N = trunc.N
    values = np.zeros(index.dim, dtype=complex)
    tail_sq = _geom_tail(abs(lam), N)
    for i, label in enumerate(index.order):
        if label.family == "E":
            values[i] = lam ** label.n
        elif label.family == "F":
            r_in = params.r if params.kind == ANNULUS else params.r1
            values[i] = (lam / r_in) ** label.n
        else:
            values[i] = ((lam - params.a) / params.r2) ** label.n
    if params.kind in (ANNULUS, PANTS):
        r_in = params.r if params.kind == ANNULUS else params.r1
        tail_sq += _geom_tail(r_in / abs(lam), N - 1)
    if params.kind == PANTS:
        tail_sq += _geom_tail(params.r2 / abs(lam - params.a), N - 1)
    return CoefficientVector(index, values), float(np.sqrt(tail_sq))


def eigenvector_simple(params: DomainParams, trunc: Truncation) -> CoefficientVector:
    """Eigenvector of exact-mode zz* at the simple eigenvalue.

    Supported on the G chain (with E_0 in the g_0 slot); entries are
    x_minus**(n+1), decaying like |x_minus|**(-|n|).
    """
    assert params.kind == PANTS
    index = enumerate_basis(params, trunc)
    lam = simple_eigenvalue(params)
    xm = characteristic_roots(params, lam).x_minus
    values = np.zeros(index.dim, dtype=complex)
    values[index.index_of(BasisLabel("E", 0))] = xm
    for n in range(1, trunc.N + 1):
        values[index.index_of(BasisLabel("G", -n))] = xm ** (1 - n)
    return CoefficientVector(index, values)


def truncated_eigenvalues(matrix: OperatorMatrix) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian truncated operator."""
    mat = matrix.array
    scale = max(1.0, float(np.max(np.abs(mat))))
    if np.max(np.abs(mat - mat.conj().T)) > 1e-10 * scale:
        raise NotHermitian(f"{matrix.name} is not conjugate-symmetric")
    return np.linalg.eigvalsh(mat)


BAND_CLASS_FRACTION = 0.02  # of the band width, per the classification rule


def classify_eigenvalues(params: DomainParams, eigs: np.ndarray):
    """Split eigenvalues of exact-mode pants zz* into band vs isolated.

    An eigenvalue is band-classified when it lies within 2% of the band
    width of the closed-form band; otherwise it is matched to the nearest
    isolated value.
    """
    spec = closed_form_spectrum(params)
    lo, hi = spec.band
    tol = BAND_CLASS_FRACTION * (hi - lo)
    band_vals, isolated_assign = [], {v: [] for v, _ in spec.isolated}
    iso_values = [v for v, _ in spec.isolated]
    for w in eigs:
        if lo - tol <= w <= hi + tol:
            band_vals.append(w)
        else:
            nearest = min(iso_values, key=lambda v: abs(v - w))
            isolated_assign[nearest].append(w)
    return np.array(band_vals), isolated_assign


def spectrum_convergence_report(params: DomainParams, N_list) -> list[dict]:
    """Convergence of the truncated zz* spectrum to the closed form.

    One row per N with the distance of the nearest eigenvalue to each
    isolated value and the band-endpoint errors.
    """
    assert params.kind == PANTS
    lam_star = simple_eigenvalue(params)
    r1sq = params.r1 ** 2
    lo, hi = closed_form_spectrum(params).band
    rows = []
    for N in N_list:
        eigs = truncated_eigenvalues(build_zzstar(params, Truncation(N), "exact"))
        band_vals, _ = classify_eigenvalues(params, eigs)
        rows.append(
            {
                "N": N,
                "err_lambda_star": float(np.min(np.abs(eigs - lam_star))),
                "err_r1sq": float(np.min(np.abs(eigs - r1sq))),
                "err_one": float(np.min(np.abs(eigs - 1.0))),
                "band_lo_err": float(abs(band_vals.min() - lo)),
                "band_hi_err": float(abs(band_vals.max() - hi)),
            }
        )
    return rows
