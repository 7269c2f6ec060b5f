"""Analytic resolvent solves for (z - lambda) and (zz* - lambda), plus the
pseudospectrum grid sweep.

The coefficient recurrences are solved in the square-summable direction,
exactly as the variation-of-parameters / geometric-series solutions
prescribe; the truncated right-hand side is assumed supported away from
the window edge so that dropped geometric tails stay below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg

from .domains import (
    ANNULUS,
    DISK,
    PANTS,
    BasisLabel,
    DomainParams,
    Truncation,
    enumerate_basis,
)
from .errors import NearEigenvalue, RegionViolation
from .operators import build_z
from .spectra import CoefficientVector, characteristic_roots, simple_eigenvalue

TOL_RESOLVENT = 1e-9
REGION_MARGIN = 1e-6


def spectrum_membership(params: DomainParams, lam: complex) -> str:
    """Classify a point: inside the domain, inside a hole, or outside."""
    lam = complex(lam)
    if abs(lam) > 1.0:
        return "outside"
    if params.kind in (ANNULUS, PANTS):
        r_in = params.r if params.kind == ANNULUS else params.r1
        if abs(lam) < r_in:
            return "hole1"
    if params.kind == PANTS and abs(lam - params.a) < params.r2:
        return "hole2"
    return params.kind if params.kind != PANTS else "pants"


def _resolvent_region(params: DomainParams, lam: complex) -> str:
    lam = complex(lam)
    if abs(lam) >= 1.0 + REGION_MARGIN:
        return "outside"
    if params.kind in (ANNULUS, PANTS):
        r_in = params.r if params.kind == ANNULUS else params.r1
        if abs(lam) <= r_in - REGION_MARGIN:
            return "hole1"
    if params.kind == PANTS and abs(lam - params.a) <= params.r2 - REGION_MARGIN:
        return "hole2"
    raise RegionViolation(
        f"lambda={lam} is not interior (margin {REGION_MARGIN}) to any proved "
        "resolvent region"
    )


def _split(params: DomainParams, trunc: Truncation, values: np.ndarray):
    """(e, f, g) blocks; f and g are ordered F_-1..F_-N / G_-1..G_-N."""
    index = enumerate_basis(params, trunc)
    N = trunc.N
    e = values[index.block("E")]
    f = values[index.block("F")] if "F" in params.families() else np.zeros(0, complex)
    g = values[index.block("G")] if "G" in params.families() else np.zeros(0, complex)
    return e, f, g


def _join(params: DomainParams, trunc: Truncation, e, f, g) -> np.ndarray:
    parts = [e]
    if "F" in params.families():
        parts.append(f)
    if "G" in params.families():
        parts.append(g)
    return np.concatenate(parts)


def solve_resolvent_z(
    params: DomainParams, lam: complex, rhs: CoefficientVector
) -> CoefficientVector:
    """Solve (z - lambda) phi = rhs by the analytic coefficient recurrences.

    lambda must lie strictly inside a hole or outside the unit disk; the
    outside region uses a direct linear solve on the truncated matrix.
    """
    trunc = rhs.index.trunc
    region = _resolvent_region(params, lam)
    lam = complex(lam)
    if region == "outside":
        mat = build_z(params, trunc).array - lam * np.eye(rhs.index.dim)
        return CoefficientVector(rhs.index, np.linalg.solve(mat, rhs.values))

    N = trunc.N
    et, ft, gt = _split(params, trunc, rhs.values)
    r_in = params.r if params.kind == ANNULUS else params.r1

    # e_n = sum_{j>n} lam^{j-n-1} e~_j, via the backward recurrence
    e = np.zeros(N + 1, dtype=complex)
    acc = 0.0 + 0.0j
    for n in range(N - 1, -1, -1):
        acc = et[n + 1] + lam * acc
        e[n] = acc

    f = np.zeros(N, dtype=complex)  # f[k] holds f_{-(k+1)}
    g = np.zeros(N, dtype=complex)

    if region == "hole1":
        nu = lam / r_in
        if params.kind == PANTS:
            mu = (lam - params.a) / params.r2
            # g_n from below: r2 g_{n-1} - r2 mu g_n = g~_n, square-summable
            # branch (|mu| > 1)
            prev = 0.0 + 0.0j  # g_{-N-1} := 0
            for k in range(N - 1, -1, -1):  # n = -(k+1), from -N up to -1
                prev = (prev - gt[k] / params.r2) / mu
                g[k] = prev
            sum_e = sum(lam ** j * et[j] for j in range(N, -1, -1))
            sum_g = sum(mu ** (-(k + 1)) * gt[k] for k in range(N - 1, -1, -1))
            f[0] = (sum_e + sum_g) / r_in
        else:
            sum_e = sum(lam ** j * et[j] for j in range(N, -1, -1))
            f[0] = sum_e / r_in
        # f downward: f_{n-1} = nu f_n + f~_n / r
        for k in range(1, N):  # f_{-(k+1)} from f_{-k}
            f[k] = nu * f[k - 1] + ft[k - 1] / r_in
    else:  # hole2, pants only
        nu = lam / r_in
        mu = (lam - params.a) / params.r2
        # f from below: f_n = (f_{n-1} - f~_n / r1) / nu, |nu| > 1
        prev = 0.0 + 0.0j
        for k in range(N - 1, -1, -1):
            prev = (prev - ft[k] / r_in) / nu
            f[k] = prev
        sum_e = sum(lam ** j * et[j] for j in range(N, -1, -1))
        sum_f = sum(nu ** (-(k + 1)) * ft[k] for k in range(N - 1, -1, -1))
        g[0] = (sum_e + sum_f) / params.r2
        # g downward: g_{n-1} = mu g_n + g~_n / r2, |mu| < 1
        for k in range(1, N):
            g[k] = mu * g[k - 1] + gt[k - 1] / params.r2

    return CoefficientVector(rhs.index, _join(params, trunc, e, f, g))


def dense_oracle_z(
    params: DomainParams, lam: complex, rhs: CoefficientVector
) -> np.ndarray:
    """Independent dense-linear-algebra solve of (z - lambda) phi = rhs.

    Outside the unit disk the square truncated system is well conditioned
    and solved directly.  Inside a hole the square truncation is
    defective (exponentially small spurious singular values), so the two
    edge rows it falsifies (F_{-N}, G_{-N}, which lose their
    out-of-window coupling) are deleted and the minimum-norm solution of
    the remaining exact equations is taken; the null directions are
    edge-concentrated and orthogonal to the decaying solution up to
    geometric tails.
    """
    trunc = rhs.index.trunc
    index = rhs.index
    lam = complex(lam)
    mat = build_z(params, trunc).array - lam * np.eye(index.dim)
    if abs(lam) > 1.0:
        return np.linalg.solve(mat, rhs.values)
    keep = np.ones(index.dim, dtype=bool)
    if params.kind in (ANNULUS, PANTS):
        keep[index.index_of(BasisLabel("F", -trunc.N))] = False
    if params.kind == PANTS:
        keep[index.index_of(BasisLabel("G", -trunc.N))] = False
    sol, *_ = np.linalg.lstsq(mat[keep], rhs.values[keep], rcond=None)
    return sol


def solve_resolvent_zzstar(
    params: DomainParams, lam: float, rhs: CoefficientVector
) -> CoefficientVector:
    """Solve (zz* - lambda) phi = rhs in the two proved gap intervals.

    Uses the diagonal E/F solutions and the variation-of-parameters
    solution of the G-chain recurrence, including the coupling constant
    fixed by the E_0 (g_0) equation.
    """
    assert params.kind == PANTS
    lam = float(lam)
    a, r1, r2 = params.a, params.r1, params.r2
    lo, hi = (r2 - a) ** 2, (r2 + a) ** 2
    if REGION_MARGIN < lam < lo - REGION_MARGIN:
        low_case = True
    elif hi + REGION_MARGIN < lam < 1.0 - REGION_MARGIN:
        low_case = False
    else:
        raise RegionViolation(
            f"lambda={lam} outside (0,{lo}) U ({hi},1) with margin {REGION_MARGIN}"
        )
    lam_star = simple_eigenvalue(params)
    for excluded in (lam_star, r1 ** 2):
        if abs(lam - excluded) < REGION_MARGIN:
            raise NearEigenvalue(f"lambda={lam} within margin of eigenvalue {excluded}")

    trunc = rhs.index.trunc
    N = trunc.N
    et, ft, gt = _split(params, trunc, rhs.values)

    e = np.zeros(N + 1, dtype=complex)
    e[1:] = et[1:] / (1.0 - lam)
    f = ft / (r1 ** 2 - lam)

    roots = characteristic_roots(params, lam)
    xp, xm = roots.x_plus, roots.x_minus  # |xp| < 1 < |xm| in both gaps
    s = r1 ** 2 + r2 ** 2 - lam
    g0t = et[0]  # g~_0 := e~_0

    # Green's kernel of the interior three-term recurrence: K(n,j) =
    # inv * xp^{|n-j|} with inv = 1/(a r2 (xp - xm)); the homogeneous
    # correction decaying as n -> -inf is a multiple of xm^n, fixed by
    # the modified g_0 (= e_0) boundary row.
    inv = 1.0 / (a * r2 * (xp - xm))
    # low_n[k] = sum_{j <= n} g~_j xm^{j-n}, n = -(k+1)
    low_part = np.zeros(N, dtype=complex)
    acc = 0.0 + 0.0j
    for k in range(N - 1, -1, -1):
        acc = acc / xm + gt[k]
        low_part[k] = acc
    # up_n[k] = sum_{j = n+1..-1} g~_j xp^{j-n}
    up_part = np.zeros(N, dtype=complex)
    acc = 0.0 + 0.0j
    for k in range(1, N):
        acc = xp * (acc + gt[k - 1])
        up_part[k] = acc
    S = inv * sum(gt[k] * xm ** (-k) for k in range(N - 1, -1, -1))

    denom = xm * s + a * r2
    c = (g0t - (xp * s + a * r2) * S) / denom
    g = c * xm ** (-np.arange(N)) + inv * (up_part + low_part)
    e[0] = c * xm + xp * S

    return CoefficientVector(rhs.index, _join(params, trunc, e, f, g))


# -- pseudospectrum ----------------------------------------------------------

SMIN_DENSE_LIMIT = 1500


def adjoint_section(params: DomainParams, trunc: Truncation) -> np.ndarray:
    """Rectangular window section of z*: extra rows keep the images that
    leave the truncation window (F_{-N-1}, G_{-N-1}).

    The square corner truncation of z is a Jordan-like defective matrix
    whose smallest singular value collapses spuriously inside the holes;
    the rectangular section of z* restricts the infinite operator without
    cutting any image, so min ||(z* - conj(lambda)) x|| is bounded below
    off the spectrum and decays inside it (phi_lambda is a right null
    vector there).
    """
    from .operators import build_z_star

    index = enumerate_basis(params, trunc)
    mat = build_z_star(params, trunc).array
    extra = []
    if params.kind in (ANNULUS, PANTS):
        w = params.r if params.kind == ANNULUS else params.r1
        row = np.zeros(index.dim, dtype=complex)
        row[index.index_of(BasisLabel("F", -trunc.N))] = w
        extra.append(row)
    if params.kind == PANTS:
        row = np.zeros(index.dim, dtype=complex)
        row[index.index_of(BasisLabel("G", -trunc.N))] = params.r2
        extra.append(row)
    if extra:
        mat = np.vstack([mat, np.array(extra)])
    return mat


def smallest_singular_value(
    params: DomainParams, trunc: Truncation, lam: complex
) -> float:
    """min ||(z* - conj(lambda)) x|| over the truncation window.

    Small exactly when lambda approximates sigma(z); full SVD below the
    dense size limit, iterative refinement above.
    """
    index = enumerate_basis(params, trunc)
    mat = adjoint_section(params, trunc)
    shifted = mat - np.conj(lam) * np.eye(mat.shape[0], index.dim)
    if index.dim < SMIN_DENSE_LIMIT:
        return float(np.linalg.svd(shifted, compute_uv=False)[-1])
    rng = np.random.default_rng(0)
    v0 = rng.standard_normal(min(shifted.shape))
    s = scipy.sparse.linalg.svds(
        scipy.sparse.csr_matrix(shifted), k=1, which="SM", v0=v0,
        return_singular_vectors=False,
    )
    return float(s[0])


@dataclass(frozen=True)
class GridSpec:
    """Rectangle [x0,x1] x [y0,y1] sampled at res points per axis."""

    x0: float
    x1: float
    y0: float
    y1: float
    res: int


def pseudospectrum_grid(
    params: DomainParams, trunc: Truncation, grid: GridSpec
) -> list[tuple[float, float, float, str]]:
    """smin(lambda) of (z_N - lambda) over the grid, row-major by grid index.

    Each entry is (re, im, smin, region).
    """
    index = enumerate_basis(params, trunc)
    mat = adjoint_section(params, trunc)
    eye = np.eye(mat.shape[0], index.dim)
    xs = np.linspace(grid.x0, grid.x1, grid.res)
    ys = np.linspace(grid.y0, grid.y1, grid.res)
    rows = []
    for y in ys:
        for x in xs:
            lam = complex(x, y)
            smin = float(
                np.linalg.svd(mat - np.conj(lam) * eye, compute_uv=False)[-1]
            )
            rows.append((float(x), float(y), smin, spectrum_membership(params, lam)))
    return rows
