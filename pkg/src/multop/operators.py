"""Truncated matrices for z, z*, zz*, z*z, [z*,z] and the small matrices A, C, D.

Two construction modes exist wherever truncation matters:

* ``compressed`` -- compose the truncated factors (P z P etc.); identities
  that hold for the infinite operators acquire artifacts near the
  truncation edge.
* ``exact`` -- build the window restriction of the infinite composition
  directly from the basis-action formulas; the algebraic structure
  (Hermitian blocks, exact eigenspaces) is preserved at finite size.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .domains import (
    ANNULUS,
    DISK,
    PANTS,
    BasisIndex,
    BasisLabel,
    DomainParams,
    Truncation,
    enumerate_basis,
)
from .errors import InvalidMode

DENSE_DIM_LIMIT = 2000

MODES = ("exact", "compressed")


@dataclass(frozen=True)
class OperatorMatrix:
    """A truncated operator: basis index, entries, mode and a label."""

    index: BasisIndex
    entries: object  # ndarray or scipy sparse
    mode: str
    name: str

    @property
    def dim(self) -> int:
        return self.index.dim

    @property
    def array(self) -> np.ndarray:
        if sp.issparse(self.entries):
            return self.entries.toarray()
        return self.entries


def _wrap(index: BasisIndex, mat: np.ndarray, mode: str, name: str) -> OperatorMatrix:
    if index.dim >= DENSE_DIM_LIMIT:
        return OperatorMatrix(index, sp.csr_matrix(mat), mode, name)
    return OperatorMatrix(index, mat, mode, name)


def _from_actions(index: BasisIndex, actions, mode: str, name: str) -> OperatorMatrix:
    """Assemble a matrix column by column from basis actions.

    ``actions(label)`` yields (target_label, value) pairs; targets outside
    the truncation window are dropped (compression at the outer edge).
    """
    dim = index.dim
    mat = np.zeros((dim, dim), dtype=complex)
    for j, label in enumerate(index.order):
        for target, value in actions(label):
            if target in index:
                mat[index.index_of(target), j] = value
    return _wrap(index, mat, mode, name)


def _z_actions(params: DomainParams):
    kind = params.kind

    def actions(label: BasisLabel):
        fam, n = label.family, label.n
        if fam == "E":
            yield BasisLabel("E", n + 1), 1.0
        elif fam == "F":
            w = params.r if kind == ANNULUS else params.r1
            if n == -1:
                yield BasisLabel("E", 0), w
            else:
                yield BasisLabel("F", n + 1), w
        else:  # G
            if n == -1:
                yield BasisLabel("E", 0), params.r2
                yield BasisLabel("G", -1), params.a
            else:
                yield BasisLabel("G", n + 1), params.r2
                yield BasisLabel("G", n), params.a

    return actions


def _z_star_actions(params: DomainParams):
    kind = params.kind

    def actions(label: BasisLabel):
        fam, n = label.family, label.n
        if fam == "E":
            if n >= 1:
                yield BasisLabel("E", n - 1), 1.0
            elif kind == ANNULUS:
                yield BasisLabel("F", -1), params.r
            elif kind == PANTS:
                yield BasisLabel("F", -1), params.r1
                yield BasisLabel("G", -1), params.r2
            # disk: z* E_0 = 0
        elif fam == "F":
            w = params.r if kind == ANNULUS else params.r1
            yield BasisLabel("F", n - 1), w
        else:  # G
            yield BasisLabel("G", n - 1), params.r2
            yield BasisLabel("G", n), params.a

    return actions


def build_z(params: DomainParams, trunc: Truncation) -> OperatorMatrix:
    """Truncated multiplication operator; images outside the window drop."""
    index = enumerate_basis(params, trunc)
    return _from_actions(index, _z_actions(params), "compressed", "z")


def build_z_star(params: DomainParams, trunc: Truncation) -> OperatorMatrix:
    """Truncated adjoint; equals the conjugate transpose of build_z."""
    index = enumerate_basis(params, trunc)
    return _from_actions(index, _z_star_actions(params), "compressed", "z_star")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise InvalidMode(f"mode must be one of {MODES}, got {mode!r}")


def build_zzstar(params: DomainParams, trunc: Truncation, mode: str = "exact") -> OperatorMatrix:
    """Truncation of z z*.

    Exact mode restricts the infinite composition to the window: identity
    on E_n (n>=1), r1^2 (resp. r^2) on the F block, and for the pants a
    tridiagonal coupling of E_0 (playing the role of G_0) with the G
    chain: diagonal a^2+r2^2 (r1^2+r2^2 at the E_0 corner), off-diagonal
    a*r2.
    """
    _check_mode(mode)
    index = enumerate_basis(params, trunc)
    if mode == "compressed":
        mat = build_z(params, trunc).array @ build_z_star(params, trunc).array
        return _wrap(index, mat, mode, "zzstar")

    dim = index.dim
    mat = np.zeros((dim, dim), dtype=complex)
    kind = params.kind
    for i in range(1, trunc.N + 1):
        mat[i, i] = 1.0  # E_n, n >= 1
    e0 = index.index_of(BasisLabel("E", 0))
    if kind == DISK:
        mat[e0, e0] = 0.0
    elif kind == ANNULUS:
        mat[e0, e0] = params.r ** 2
        blk = index.block("F")
        mat[blk, blk] = params.r ** 2 * np.eye(trunc.N)
    else:
        a, r1, r2 = params.a, params.r1, params.r2
        blk = index.block("F")
        mat[blk, blk] = r1 ** 2 * np.eye(trunc.N)
        # g_0 := e_0 convention routes the G-chain's n=0 slot to E_0
        chain = [e0] + [index.index_of(BasisLabel("G", -k)) for k in range(1, trunc.N + 1)]
        mat[e0, e0] = r1 ** 2 + r2 ** 2
        for k in range(1, len(chain)):
            mat[chain[k], chain[k]] = a ** 2 + r2 ** 2
            mat[chain[k - 1], chain[k]] = a * r2
            mat[chain[k], chain[k - 1]] = a * r2
    return _wrap(index, mat, mode, "zzstar")


def build_zstarz(params: DomainParams, trunc: Truncation, mode: str = "exact") -> OperatorMatrix:
    """Truncation of z* z (exact mode from the infinite composition)."""
    _check_mode(mode)
    index = enumerate_basis(params, trunc)
    if mode == "compressed":
        mat = build_z_star(params, trunc).array @ build_z(params, trunc).array
        return _wrap(index, mat, mode, "zstarz")

    dim = index.dim
    mat = np.zeros((dim, dim), dtype=complex)
    kind = params.kind
    for i in range(trunc.N + 1):
        mat[i, i] = 1.0  # E_n, all n >= 0
    if kind == ANNULUS:
        blk = index.block("F")
        mat[blk, blk] = params.r ** 2 * np.eye(trunc.N)
    elif kind == PANTS:
        a, r1, r2 = params.a, params.r1, params.r2
        blk = index.block("F")
        mat[blk, blk] = r1 ** 2 * np.eye(trunc.N)
        f1 = index.index_of(BasisLabel("F", -1))
        g = [index.index_of(BasisLabel("G", -k)) for k in range(1, trunc.N + 1)]
        mat[f1, g[0]] = r1 * r2
        mat[g[0], f1] = r1 * r2
        for k in range(len(g)):
            mat[g[k], g[k]] = a ** 2 + r2 ** 2
            if k + 1 < len(g):
                mat[g[k], g[k + 1]] = a * r2
                mat[g[k + 1], g[k]] = a * r2
    return _wrap(index, mat, mode, "zstarz")


def build_commutator(params: DomainParams, trunc: Truncation, mode: str = "exact") -> OperatorMatrix:
    """Truncation of [z*, z] = z*z - zz*.

    Exact mode places the finite-rank action directly: rank one (disk and
    annulus, supported on E_0) or rank three (pants, supported on
    span{E_0, F_-1, G_-1}).
    """
    _check_mode(mode)
    index = enumerate_basis(params, trunc)
    if mode == "compressed":
        z = build_z(params, trunc).array
        zs = build_z_star(params, trunc).array
        return _wrap(index, zs @ z - z @ zs, mode, "commutator")

    dim = index.dim
    mat = np.zeros((dim, dim), dtype=complex)
    e0 = index.index_of(BasisLabel("E", 0))
    if params.kind == DISK:
        mat[e0, e0] = 1.0
    elif params.kind == ANNULUS:
        mat[e0, e0] = 1.0 - params.r ** 2
    else:
        a, r1, r2 = params.a, params.r1, params.r2
        f1 = index.index_of(BasisLabel("F", -1))
        g1 = index.index_of(BasisLabel("G", -1))
        mat[e0, e0] = 1.0 - r1 ** 2 - r2 ** 2
        mat[g1, e0] = -a * r2
        mat[g1, f1] = r1 * r2
        mat[f1, g1] = r1 * r2
        mat[e0, g1] = -a * r2
    return _wrap(index, mat, mode, "commutator")


# -- small matrices ----------------------------------------------------------


@dataclass(frozen=True)
class SmallMatrixReport:
    """One of the pants construction matrices with its spectral data."""

    which: str
    entries: np.ndarray
    char_poly: tuple  # monic coefficients, highest degree first
    roots: tuple


def _report(which: str, entries: np.ndarray) -> SmallMatrixReport:
    coeffs = np.poly(entries)
    roots = np.roots(coeffs)
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    assert all(abs(np.polyval(coeffs, r)) <= 1e-10 * scale for r in roots)
    return SmallMatrixReport(which, entries, tuple(coeffs), tuple(roots))


def small_matrices(params: DomainParams) -> list[SmallMatrixReport]:
    """The matrices A (commutator on span{E_0,F_-1,G_-1}), C (zPz* on
    span{E_0,G_-1}) and D (z*P_{G_-1}z on span{G_-1,G_-2})."""
    assert params.kind == PANTS
    a, r1, r2 = params.a, params.r1, params.r2
    A = np.array(
        [
            [1.0 - r1 ** 2 - r2 ** 2, 0.0, -a * r2],
            [0.0, 0.0, r1 * r2],
            [-a * r2, r1 * r2, 0.0],
        ]
    )
    C = np.array([[r1 ** 2 + r2 ** 2, a * r2], [a * r2, a ** 2]])
    D = np.array([[a ** 2, a * r2], [a * r2, r2 ** 2]])
    reports = [_report("A", A), _report("C", C), _report("D", D)]
    rA = [r for r in reports[0].roots]
    assert min(abs(r) for r in rA) > 1e-14
    pC = reports[1].char_poly
    assert abs(np.polyval(pC, 0.0)) > 1e-14 and abs(np.polyval(pC, 1.0)) > 1e-14
    rD = sorted(reports[2].roots, key=abs)
    assert abs(rD[0]) <= 1e-12 and abs(rD[1] - (a ** 2 + r2 ** 2)) <= 1e-12
    return reports


# -- matrix dumps ------------------------------------------------------------


def dump_dense_csv(op: OperatorMatrix, path: str | Path) -> None:
    """Row-major dense CSV with "re,im" cells."""
    mat = op.array
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in mat:
            writer.writerow([f"{v.real:.17g},{v.imag:.17g}" for v in row])


def dump_triplets(op: OperatorMatrix, path: str | Path) -> None:
    """Sparse triplet text format, one "row col re im" line per nonzero."""
    mat = sp.coo_matrix(op.entries)
    lines = sorted(zip(mat.row, mat.col, mat.data))
    with open(path, "w") as fh:
        for i, j, v in lines:
            fh.write(f"{i} {j} {v.real:.17g} {v.imag:.17g}\n")
