"""Domain parameters and the canonical truncated basis enumeration.

Three domains are supported: the closed unit disk, the annulus
``r <= |zeta| <= 1``, and the pair of pants -- the unit disk with a hole
of radius ``r1`` at the origin and a hole of radius ``r2`` centered at
``a`` on the real axis.

The coefficient model uses three monomial families:

* ``E_n = zeta**n`` for ``n >= 0`` (all domains),
* ``F_n = (zeta/r1)**n`` for ``n <= -1`` (annulus and pants),
* ``G_n = ((zeta-a)/r2)**n`` for ``n <= -1`` (pants only).

A truncation keeps ``E_0..E_N`` and ``F_-1..F_-N`` / ``G_-1..G_-N``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConstraintViolation

DISK = "disk"
ANNULUS = "annulus"
PANTS = "pants"

KINDS = (DISK, ANNULUS, PANTS)


@dataclass(frozen=True)
class DomainParams:
    """Which domain and its geometry.

    ``r`` is the annulus inner radius; ``a``, ``r1``, ``r2`` are the pants
    hole center and the two hole radii.
    """

    kind: str
    r: Optional[float] = None
    a: Optional[float] = None
    r1: Optional[float] = None
    r2: Optional[float] = None

    def families(self) -> tuple[str, ...]:
        if self.kind == DISK:
            return ("E",)
        if self.kind == ANNULUS:
            return ("E", "F")
        return ("E", "F", "G")


def disk() -> DomainParams:
    return DomainParams(kind=DISK)


def annulus(r: float) -> DomainParams:
    return DomainParams(kind=ANNULUS, r=r)


def pants(a: float, r1: float, r2: float) -> DomainParams:
    return DomainParams(kind=PANTS, a=a, r1=r1, r2=r2)


def validate(params: DomainParams) -> None:
    """Raise ConstraintViolation naming the first violated inequality."""
    if params.kind not in KINDS:
        raise ConstraintViolation(f"unknown kind {params.kind!r}")
    if params.kind == DISK:
        return
    if params.kind == ANNULUS:
        if params.r is None or not 0.0 < params.r < 1.0:
            raise ConstraintViolation(f"0 < r < 1 violated (r={params.r})")
        return
    a, r1, r2 = params.a, params.r1, params.r2
    if a is None or r1 is None or r2 is None:
        raise ConstraintViolation("pants requires a, r1 and r2")
    if r1 <= 0.0:
        raise ConstraintViolation(f"r1 > 0 violated (r1={r1})")
    if r2 <= 0.0:
        raise ConstraintViolation(f"r2 > 0 violated (r2={r2})")
    if not 0.0 < a < 1.0:
        raise ConstraintViolation(f"0 < a < 1 violated (a={a})")
    if not a + r2 < 1.0:
        raise ConstraintViolation(f"a + r2 < 1 violated (a+r2={a + r2})")
    if not r1 + r2 < a:
        raise ConstraintViolation(f"r1 + r2 < a violated (r1+r2={r1 + r2}, a={a})")


@dataclass(frozen=True, order=True)
class BasisLabel:
    """A single truncated basis vector: family E, F or G and its index."""

    family: str
    n: int


@dataclass(frozen=True)
class Truncation:
    """Keep E_0..E_N and, where present, F_-1..F_-N and G_-1..G_-N."""

    N: int

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ConstraintViolation(f"N >= 2 violated (N={self.N})")


@dataclass(frozen=True)
class BasisIndex:
    """Canonical ordered enumeration of the truncated basis.

    Order is the E block ascending, then the F block descending from -1,
    then the G block descending from -1, so every family occupies a
    contiguous index range.
    """

    params: DomainParams
    trunc: Truncation
    order: tuple[BasisLabel, ...]
    _pos: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_pos", {label: i for i, label in enumerate(self.order)}
        )

    @property
    def dim(self) -> int:
        return len(self.order)

    def index_of(self, label: BasisLabel) -> int:
        return self._pos[label]

    def __contains__(self, label: BasisLabel) -> bool:
        return label in self._pos

    def label_of(self, i: int) -> BasisLabel:
        return self.order[i]

    def block(self, family: str) -> slice:
        """Contiguous index range of one family."""
        N = self.trunc.N
        fams = self.params.families()
        if family not in fams:
            raise KeyError(family)
        if family == "E":
            return slice(0, N + 1)
        if family == "F":
            return slice(N + 1, 2 * N + 1)
        return slice(2 * N + 1, 3 * N + 1)


def enumerate_basis(params: DomainParams, trunc: Truncation) -> BasisIndex:
    validate(params)
    N = trunc.N
    order = [BasisLabel("E", n) for n in range(N + 1)]
    if params.kind in (ANNULUS, PANTS):
        order += [BasisLabel("F", -n) for n in range(1, N + 1)]
    if params.kind == PANTS:
        order += [BasisLabel("G", -n) for n in range(1, N + 1)]
    return BasisIndex(params=params, trunc=trunc, order=tuple(order))


# -- config loading ----------------------------------------------------------

_PARAM_KEYS = ("kind", "a", "r1", "r2", "r", "N")


def params_from_mapping(cfg: dict) -> tuple[DomainParams, Truncation]:
    """Build and validate (DomainParams, Truncation) from config keys.

    Recognized keys: "kind", "a", "r1", "r2", "r", "N".
    """
    unknown = set(cfg) - set(_PARAM_KEYS)
    if unknown:
        raise ConstraintViolation(f"unknown config key(s): {sorted(unknown)}")
    if "kind" not in cfg:
        raise ConstraintViolation("missing config key: kind")
    params = DomainParams(
        kind=cfg["kind"],
        r=cfg.get("r"),
        a=cfg.get("a"),
        r1=cfg.get("r1"),
        r2=cfg.get("r2"),
    )
    validate(params)
    if "N" not in cfg:
        raise ConstraintViolation("missing config key: N")
    return params, Truncation(N=int(cfg["N"]))


def load_config(path: str | Path) -> tuple[DomainParams, Truncation]:
    """Read a JSON or TOML config file with the keys above."""
    path = Path(path)
    if path.suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib

        cfg = tomllib.loads(path.read_text())
    else:
        cfg = json.loads(path.read_text())
    return params_from_mapping(cfg)
