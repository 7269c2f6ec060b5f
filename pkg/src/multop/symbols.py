"""Trigonometric polynomials on the circle, noncommutative operator words,
and the boundary symbol map.

The symbol map sends z to the triple of boundary functions
(zeta, r1*zeta, r2*zeta + a) and z* to the conjugate triple, and extends
multiplicatively and linearly; it realizes the quotient of the operator
algebra by the compacts as three copies of C(S^1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domains import ANNULUS, DISK, PANTS, DomainParams
from .errors import DegreeGuard

MAX_WORD_DEGREE = 20


class TrigPoly:
    """A finite trigonometric polynomial sum_d c_d zeta^d on |zeta| = 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {
            int(d): complex(c) for d, c in (coeffs or {}).items() if c != 0
        }

    @classmethod
    def constant(cls, c: complex) -> "TrigPoly":
        return cls({0: c})

    @classmethod
    def zeta(cls) -> "TrigPoly":
        return cls({1: 1.0})

    def coeff(self, d: int) -> complex:
        return self.coeffs.get(d, 0.0 + 0.0j)

    @property
    def degree(self) -> int:
        return max((abs(d) for d in self.coeffs), default=0)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0.0) + c
        return TrigPoly(out)

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        out: dict[int, complex] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0.0) + c1 * c2
        return TrigPoly(out)

    def scale(self, c: complex) -> "TrigPoly":
        return TrigPoly({d: c * v for d, v in self.coeffs.items()})

    def conj(self) -> "TrigPoly":
        """Pointwise complex conjugate on the circle (d -> -d)."""
        return TrigPoly({-d: v.conjugate() for d, v in self.coeffs.items()})

    def __call__(self, zeta: complex) -> complex:
        return sum(c * zeta ** d for d, c in self.coeffs.items())

    def terms(self) -> list[tuple[int, complex]]:
        return sorted(self.coeffs.items())

    def distance(self, other: "TrigPoly") -> float:
        degs = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coeff(d) - other.coeff(d)) for d in degs), default=0.0)

    def __repr__(self) -> str:
        return f"TrigPoly({self.coeffs!r})"


@dataclass(frozen=True)
class SymbolTriple:
    """Boundary symbols on the outer circle and the two hole circles."""

    phi1: TrigPoly
    phi2: TrigPoly
    phi3: TrigPoly

    def distance(self, other: "SymbolTriple") -> float:
        return max(
            self.phi1.distance(other.phi1),
            self.phi2.distance(other.phi2),
            self.phi3.distance(other.phi3),
        )


@dataclass(frozen=True)
class OperatorWord:
    """A noncommutative polynomial in the letters z and z*.

    ``terms`` is a tuple of (weight, letters) with letters a tuple of
    "z" / "z*" strings.
    """

    terms: tuple = ()

    @classmethod
    def z(cls) -> "OperatorWord":
        return cls(((1.0 + 0.0j, ("z",)),))

    @classmethod
    def z_star(cls) -> "OperatorWord":
        return cls(((1.0 + 0.0j, ("z*",)),))

    @classmethod
    def identity(cls) -> "OperatorWord":
        return cls(((1.0 + 0.0j, ()),))

    @property
    def degree(self) -> int:
        return max((len(ls) for _, ls in self.terms), default=0)

    def _guard(self) -> None:
        if self.degree > MAX_WORD_DEGREE:
            raise DegreeGuard(f"word degree {self.degree} exceeds {MAX_WORD_DEGREE}")

    def __add__(self, other: "OperatorWord") -> "OperatorWord":
        return OperatorWord(self.terms + other.terms)

    def __sub__(self, other: "OperatorWord") -> "OperatorWord":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "OperatorWord":
        return OperatorWord(tuple((complex(c) * w, ls) for w, ls in self.terms))

    def __mul__(self, other: "OperatorWord") -> "OperatorWord":
        out = tuple(
            (w1 * w2, ls1 + ls2)
            for w1, ls1 in self.terms
            for w2, ls2 in other.terms
        )
        word = OperatorWord(out)
        word._guard()
        return word

    def star(self) -> "OperatorWord":
        flip = {"z": "z*", "z*": "z"}
        return OperatorWord(
            tuple(
                (w.conjugate(), tuple(flip[l] for l in reversed(ls)))
                for w, ls in self.terms
            )
        )

    def evaluate(self, z_mat: np.ndarray, z_star_mat: np.ndarray) -> np.ndarray:
        """The word applied to concrete (truncated) matrices."""
        self._guard()
        dim = z_mat.shape[0]
        letters = {"z": z_mat, "z*": z_star_mat}
        out = np.zeros((dim, dim), dtype=complex)
        for w, ls in self.terms:
            term = np.eye(dim, dtype=complex)
            for l in ls:
                term = term @ letters[l]
            out += w * term
        return out


def _letter_symbols(params: DomainParams) -> dict:
    zeta = TrigPoly.zeta()
    zero = TrigPoly()
    if params.kind == DISK:
        z_sym = SymbolTriple(zeta, zero, zero)
    elif params.kind == ANNULUS:
        z_sym = SymbolTriple(zeta, zeta.scale(params.r), zero)
    else:
        z_sym = SymbolTriple(
            zeta,
            zeta.scale(params.r1),
            zeta.scale(params.r2) + TrigPoly.constant(params.a),
        )
    zs_sym = SymbolTriple(z_sym.phi1.conj(), z_sym.phi2.conj(), z_sym.phi3.conj())
    return {"z": z_sym, "z*": zs_sym}


def symbol_of(word: OperatorWord, params: DomainParams) -> SymbolTriple:
    """Image of an operator word under the boundary symbol map."""
    word._guard()
    letter_syms = _letter_symbols(params)
    one = TrigPoly.constant(1.0)
    acc = [TrigPoly(), TrigPoly(), TrigPoly()]
    for w, ls in word.terms:
        slots = [one, one, one]
        for l in ls:
            sym = letter_syms[l]
            slots = [
                slots[0] * sym.phi1,
                slots[1] * sym.phi2,
                slots[2] * sym.phi3,
            ]
        acc = [acc[i] + slots[i].scale(w) for i in range(3)]
    return SymbolTriple(*acc)
