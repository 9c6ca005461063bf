"""Named qubit measurements and their closed-form noisy ranges.

The trine and tetrahedron are the real and complex qubit SIC measurements;
the square and octahedron are the real and complex qubit MUB measurements.
Effects are rank one with subnormalized kets, ``<pi_y|pi_y> = N``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LambdaOutOfRange
from .povm import PAULIS, Povm, depolarize, povm_from_matrices
from .range_model import DEFAULT_TOL, Region

_I2 = np.eye(2, dtype=complex)


class CatalogKind(str, enum.Enum):
    TRINE = "trine"
    TETRAHEDRON = "tetrahedron"
    SQUARE_MUB = "square-mub"
    OCTAHEDRON_MUB = "octahedron-mub"

    @property
    def outcomes(self) -> int:
        return _SPEC[self].outcomes


@dataclass(frozen=True)
class _KindSpec:
    outcomes: int
    norm: float  # <pi_y|pi_y>
    overlap: float  # |<pi_y|pi_y'>|^2 / norm^2 for y, y' in different bases
    # ||q||^2 <= (lambda^2 + offset) / scale, rewritten as (scale*||q||^2 - offset)/lambda^2 <= 1
    scale: float
    offset: float
    pair_sum: float | None  # q_{2y} + q_{2y+1} for MUBs


_SPEC = {
    CatalogKind.TRINE: _KindSpec(3, 2.0 / 3.0, 1.0 / 4.0, 6.0, 2.0, None),
    CatalogKind.TETRAHEDRON: _KindSpec(4, 1.0 / 2.0, 1.0 / 3.0, 12.0, 3.0, None),
    CatalogKind.SQUARE_MUB: _KindSpec(4, 1.0 / 2.0, 1.0 / 2.0, 8.0, 2.0, 1.0 / 2.0),
    CatalogKind.OCTAHEDRON_MUB: _KindSpec(6, 1.0 / 3.0, 1.0 / 2.0, 18.0, 3.0, 1.0 / 3.0),
}


def _trine_kets() -> list[np.ndarray]:
    # U = exp(-i pi/3 Y) rotates the Bloch vector by 120 degrees about Y
    u = np.cos(np.pi / 3) * _I2 - 1j * np.sin(np.pi / 3) * PAULIS[1]
    ket = np.array([1.0, 0.0], dtype=complex)
    kets = []
    for _ in range(3):
        kets.append(ket)
        ket = u @ ket
    return kets


def _tetrahedron_kets() -> list[np.ndarray]:
    half = np.arctan(np.sqrt(2.0)) / 2.0
    base = np.array([np.cos(half), np.exp(1j * np.pi / 4) * np.sin(half)])
    return [sigma @ base for sigma in (_I2, *PAULIS)]


def _mub_kets(bases: int) -> list[np.ndarray]:
    r = 1.0 / np.sqrt(2.0)
    pairs = [
        (np.array([1.0, 0.0]), np.array([0.0, 1.0])),  # Z
        (np.array([r, r]), np.array([r, -r])),  # X
        (np.array([r, 1j * r]), np.array([r, -1j * r])),  # Y
    ]
    return [k.astype(complex) for pair in pairs[:bases] for k in pair]


def _kets(kind: CatalogKind) -> list[np.ndarray]:
    spec = _SPEC[kind]
    if kind is CatalogKind.TRINE:
        unit = _trine_kets()
    elif kind is CatalogKind.TETRAHEDRON:
        unit = _tetrahedron_kets()
    elif kind is CatalogKind.SQUARE_MUB:
        unit = _mub_kets(2)
    else:
        unit = _mub_kets(3)
    return [np.sqrt(spec.norm) * k for k in unit]


def check_defining_relations(kind: CatalogKind, atol: float = 1e-12) -> None:
    """Assert ``<pi|pi> = N`` and the cross-overlap ``N^2 C`` for every pair.

    For MUBs, kets in the same basis are orthogonal instead.
    """
    spec = _SPEC[kind]
    kets = _kets(kind)
    for y, a in enumerate(kets):
        for z, b in enumerate(kets):
            value = abs(np.vdot(a, b)) ** 2 if y != z else np.vdot(a, a).real
            if y == z:
                expected = spec.norm
            elif spec.pair_sum is not None and y // 2 == z // 2:
                expected = 0.0
            else:
                expected = spec.norm**2 * spec.overlap
            if abs(value - expected) > atol:
                raise AssertionError(f"{kind.value}: overlap ({y}, {z}) = {value!r}, expected {expected!r}")


def make(kind: CatalogKind | str) -> Povm:
    kind = CatalogKind(kind)
    check_defining_relations(kind)
    matrices = [np.outer(k, k.conj()) for k in _kets(kind)]
    return povm_from_matrices(matrices, label=kind.value)


@dataclass(frozen=True)
class NoisyCatalogPovm:
    kind: CatalogKind
    lam: float
    povm: Povm


def make_noisy(kind: CatalogKind | str, lam: float) -> NoisyCatalogPovm:
    kind = CatalogKind(kind)
    return NoisyCatalogPovm(kind, float(lam), depolarize(make(kind), lam))


def closed_form_quad(kind: CatalogKind, lam: float, q) -> float:
    """The corollary quadratic form ``(scale*||q||^2 - offset) / lambda^2`` (lambda > 0)."""
    spec = _SPEC[CatalogKind(kind)]
    q = np.asarray(q, dtype=float)
    return (spec.scale * float(q @ q) - spec.offset) / lam**2


def affine_residual(kind: CatalogKind, q) -> float:
    """Largest violation of the linear conditions: ``sum q = 1`` (SIC) or pair sums (MUB)."""
    spec = _SPEC[CatalogKind(kind)]
    q = np.asarray(q, dtype=float)
    if spec.pair_sum is None:
        return abs(float(q.sum()) - 1.0)
    return float(np.max(np.abs(q.reshape(-1, 2).sum(axis=1) - spec.pair_sum)))


def closed_form_membership(kind: CatalogKind | str, lam: float, q, tol: float = DEFAULT_TOL) -> Region:
    kind = CatalogKind(kind)
    spec = _SPEC[kind]
    q = np.asarray(q, dtype=float)
    if q.shape != (spec.outcomes,):
        raise DimensionMismatch(f"{kind.value} has {spec.outcomes} outcomes, got q of shape {q.shape}")
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {lam}")
    if affine_residual(kind, q) > tol:
        return Region.OUTSIDE
    if lam == 0.0:
        centre = np.full(spec.outcomes, 1.0 / spec.outcomes)
        return Region.INSIDE if np.linalg.norm(q - centre) <= tol else Region.OUTSIDE
    quad = closed_form_quad(kind, lam, q)
    if quad > 1.0 + tol:
        return Region.OUTSIDE
    if abs(quad - 1.0) <= tol:
        return Region.BOUNDARY
    return Region.INSIDE
