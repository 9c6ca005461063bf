"""Qubit POVMs in Bloch form.

Every effect is stored as ``t * 1 + s . sigma`` with ``t = Tr[pi]/2`` and
``s_k = Tr[pi sigma_k]/2``. Matrices only appear at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CompletenessViolation,
    InvalidArity,
    LambdaOutOfRange,
    NotHermitian,
    NotPositive,
    PositivityViolation,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

MAX_OUTCOMES = 16
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Effect:
    t: float
    s: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        s = tuple(float(x) for x in self.s)
        if len(s) != 3:
            raise ValueError(f"Bloch vector must have 3 components, got {len(s)}")
        object.__setattr__(self, "s", s)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.s)

    @property
    def bloch_norm(self) -> float:
        return float(np.linalg.norm(self.s))


@dataclass(frozen=True)
class Povm:
    """An ordered, immutable list of effects.

    Build instances through :func:`validate_povm` so the completeness and
    positivity invariants are checked.
    """

    effects: tuple[Effect, ...]
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))

    @property
    def n(self) -> int:
        return len(self.effects)

    @property
    def t(self) -> np.ndarray:
        return np.array([e.t for e in self.effects])

    @property
    def S(self) -> np.ndarray:
        return np.array([e.s for e in self.effects]).reshape(self.n, 3)

    def matrices(self) -> list[np.ndarray]:
        return [effect_to_matrix(e) for e in self.effects]

    def relabel(self, order: Sequence[int]) -> "Povm":
        return Povm(tuple(self.effects[i] for i in order), self.label)


def effect_from_matrix(m, tol: float = DEFAULT_TOL) -> Effect:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"effect matrix must be 2x2, got {m.shape}")
    anti = 0.5 * (m - m.conj().T)
    if np.max(np.abs(anti)) > tol:
        raise NotHermitian(f"anti-Hermitian part {np.max(np.abs(anti)):.3e} exceeds {tol:g}")
    t = 0.5 * (m[0, 0] + m[1, 1]).real
    # average the off-diagonal pair so tiny asymmetries cancel
    off = 0.5 * (m[0, 1] + np.conj(m[1, 0]))
    s = (off.real, -off.imag, 0.5 * (m[0, 0] - m[1, 1]).real)
    effect = Effect(t, s)
    if effect.bloch_norm > t + tol:
        raise NotPositive(f"effect has |s| = {effect.bloch_norm:.6g} > t = {t:.6g}")
    return effect


def effect_to_matrix(e: Effect) -> np.ndarray:
    sx, sy, sz = e.s
    return np.array(
        [[e.t + sz, sx - 1j * sy], [sx + 1j * sy, e.t - sz]],
        dtype=complex,
    )


def validate_povm(
    effects: Iterable[Effect], label: str | None = None, tol: float = DEFAULT_TOL
) -> Povm:
    """Check arity, per-effect positivity and completeness; return a Povm."""
    effects = tuple(effects)
    n = len(effects)
    if n < 2 or n > MAX_OUTCOMES:
        raise InvalidArity(f"a POVM needs 2..{MAX_OUTCOMES} outcomes, got {n}")
    for i, e in enumerate(effects):
        norm = e.bloch_norm
        if e.t < -tol or e.t > 1.0 + tol:
            raise PositivityViolation(f"effect {i} has t = {e.t:.6g} outside [0, 1]", i)
        if norm > e.t + tol:
            raise PositivityViolation(f"effect {i} is not positive: |s| = {norm:.6g} > t", i)
        if norm > 1.0 - e.t + tol:
            raise PositivityViolation(f"effect {i} exceeds the identity: |s| > 1 - t", i)
    t_sum = sum(e.t for e in effects)
    s_sum = np.sum([e.s for e in effects], axis=0)
    residual = np.concatenate([[t_sum - 1.0], s_sum])
    if np.max(np.abs(residual)) > tol:
        raise CompletenessViolation(
            f"effects do not sum to the identity (residual {residual.tolist()})", residual
        )
    return Povm(effects, label)


def completeness_residual(effects: Sequence[Effect]) -> np.ndarray:
    """``(sum t - 1, sum s)``; all zero for a complete measurement."""
    t_sum = sum(e.t for e in effects)
    s_sum = np.sum([e.s for e in effects], axis=0)
    return np.concatenate([[t_sum - 1.0], s_sum])


def positivity_margins(effects: Sequence[Effect]) -> np.ndarray:
    """Smallest eigenvalue of each effect and of its complement, ``min(t - |s|, 1 - t - |s|)``."""
    return np.array([min(e.t - e.bloch_norm, 1.0 - e.t - e.bloch_norm) for e in effects])


def depolarize(p: Povm, lam: float) -> Povm:
    """Heisenberg-picture depolarizing noise: every Bloch vector shrinks by ``lam``."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {lam}")
    return Povm(tuple(Effect(e.t, tuple(lam * x for x in e.s)) for e in p.effects), p.label)


def povm_from_bloch(t: Sequence[float], S, label: str | None = None, tol: float = DEFAULT_TOL) -> Povm:
    S = np.asarray(S, dtype=float).reshape(len(t), 3)
    return validate_povm((Effect(ty, sy) for ty, sy in zip(t, S)), label=label, tol=tol)


def povm_from_matrices(matrices, label: str | None = None, tol: float = DEFAULT_TOL) -> Povm:
    return validate_povm((effect_from_matrix(m, tol) for m in matrices), label=label, tol=tol)
