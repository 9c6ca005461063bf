"""Independent ground truth built on states rather than on ``Q``.

``q`` is reachable iff some Bloch vector ``r`` with ``|r| <= 1`` solves
``S r = q - t``. Nothing here touches ``Q``, its pseudoinverse, or the
closed-form range test, so agreement between the two is a real check.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DegenerateDraw, DimensionMismatch, InvalidArity
from .povm import MAX_OUTCOMES, Povm, effect_from_matrix, validate_povm
from .range_model import DEFAULT_TOL, Region

# singular values of S are square roots of the eigenvalues of Q, so this
# cutoff mirrors the default relative rank tolerance used on Q
S_RCOND = 1e-5
MAX_DRAWS = 100


class SamplingMode(str, enum.Enum):
    PURE_FIBONACCI = "pure"
    MIXED_UNIFORM = "mixed"


def min_norm_state(p: Povm, q) -> tuple[np.ndarray, float]:
    """Minimum-norm Bloch vector solving ``S r = q - t`` and the residual norm."""
    q = np.asarray(q, dtype=float)
    if q.shape != (p.n,):
        raise DimensionMismatch(f"distribution has shape {q.shape}, POVM has {p.n} outcomes")
    S = p.S
    d = q - p.t
    r = np.linalg.pinv(S, rcond=S_RCOND) @ d
    return r, float(np.linalg.norm(S @ r - d))


def feasibility_membership(p: Povm, q, tol: float = DEFAULT_TOL) -> Region:
    r, residual = min_norm_state(p, q)
    if residual > tol:
        return Region.OUTSIDE
    norm = float(np.linalg.norm(r))
    if abs(norm - 1.0) <= tol:
        return Region.BOUNDARY
    return Region.INSIDE if norm < 1.0 else Region.OUTSIDE


def fibonacci_sphere(count: int) -> np.ndarray:
    """Near-uniform unit vectors on the sphere (golden-angle spiral)."""
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * np.arange(count)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def great_circle(count: int, normal=(0.0, 1.0, 0.0)) -> np.ndarray:
    """Evenly spaced unit vectors on the great circle orthogonal to ``normal``."""
    normal = np.asarray(normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    seed = np.eye(3)[int(np.argmin(np.abs(normal)))]
    a = np.cross(normal, seed)
    a /= np.linalg.norm(a)
    b = np.cross(normal, a)
    phi = 2.0 * np.pi * np.arange(count) / count
    return np.outer(np.cos(phi), a) + np.outer(np.sin(phi), b)


def uniform_ball(count: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((count, 3))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * rng.random(count)[:, None] ** (1.0 / 3.0)


def distributions(p: Povm, states) -> np.ndarray:
    """``q_y = t_y + s_y . r`` for every Bloch vector ``r`` (one per row)."""
    return p.t + np.atleast_2d(states) @ p.S.T


def sample_distributions(
    p: Povm, count: int, mode: SamplingMode | str = SamplingMode.PURE_FIBONACCI, seed: int = 0
) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be at least 1")
    mode = SamplingMode(mode)
    if mode is SamplingMode.PURE_FIBONACCI:
        states = fibonacci_sphere(count)
    else:
        states = uniform_ball(count, np.random.default_rng(seed))
    return distributions(p, states)


def _random_effect(rng: np.random.Generator) -> np.ndarray:
    rank = int(rng.integers(1, 3))
    g = rng.standard_normal((2, rank)) + 1j * rng.standard_normal((2, rank))
    return g @ g.conj().T


def _inverse_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v / np.sqrt(w)) @ v.conj().T


def random_povm(n: int, seed: int) -> Povm:
    """Random qubit POVM: draw positive operators and normalize by ``T^{-1/2}``.

    Effects are rank one or two at random, so extreme (projective-like)
    behaviour is represented as well as generic full-rank effects.
    """
    if not 2 <= n <= MAX_OUTCOMES:
        raise InvalidArity(f"n must lie in 2..{MAX_OUTCOMES}, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_DRAWS):
        draws = [_random_effect(rng) for _ in range(n)]
        total = sum(draws)
        if np.linalg.cond(total) > 1e8:
            continue
        root = _inverse_sqrt(total)
        effects = [effect_from_matrix(root @ e @ root) for e in draws]
        return validate_povm(effects, label=f"random-{n}-{seed}")
    raise DegenerateDraw(f"could not draw a non-singular POVM in {MAX_DRAWS} attempts")
