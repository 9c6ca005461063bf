"""Range of a qubit POVM: the set of output distributions it can produce.

A distribution ``q`` is reachable iff the kernel part of ``q - t`` vanishes
and ``(q - t)^T Q^+ (q - t) <= 1`` where ``Q = S S^T``. Geometrically the
range is an ellipsoid, ellipse, segment or point centred on ``t``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotOutside
from .linalg import EigenDecomposition, fix_signs, pinv_sym
from .povm import Povm

DEFAULT_TOL = 1e-9
DEFAULT_RANK_TOL = 1e-10


class Region(str, enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class Status(str, enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE_AFFINE = "outside-affine"
    OUTSIDE_ELLIPSOID = "outside-ellipsoid"

    @property
    def region(self) -> Region:
        if self in (Status.OUTSIDE_AFFINE, Status.OUTSIDE_ELLIPSOID):
            return Region.OUTSIDE
        return Region(self.value)

    @property
    def compatible(self) -> bool:
        return self.region is not Region.OUTSIDE


class Degeneracy(str, enum.Enum):
    POINT = "point"
    SEGMENT = "segment"
    ELLIPSE = "ellipse"
    ELLIPSOID = "ellipsoid"


_DEGENERACY_BY_RANK = (Degeneracy.POINT, Degeneracy.SEGMENT, Degeneracy.ELLIPSE, Degeneracy.ELLIPSOID)


@dataclass(frozen=True, eq=False)
class RangeModel:
    povm: Povm
    t: np.ndarray
    S: np.ndarray
    Q: np.ndarray
    Q_pinv: np.ndarray
    kernel_projector: np.ndarray
    rank_Q: int
    eig: EigenDecomposition
    # outcome permutation used for every floating-point reduction, so results
    # do not depend on how the outcomes happen to be labelled
    order: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    @property
    def n(self) -> int:
        return self.t.size

    def _canonical(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_canon")
        if cached is None:
            ix = np.ix_(self.order, self.order)
            cached = (self.Q_pinv[ix].copy(), self.kernel_projector[ix].copy())
            object.__setattr__(self, "_canon", cached)
        return cached

    def residual_and_quad(self, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Kernel residual norms and quadratic forms for displacement rows ``d``."""
        pinv_c, kernel_c = self._canonical()
        dc = np.atleast_2d(d)[:, self.order]
        residuals = np.linalg.norm(dc @ kernel_c, axis=1)
        quads = np.einsum("ij,jk,ik->i", dc, pinv_c, dc)
        return residuals, quads


@dataclass(frozen=True, eq=False)
class Verdict:
    status: Status
    equality_residual: float
    quad_form: float
    witness: np.ndarray | None = None
    witness_gap: float | None = None

    @property
    def compatible(self) -> bool:
        return self.status.compatible


@dataclass(frozen=True, eq=False)
class SemiAxis:
    length: float
    direction: np.ndarray


@dataclass(frozen=True, eq=False)
class AffineConstraint:
    normal: np.ndarray
    offset: float


@dataclass(frozen=True, eq=False)
class EllipsoidGeometry:
    center: np.ndarray
    semi_axes: list[SemiAxis]
    degeneracy: Degeneracy
    affine_constraints: list[AffineConstraint]
    # reachable interval of each q_y is center_y +- half_width_y
    coordinate_half_widths: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.setflags(write=False)


def canonical_order(t: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Lexicographic order of the rows ``(t_y, s_y)``; identical rows are interchangeable."""
    return np.lexsort(np.column_stack([t, S]).T[::-1])


def build_range_model(p: Povm, rank_tol: float = DEFAULT_RANK_TOL) -> RangeModel:
    t = p.t
    S = p.S
    order = canonical_order(t, S)
    inverse = np.argsort(order)
    Sc = S[order]
    Qc = Sc @ Sc.T
    pi = pinv_sym(0.5 * (Qc + Qc.T), rel_tol=rank_tol)
    back = np.ix_(inverse, inverse)
    Q = S @ S.T
    Q = 0.5 * (Q + Q.T)
    eig = EigenDecomposition(pi.eig.eigenvalues, fix_signs(pi.eig.eigenvectors[inverse]))
    model = RangeModel(
        povm=p,
        t=t,
        S=S,
        Q=Q,
        Q_pinv=pi.pinv[back],
        kernel_projector=pi.kernel_projector[back],
        rank_Q=pi.rank,
        eig=eig,
        order=order,
    )
    _freeze(t, S, Q, model.Q_pinv, model.kernel_projector, order)
    return model


def _displacement(m: RangeModel, q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != m.n:
        raise DimensionMismatch(f"distribution has {q.shape[-1]} entries, POVM has {m.n} outcomes")
    return q - m.t


def _status(residual: float, quad: float, tol: float) -> Status:
    if residual > tol:
        return Status.OUTSIDE_AFFINE
    if quad > 1.0 + tol:
        return Status.OUTSIDE_ELLIPSOID
    if abs(quad - 1.0) <= tol:
        return Status.BOUNDARY
    return Status.INSIDE


def membership(m: RangeModel, q, tol: float = DEFAULT_TOL, with_witness: bool = True) -> Verdict:
    """Decide whether ``q`` is an output distribution of the model's POVM.

    The affine test takes precedence: ``Q^+`` cannot see kernel components, so
    a point violating a linear dependency is reported as ``OUTSIDE_AFFINE``
    even if its quadratic form also exceeds one. Outside points carry a
    separating witness unless ``with_witness`` is false.
    """
    d = _displacement(m, q)
    if d.ndim != 1:
        raise DimensionMismatch("membership expects a single distribution")
    residuals, quads = m.residual_and_quad(d)
    residual, quad = float(residuals[0]), float(quads[0])
    status = _status(residual, quad, tol)
    if status.compatible or not with_witness:
        return Verdict(status, residual, quad)
    w, gap = _witness_for(m, d, status)
    return Verdict(status, residual, quad, w, gap)


def classify(m: RangeModel, qs, tol: float = DEFAULT_TOL) -> tuple[list[Status], np.ndarray, np.ndarray]:
    """Vectorized membership over the rows of ``qs``; returns statuses, residuals, quad forms."""
    residuals, quads = m.residual_and_quad(_displacement(m, qs))
    statuses = [_status(float(r), float(v), tol) for r, v in zip(residuals, quads)]
    return statuses, residuals, quads


def _witness_for(m: RangeModel, d: np.ndarray, status: Status) -> tuple[np.ndarray, float]:
    from .witness import witness_threshold

    if status is Status.OUTSIDE_AFFINE:
        pd = m.kernel_projector @ d
        w = pd / float(d @ pd)
    else:
        qd = m.Q_pinv @ d
        w = qd / float(d @ qd)
    q = m.t + d
    gap = float(w @ q) - witness_threshold(m.povm, w)
    return w, gap


def optimal_witness(m: RangeModel, q, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Separating witness for an incompatible ``q`` and its gap ``w.q - W(pi, w) > 0``.

    Kernel violations use the normalized kernel component of ``q - t``;
    ellipsoid violations use ``Q^+ (q - t)`` normalized by the quadratic form.
    Compatible points (including boundary points) have no strictly separating
    witness and are rejected.
    """
    verdict = membership(m, q, tol, with_witness=False)
    if verdict.compatible:
        raise NotOutside(f"distribution is {verdict.status.value}; no separating witness exists")
    return _witness_for(m, _displacement(m, q), verdict.status)


def geometry(m: RangeModel) -> EllipsoidGeometry:
    r = m.rank_Q
    values = m.eig.eigenvalues
    vectors = m.eig.eigenvectors
    axes = [SemiAxis(float(np.sqrt(values[k])), vectors[:, k].copy()) for k in range(r)]
    constraints = [
        AffineConstraint(vectors[:, k].copy(), float(vectors[:, k] @ m.t)) for k in range(r, m.n)
    ]
    return EllipsoidGeometry(
        center=m.t.copy(),
        semi_axes=axes,
        degeneracy=_DEGENERACY_BY_RANK[min(r, 3)],
        affine_constraints=constraints,
        coordinate_half_widths=np.sqrt(np.clip(np.diag(m.Q), 0.0, None)),
    )


def boundary_points(
    m: RangeModel, ellipse_points: int = 360, sphere_grid: tuple[int, int] = (64, 32)
) -> np.ndarray:
    """Sample the boundary surface of the range, one distribution per row.

    Rank 1 gives the two segment endpoints, rank 2 a closed ellipse, rank 3 a
    UV sphere mapped through the semi-axes. Rank 0 returns the centre alone.
    """
    g = geometry(m)
    axes = np.array([a.length * a.direction for a in g.semi_axes]).reshape(-1, m.n)
    if m.rank_Q == 0:
        return g.center[None, :]
    if m.rank_Q == 1:
        return np.stack([g.center + axes[0], g.center - axes[0]])
    if m.rank_Q == 2:
        phi = 2.0 * np.pi * np.arange(ellipse_points) / ellipse_points
        coeffs = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        return g.center + coeffs @ axes
    n_phi, n_theta = sphere_grid
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    theta = np.pi * (np.arange(n_theta) + 0.5) / n_theta
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    coeffs = np.stack(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
    ).reshape(-1, 3)
    return g.center + coeffs @ axes
