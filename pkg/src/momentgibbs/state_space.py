"""Finite state sets with vector-valued energies, plus observables and covectors.

A state set is an ordered list of N distinct points in R^n; the point of state
i is its energy vector. Covectors live in the dual space and pair with points
through the ordinary dot product. Everything here is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DuplicatePoint, EmptyStateSet, LengthMismatch

# Singular values below RANK_TOL * max(largest singular value, 1) count as zero
# when computing the affine dimension.
RANK_TOL = 1e-9

_JSON_KEYS = {"dim", "points", "labels"}


def _points_matrix(points, dim: int) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != dim:
            raise DimensionMismatch(
                f"points array has shape {arr.shape}, expected (N, {dim})"
            )
        if arr.shape[0] == 0:
            raise EmptyStateSet("state set must contain at least one point")
        return arr.copy()
    rows = list(points)
    if not rows:
        raise EmptyStateSet("state set must contain at least one point")
    for i, row in enumerate(rows):
        if np.ndim(row) != 1 or len(row) != dim:
            raise DimensionMismatch(f"point {i} has {np.size(row)} coordinates, expected {dim}")
    return np.array(rows, dtype=float)


@dataclass(frozen=True)
class StateSet:
    """Ordered set of N distinct energy points in R^dim.

    `affine_dim` (the dimension of the affine span) is computed once at
    construction; `is_lattice` records whether every input coordinate was an
    integer. Points are stored as float64 exactly as given.
    """

    dim: int
    points: np.ndarray
    labels: tuple[str, ...] | None = None
    affine_dim: int = field(init=False)
    is_lattice: bool = field(init=False)

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        pts = _points_matrix(self.points, self.dim)
        if not np.all(np.isfinite(pts)):
            bad = int(np.flatnonzero(~np.isfinite(pts).all(axis=1))[0])
            raise ValueError(f"point {bad} has non-finite coordinates")
        _check_distinct(pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != pts.shape[0]:
                raise LengthMismatch(
                    f"{len(labels)} labels for {pts.shape[0]} states"
                )
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct")
            object.__setattr__(self, "labels", labels)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "affine_dim", _affine_rank(pts))
        object.__setattr__(self, "is_lattice", bool(np.all(pts == np.rint(pts))))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def n_states(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class Observable:
    """A real-valued function on the states, stored as one value per state."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("observable values must form a nonempty vector")
        if not np.all(np.isfinite(vals)):
            raise ValueError("observable values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class CoVector:
    """Inverse-temperature vector in the dual space; pairs with points by dot
    product."""

    components: np.ndarray

    def __post_init__(self):
        comp = np.atleast_1d(np.asarray(self.components, dtype=float))
        if comp.ndim != 1 or comp.size < 1:
            raise ValueError("covector needs at least one component")
        if not np.all(np.isfinite(comp)):
            raise ValueError("covector components must be finite")
        comp = comp.copy()
        comp.setflags(write=False)
        object.__setattr__(self, "components", comp)

    def __len__(self) -> int:
        return self.components.shape[0]

    def pairing(self, point) -> float:
        """(beta, omega) = sum_i beta_i * omega_i."""
        p = np.atleast_1d(np.asarray(point, dtype=float))
        if p.shape != self.components.shape:
            raise DimensionMismatch(
                f"point has {p.shape[0]} coordinates, covector has {self.components.shape[0]}"
            )
        return float(self.components @ p)


def _check_distinct(pts: np.ndarray) -> None:
    order = np.lexsort(pts.T[::-1])
    sorted_pts = pts[order]
    same = np.all(sorted_pts[1:] == sorted_pts[:-1], axis=1)
    if np.any(same):
        k = int(np.flatnonzero(same)[0])
        i, j = sorted((int(order[k]), int(order[k + 1])))
        raise DuplicatePoint(f"points {i} and {j} are identical")


def _affine_rank(pts: np.ndarray) -> int:
    diffs = pts - pts[0]
    s = np.linalg.svd(diffs, compute_uv=False)
    if s.size == 0:
        return 0
    tol = RANK_TOL * max(float(s[0]), 1.0)
    return int(np.sum(s > tol))


def new_state_set(dim: int, points, labels=None) -> StateSet:
    """Validate and build a StateSet; see the class for the invariants."""
    return StateSet(dim, points, labels)


def affine_dim(A: StateSet) -> int:
    """Dimension of the affine span of the points (cached at construction)."""
    return A.affine_dim


def affine_frame(A: StateSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal frame of the affine span.

    Returns (origin, span, complement): `origin` is the first point, `span`
    is n x d with columns spanning the centered point directions, and
    `complement` is n x (n-d) with columns spanning the annihilator. Uses the
    same rank tolerance as `affine_dim`, so the split is consistent with the
    cached value.
    """
    diffs = A.points - A.points[0]
    _, _, vh = np.linalg.svd(diffs, full_matrices=True)
    d = A.affine_dim
    return A.points[0].copy(), vh[:d].T.copy(), vh[d:].T.copy()


def covector_array(beta, dim: int) -> np.ndarray:
    """Coerce a CoVector or array-like into a validated (dim,) float array."""
    if isinstance(beta, CoVector):
        comp = beta.components
    else:
        comp = np.atleast_1d(np.asarray(beta, dtype=float))
    if comp.ndim != 1 or comp.shape[0] != dim:
        raise DimensionMismatch(f"covector has {comp.size} components, expected {dim}")
    if not np.all(np.isfinite(comp)):
        raise ValueError("covector components must be finite")
    return np.asarray(comp, dtype=float)


def point_array(x, dim: int) -> np.ndarray:
    """Coerce a point (array-like or scalar for dim 1) into a (dim,) array."""
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.ndim != 1 or p.shape[0] != dim:
        raise DimensionMismatch(f"point has {p.size} coordinates, expected {dim}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def state_set_from_json(doc) -> StateSet:
    """Build a StateSet from the CLI JSON document.

    Schema: {"dim": n, "points": [[...n reals...], ...], "labels": [...]?}.
    Unknown keys are rejected.
    """
    if not isinstance(doc, dict):
        raise ValueError("state set document must be a JSON object")
    unknown = sorted(set(doc) - _JSON_KEYS)
    if unknown:
        raise ValueError(f"unknown keys in state set document: {unknown}")
    for key in ("dim", "points"):
        if key not in doc:
            raise ValueError(f"state set document is missing {key!r}")
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise ValueError("dim must be an integer")
    points = doc["points"]
    if not isinstance(points, list):
        raise ValueError("points must be a list of coordinate lists")
    for i, row in enumerate(points):
        if not isinstance(row, list):
            raise ValueError(f"point {i} must be a list of numbers")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValueError(f"point {i} contains a non-numeric entry")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise ValueError("labels must be a list of strings")
    return new_state_set(dim, points, labels)


def state_set_to_json(A: StateSet) -> dict:
    """Inverse of `state_set_from_json` (labels emitted only when present)."""
    doc = {"dim": A.dim, "points": [[float(v) for v in row] for row in A.points]}
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    return doc
