"""Inverts the mean-energy map: find beta whose Gibbs mean hits a target.

The solve minimizes the smooth convex dual

    F(beta) = log_partition(beta) + (beta, target)

whose gradient is target - mean_energy(beta) and whose Hessian is the energy
covariance, by damped Newton with Cholesky steps and Armijo backtracking.
Degenerate point sets (affine span smaller than the ambient space) are first
mapped to orthonormal span coordinates, where the Hessian is positive
definite; the solved beta is lifted back with zero component along the span's
annihilator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.special import xlogy

from .errors import NoConvergence, TargetOnBoundary, TargetOutsideHull
from .polytope import convex_hull, interior_margin
from .state_space import CoVector, StateSet, affine_frame, point_array

# targets closer to the boundary than this (relative to hull diameter) are
# refused: the solution diverges there
_BOUNDARY_REL = 1e-9
_ARMIJO = 1e-4
_MIN_STEP = 1e-14


@dataclass(frozen=True)
class SolveOptions:
    """Knobs for the Newton solve; defaults suit desk-scale problems."""

    grad_tol: float = 1e-10
    max_iter: int = 100
    line_search_shrink: float = 0.5
    regularization_floor: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.grad_tol < 1.0):
            raise ValueError("grad_tol must lie in (0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not (0.0 < self.line_search_shrink < 1.0):
            raise ValueError("line_search_shrink must lie in (0, 1)")
        if self.regularization_floor <= 0.0:
            raise ValueError("regularization_floor must be positive")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a moment inversion.

    `grad_norm` is the infinity norm of target - mean in span coordinates,
    scaled by the hull diameter (the convergence metric). `reduced` is true
    when the points did not affinely span the ambient space; the returned
    beta is then one representative of an affine family (the component along
    the span's annihilator is zero and carries no information).
    """

    beta: CoVector
    iterations: int
    grad_norm: float
    entropy: float
    converged: bool
    reduced: bool


def invert_mean_energy(A: StateSet, target, opts: SolveOptions | None = None) -> SolveReport:
    """Solve mean_energy(A, beta) = target for the unique beta.

    The target must lie strictly inside the hull of the points relative to
    their affine span. Targets outside raise TargetOutsideHull with the
    signed margin; targets within 1e-9 of the boundary (relative to the hull
    diameter) raise TargetOnBoundary, since beta diverges there -- see
    `polytope.tropical_limit` for the limiting face.
    """
    if opts is None:
        opts = SolveOptions()
    t_full = point_array(target, A.dim)
    hull = convex_hull(A)

    if hull.span_equations:
        # same threshold as interior_margin's span check, so that call below
        # can never raise OffAffineSpan past this guard
        off = max(abs(float(eq.normal @ t_full) - eq.offset) for eq in hull.span_equations)
        if off > 1e-9:
            raise TargetOutsideHull(
                -off, f"target is {off:.3g} off the affine span of the states"
            )

    margin = interior_margin(hull, t_full)
    btol = _BOUNDARY_REL * hull.diameter
    if margin < -btol:
        raise TargetOutsideHull(margin)
    if margin <= btol:
        raise TargetOnBoundary(
            margin,
            f"target margin {margin:.3g} is within {btol:.3g} of the hull boundary; "
            "beta diverges there (see polytope.tropical_limit for the limiting face)",
        )

    reduced = A.affine_dim < A.dim
    if reduced:
        origin, span, _ = affine_frame(A)
        pts = (A.points - origin) @ span
        t = span.T @ (t_full - origin)
    else:
        span = None
        pts = A.points
        t = t_full
    d = A.affine_dim

    if d == 0:
        # single state: the only admissible target is the point itself
        return SolveReport(
            beta=CoVector(np.zeros(A.dim)),
            iterations=0,
            grad_norm=0.0,
            entropy=0.0,
            converged=True,
            reduced=reduced,
        )

    scale = hull.diameter
    beta = np.zeros(d)
    log_z, p = _parts(pts, beta)
    iterations = 0
    converged = False
    grad_norm = np.inf

    for _ in range(opts.max_iter):
        mean = p @ pts
        grad = t - mean
        grad_norm = float(np.abs(grad).max()) / scale
        if grad_norm <= opts.grad_tol:
            converged = True
            break
        iterations += 1

        centered = pts - mean
        hess = centered.T @ (centered * p[:, None])
        hess = (hess + hess.T) / 2.0
        step = _newton_step(hess, grad, opts.regularization_floor)

        f0 = log_z + float(beta @ t)
        slope = -float(grad @ step)  # derivative of F along -step; negative
        # near the optimum the predicted decrease falls below the rounding
        # noise of F itself; the slack keeps Armijo from rejecting such steps
        slack = 32.0 * np.finfo(float).eps * (1.0 + abs(f0))
        stride = 1.0
        stalled = False
        while True:
            cand = beta - stride * step
            log_z_c, p_c = _parts(pts, cand)
            if log_z_c + float(cand @ t) <= f0 + _ARMIJO * stride * slope + slack:
                break
            stride *= opts.line_search_shrink
            if stride < _MIN_STEP:
                stalled = True
                break
        if stalled:
            break  # no representable progress left; the raise below reports it
        beta, log_z, p = cand, log_z_c, p_c
    else:
        mean = p @ pts
        grad_norm = float(np.abs(t - mean).max()) / scale
        converged = grad_norm <= opts.grad_tol

    ent = float(-xlogy(p, p).sum() + 0.0)
    beta_full = span @ beta if reduced else beta
    report = SolveReport(
        beta=CoVector(beta_full),
        iterations=iterations,
        grad_norm=grad_norm,
        entropy=ent,
        converged=converged,
        reduced=reduced,
    )
    if not converged:
        raise NoConvergence(
            f"no convergence after {iterations} iterations "
            f"(grad_norm {grad_norm:.3g} > {opts.grad_tol:.3g})",
            report=report,
        )
    return report


def entropy_of_mean(A: StateSet, target, opts: SolveOptions | None = None) -> float:
    """Maximum entropy among distributions whose energy mean equals target.

    This is the entropy of the Gibbs distribution at the solved beta; it also
    equals (beta, target) + log_partition(beta), the convex-duality identity.
    """
    return invert_mean_energy(A, target, opts).entropy


def solve_gradient(A: StateSet, target, opts: SolveOptions | None = None) -> CoVector:
    """The solved beta, read as the gradient of `entropy_of_mean` at target."""
    return invert_mean_energy(A, target, opts).beta


def _parts(pts: np.ndarray, beta: np.ndarray) -> tuple[float, np.ndarray]:
    log_w = -(pts @ beta)
    m = float(log_w.max())
    log_z = m + float(np.log(np.exp(log_w - m).sum()))
    return log_z, np.exp(log_w - log_z)


def _newton_step(hess: np.ndarray, grad: np.ndarray, floor: float) -> np.ndarray:
    """Solve hess @ s = grad, adding a scaled ridge if Cholesky fails."""
    d = hess.shape[0]
    reg = 0.0
    base = floor * max(float(np.trace(hess)) / d, np.finfo(float).tiny)
    for _ in range(40):
        try:
            factor = cho_factor(hess + reg * np.eye(d), lower=True)
            return cho_solve(factor, grad)
        except LinAlgError:
            reg = base if reg == 0.0 else reg * 10.0
    raise LinAlgError("covariance could not be regularized to positive definite")
