"""Pure-numpy stencil kernels (fallback backend).

Every kernel mirrors the arithmetic expression trees of the compiled
backend (``nambuswe._kernels``) term for term, so the two backends produce
bit-identical results: elementwise ops round the same way as the C scalar
code (which is compiled with FP contraction off), and all reductions run
in sequential index order (``np.cumsum`` accumulates left to right).

Array convention: 2-D C-contiguous float64, shape (ny, nx); axis 1 is x,
axis 0 is y. Boundaries are periodic.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def _xp(f):
    return np.roll(f, -1, 1)


def _xm(f):
    return np.roll(f, 1, 1)


def _yp(f):
    return np.roll(f, -1, 0)


def _ym(f):
    return np.roll(f, 1, 0)


def grid_sum(f: np.ndarray) -> float:
    """Sum of all entries, accumulated in sequential (row-major) order."""
    if f.size == 0:
        return 0.0
    return float(np.cumsum(f)[-1])


def dot_sum(a: np.ndarray, b: np.ndarray) -> float:
    """Sequential-order dot product of two fields."""
    return float(np.cumsum(a * b)[-1])


def ddx(f: np.ndarray, dx: float) -> np.ndarray:
    """Centered x-derivative with periodic wraparound."""
    c = 1.0 / (2.0 * dx)
    return (_xp(f) - _xm(f)) * c


def ddy(f: np.ndarray, dy: float) -> np.ndarray:
    """Centered y-derivative with periodic wraparound."""
    c = 1.0 / (2.0 * dy)
    return (_yp(f) - _ym(f)) * c


def laplacian(f: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Compact 5-point Laplacian in flux (differenced) grouping.

    The grouping ((f_e - f) - (f - f_w)) makes weighted_laplacian with unit
    weight reduce to this operator bit for bit.
    """
    cx = 1.0 / (dx * dx)
    cy = 1.0 / (dy * dy)
    return ((_xp(f) - f) - (f - _xm(f))) * cx + ((_yp(f) - f) - (f - _ym(f))) * cy


def weighted_laplacian(w: np.ndarray, f: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Flux-form div(w grad f) with arithmetic-mean edge weights.

    Exactly self-adjoint, and satisfies sum(q * Aq f) == sum(q^2/2 * lap f)
    through the per-edge factorization (q_i + q_j)(q_j - q_i) = q_j^2 - q_i^2.
    """
    cx = 1.0 / (dx * dx)
    cy = 1.0 / (dy * dy)
    fe = 0.5 * (_xp(w) + w) * (_xp(f) - f)
    fw = 0.5 * (w + _xm(w)) * (f - _xm(f))
    fn = 0.5 * (_yp(w) + w) * (_yp(f) - f)
    fs = 0.5 * (w + _ym(w)) * (f - _ym(f))
    return (fe - fw) * cx + (fn - fs) * cy


def _jacobian_edge_corner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Unscaled J+x form: a at edge neighbors, b at corner neighbors.
    axp = _xp(a)
    axm = _xm(a)
    ayp = _yp(a)
    aym = _ym(a)
    bpp = _yp(_xp(b))
    bpm = _ym(_xp(b))
    bmp = _yp(_xm(b))
    bmm = _ym(_xm(b))
    return (axp * (bpp - bpm) - axm * (bmp - bmm)
            - ayp * (bpp - bmp) + aym * (bpm - bmm))


def arakawa_jacobian(a: np.ndarray, b: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Nine-point Arakawa Jacobian (mean of the J++, J+x, Jx+ forms).

    Jx+ is evaluated as the argument-swapped J+x, so jacobian(a, a) cancels
    to exactly zero and antisymmetry holds up to commutation of products.
    """
    axp = _xp(a)
    axm = _xm(a)
    ayp = _yp(a)
    aym = _ym(a)
    bxp = _xp(b)
    bxm = _xm(b)
    byp = _yp(b)
    bym = _ym(b)
    jpp = (axp - axm) * (byp - bym) - (ayp - aym) * (bxp - bxm)
    jpx = _jacobian_edge_corner(a, b)
    jxp = _jacobian_edge_corner(b, a)
    return (jpp + (jpx - jxp)) * (1.0 / (12.0 * dx * dy))


def poisson_cg(rhs: np.ndarray, dx: float, dy: float, rel_tol: float,
               max_iter: int) -> tuple[np.ndarray, int, float]:
    """Conjugate gradients for lap(x) = rhs on the periodic 5-point stencil.

    The system is solved as (-lap) x = -rhs (symmetric positive
    semidefinite); the constant null space is projected out of the iterate
    every iteration and the returned solution has zero mean. Convergence is
    accepted only after the *recomputed* residual b - A x meets the target.

    Returns (solution, iterations, relative_residual).
    """
    n = float(rhs.size)
    b = -rhs
    b = b - grid_sum(b) / n
    bnorm = np.sqrt(dot_sum(b, b))
    if bnorm == 0.0:
        return np.zeros_like(rhs), 0, 0.0

    x = np.zeros_like(rhs)
    r = b.copy()
    p = r.copy()
    rr = dot_sum(r, r)
    target = rel_tol * bnorm
    rel = np.sqrt(rr) / bnorm
    iters = 0
    while iters < max_iter:
        iters += 1
        ap = -laplacian(p, dx, dy)
        pap = dot_sum(p, ap)
        if pap <= 0.0:
            break
        alpha = rr / pap
        x = x + alpha * p
        x = x - grid_sum(x) / n
        r = r - alpha * ap
        rr_new = dot_sum(r, r)
        if np.sqrt(rr_new) <= target:
            r_true = b - (-laplacian(x, dx, dy))
            rr_true = dot_sum(r_true, r_true)
            rel = np.sqrt(rr_true) / bnorm
            if np.sqrt(rr_true) <= target:
                return x - grid_sum(x) / n, iters, rel
            # Recurrence drifted from the true residual: restart from it.
            r = r_true
            rr = rr_true
            p = r.copy()
            continue
        beta = rr_new / rr
        rr = rr_new
        p = r + beta * p
        rel = np.sqrt(rr) / bnorm

    r_true = b - (-laplacian(x, dx, dy))
    rel = np.sqrt(dot_sum(r_true, r_true)) / bnorm
    return x - grid_sum(x) / n, iters, rel
