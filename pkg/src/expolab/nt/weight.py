"""The fixed smooth bump W on (1/2, 2) and its Fourier transform.

``W(x) = exp(16/9) * exp(-1 / ((x - 1/2)(2 - x)))`` inside the interval and 0
outside; the constant makes ``W(5/4) = 1``.  The transform uses
``W^(y) = int W(x) e(-xy) dx``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy import integrate

from .. import kernels

LEFT, RIGHT = 0.5, 2.0
_LOG_NORM = 16.0 / 9.0

# |W^(y)| is below 1e-17 beyond this frequency; the fixed grid keeps its
# aliasing frequency at least this far above every requested |y|.
ALIAS_MARGIN = 400.0


def bump_weight(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    inside = (x > LEFT) & (x < RIGHT)
    xi = x[inside]
    out[inside] = np.exp(_LOG_NORM - 1.0 / ((xi - LEFT) * (RIGHT - xi)))
    return out if out.ndim else float(out)


class QuadratureError(ArithmeticError):
    def __init__(self, message, achieved):
        super().__init__(message)
        self.achieved = achieved


def bump_fourier(y: float, tol: float = 1e-10) -> complex:
    """W^(y) by adaptive quadrature (QAWO for y != 0), absolute error <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = lambda x: float(bump_weight(x))  # noqa: E731
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            if y == 0:
                val, err = integrate.quad(w, LEFT, RIGHT, epsabs=tol / 4, epsrel=0, limit=500)
                return complex(val, 0.0) if err <= tol else _fail(y, err, tol)
            omega = 2.0 * math.pi * y
            re, e1 = integrate.quad(w, LEFT, RIGHT, weight="cos", wvar=omega,
                                    epsabs=tol / 4, epsrel=0, limit=500)
            im, e2 = integrate.quad(w, LEFT, RIGHT, weight="sin", wvar=omega,
                                    epsabs=tol / 4, epsrel=0, limit=500)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature did not converge at y={y}: {exc}", math.inf) from None
    if e1 + e2 > tol:
        _fail(y, e1 + e2, tol)
    return complex(re, -im)


def _fail(y, err, tol):
    raise QuadratureError(f"W^({y}) error estimate {err:.3g} exceeds tol {tol:.3g}", err)


def grid_points(y_max: float, minimum: int = 2048) -> int:
    """Number of trapezoid panels on [1/2, 2] for frequencies up to ``y_max``."""
    return max(minimum, int(math.ceil((RIGHT - LEFT) * (abs(y_max) + ALIAS_MARGIN))))


def bump_fourier_grid(ys, n_panels: int | None = None) -> np.ndarray:
    """W^ at many frequencies by the trapezoid rule on a fixed grid.

    W and all its derivatives vanish at both ends, so the rule's only error is
    aliasing: it returns ``sum_j W^(y + j / h)``, and the grid is chosen so the
    nearest alias sits ``ALIAS_MARGIN`` beyond the largest requested ``|y|``.
    """
    ys = np.atleast_1d(np.asarray(ys, dtype=np.float64))
    if n_panels is None:
        n_panels = grid_points(float(np.abs(ys).max()) if len(ys) else 0.0)
    h = (RIGHT - LEFT) / n_panels
    xs = LEFT + h * np.arange(1, n_panels)
    wh = bump_weight(xs) * h
    return kernels.fourier_grid(ys, xs, wh)


@dataclass(frozen=True)
class DecayConstants:
    """``|W^(y)| <= C_k / (1 + |y|)^k`` for k = 2, 4."""

    c2: float
    c4: float
    y_max: float
    step: float
    safety: float

    def bound(self, y, k: int = 4):
        c = {2: self.c2, 4: self.c4}[k]
        return c / (1.0 + np.abs(y)) ** k


def fit_decay_constants(y_max: float = 400.0, step: float = 1.0 / 32, safety: float = 1.01) -> DecayConstants:
    """Sup of ``|W^(y)| (1 + y)^k`` over a grid (W^(-y) is the conjugate), inflated by ``safety``."""
    ys = np.arange(0.0, y_max + step / 2, step)
    mag = np.abs(bump_fourier_grid(ys))
    c2 = float(np.max(mag * (1 + ys) ** 2)) * safety
    c4 = float(np.max(mag * (1 + ys) ** 4)) * safety
    return DecayConstants(c2, c4, y_max, step, safety)


def stored_decay_constants() -> DecayConstants:
    raw = json.loads(resources.files("expolab.data").joinpath("fourier_decay.json").read_text())
    return DecayConstants(raw["c2"], raw["c4"], raw["y_max"], raw["step"], raw["safety"])
