"""Reusable numerical kernels: adaptive quadrature and grid refinement.

The quadrature is a global-adaptive embedded Gauss-Kronrod 7/15 rule that
works natively on complex-valued integrands (QUADPACK-style error estimates,
but without the real/imaginary double bookkeeping scipy.quad would need).
Integrands must be vectorized: f(ndarray) -> ndarray.  Oscillatory integrands
are handled by seeding the subdivision with enough panels to resolve the
carrier (callers pass ``initial_panels``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import RectBivariateSpline, RegularGridInterpolator

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "Grid2D",
    "integrate_1d",
    "integrate_2d_nested",
    "interpolate_refine",
    "evaluate_grid",
]


class QuadratureError(RuntimeError):
    """Raised when the adaptive subdivision cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 4096

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")


# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (Kronrod nodes mirror about 0;
# the 7-point Gauss rule sits on the odd-index Kronrod nodes).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 ascending nodes
_WEIGHTS_K = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WEIGHTS_G = np.zeros(15)
_WEIGHTS_G[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])  # Gauss nodes are the odd positions


def _gk_panels(f, a_arr, b_arr):
    """Vectorized GK15 on a batch of panels; returns (values, error estimates)."""
    half = 0.5 * (b_arr - a_arr)
    mid = 0.5 * (a_arr + b_arr)
    points = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(points.ravel()), dtype=complex).reshape(points.shape)
    kronrod = (fx * _WEIGHTS_K[None, :]).sum(axis=1) * half
    gauss = (fx * _WEIGHTS_G[None, :]).sum(axis=1) * half
    # QUADPACK-style sharpened error estimate.
    mean = kronrod / (b_arr - a_arr)
    resasc = (np.abs(fx - mean[:, None]) * _WEIGHTS_K[None, :]).sum(axis=1) * np.abs(half)
    raw = np.abs(kronrod - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(
            (resasc > 0) & (raw > 0),
            resasc * np.minimum(1.0, (200.0 * raw / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
            raw,
        )
    return kronrod, np.maximum(scaled, np.abs(kronrod) * np.finfo(float).eps * 50)


def integrate_1d(f, a: float, b: float, spec: QuadratureSpec | None = None,
                 initial_panels: int = 1):
    """Adaptive complex-valued quadrature of f over [a, b].

    Returns (value, error_estimate).  ``initial_panels`` seeds the subdivision;
    pass at least a few panels per oscillation period for wave-like integrands.
    Raises QuadratureError if the panel budget is exhausted before the
    tolerance is met.
    """
    spec = spec or QuadratureSpec()
    if a == b:
        return 0.0 + 0.0j, 0.0
    n0 = max(1, int(initial_panels))
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    values, errors = _gk_panels(f, lo, hi)

    for _ in range(64):
        total = values.sum()
        total_err = errors.sum()
        tolerance = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tolerance:
            return total, float(total_err)
        if len(lo) >= spec.max_subdivisions:
            break
        # Split every panel whose error exceeds its width-proportional share.
        share = tolerance * np.abs(hi - lo) / abs(b - a)
        split = errors > share
        if not split.any():
            split = errors == errors.max()
        budget = spec.max_subdivisions - len(lo)
        if split.sum() > budget:
            order = np.argsort(errors)[::-1]
            keep = order[:budget]
            mask = np.zeros_like(split)
            mask[keep] = True
            split = mask
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[~split], lo[split], mid])
        new_hi = np.concatenate([hi[~split], mid, hi[split]])
        keep_vals = values[~split]
        keep_errs = errors[~split]
        split_vals, split_errs = _gk_panels(f, np.concatenate([lo[split], mid]),
                                            np.concatenate([mid, hi[split]]))
        lo, hi = new_lo, new_hi
        values = np.concatenate([keep_vals, split_vals])
        errors = np.concatenate([keep_errs, split_errs])

    total = values.sum()
    total_err = errors.sum()
    if total_err <= max(spec.abs_tol, spec.rel_tol * abs(total)):
        return total, float(total_err)
    raise QuadratureError(
        f"integral over [{a:g}, {b:g}] did not converge: error {total_err:.3e} "
        f"with {len(lo)} panels (rel_tol={spec.rel_tol:g}, abs_tol={spec.abs_tol:g})"
    )


def integrate_2d_nested(f, x_range, y_range=None, spec: QuadratureSpec | None = None,
                        triangular: bool = False, initial_panels: int = 1):
    """Nested adaptive quadrature of f(x, y).

    Rectangular domain: x in x_range, y in y_range.  Triangular domain
    (``triangular=True``): x in x_range and y from x_range[0] up to x, which is
    the ordered double-time domain t' <= t2 <= t1 <= t.  The inner integrand is
    evaluated vectorized in y for fixed x.  Returns (value, error_estimate).
    """
    spec = spec or QuadratureSpec()
    a, b = x_range
    inner_spec = QuadratureSpec(rel_tol=max(spec.rel_tol * 0.1, 1e-13),
                                abs_tol=spec.abs_tol * 0.1,
                                max_subdivisions=spec.max_subdivisions)
    inner_errors: list[float] = []

    def outer_integrand(xs):
        out = np.empty(len(xs), dtype=complex)
        for i, x in enumerate(xs):
            y_hi = x if triangular else y_range[1]
            y_lo = a if triangular else y_range[0]
            if y_hi == y_lo:
                out[i] = 0.0
                continue
            value, err = integrate_1d(lambda ys: f(x, ys), y_lo, y_hi,
                                      inner_spec, initial_panels=initial_panels)
            inner_errors.append(err)
            out[i] = value
        return out

    value, outer_err = integrate_1d(outer_integrand, a, b, spec,
                                    initial_panels=initial_panels)
    width = abs(b - a)
    inner_contribution = max(inner_errors) * width if inner_errors else 0.0
    return value, float(outer_err + inner_contribution)


@dataclass(frozen=True)
class Grid2D:
    """Real-valued samples on a rectangular grid; values[i, j] = f(x[j], y[i])."""

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_axis, dtype=float)
        y = np.asarray(self.y_axis, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or y.ndim != 1:
            raise ValueError("axes must be one-dimensional")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(y) <= 0):
            raise ValueError("axes must be strictly increasing")
        if v.shape != (len(y), len(x)):
            raise ValueError(f"values shape {v.shape} does not match axes ({len(y)}, {len(x)})")
        object.__setattr__(self, "x_axis", x)
        object.__setattr__(self, "y_axis", y)
        object.__setattr__(self, "values", v)


def interpolate_refine(grid: Grid2D, nx: int, ny: int, method: str = "bilinear") -> Grid2D:
    """Resample a grid to (nx, ny) points over the same bounding box."""
    if method not in ("bilinear", "bicubic"):
        raise ValueError(f"unknown method {method!r}")
    if nx < len(grid.x_axis) or ny < len(grid.y_axis):
        raise ValueError("refinement must not reduce the grid")
    new_x = np.linspace(grid.x_axis[0], grid.x_axis[-1], int(nx))
    new_y = np.linspace(grid.y_axis[0], grid.y_axis[-1], int(ny))
    if method == "bilinear":
        interp = RegularGridInterpolator((grid.y_axis, grid.x_axis), grid.values, method="linear")
        yy, xx = np.meshgrid(new_y, new_x, indexing="ij")
        new_values = interp(np.stack([yy.ravel(), xx.ravel()], axis=1)).reshape(ny, nx)
    else:
        ky = min(3, len(grid.y_axis) - 1)
        kx = min(3, len(grid.x_axis) - 1)
        spline = RectBivariateSpline(grid.y_axis, grid.x_axis, grid.values, kx=kx, ky=ky)
        new_values = spline(new_y, new_x)
    return Grid2D(x_axis=new_x, y_axis=new_y, values=new_values)


def evaluate_grid(func, x_axis, y_axis, workers: int = 1) -> Grid2D:
    """Fill a Grid2D by calling ``func(x_array, y) -> row`` for each y.

    Rows are independent, so they can be dispatched to a thread pool; assembly
    is by row index, making the result identical for any worker count.
    """
    x_axis = np.asarray(x_axis, dtype=float)
    y_axis = np.asarray(y_axis, dtype=float)
    rows: list[np.ndarray | None] = [None] * len(y_axis)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(func, x_axis, y): i for i, y in enumerate(y_axis)}
            for future, i in futures.items():
                rows[i] = np.asarray(future.result(), dtype=float)
    else:
        for i, y in enumerate(y_axis):
            rows[i] = np.asarray(func(x_axis, y), dtype=float)
    return Grid2D(x_axis=x_axis, y_axis=y_axis, values=np.vstack(rows))
