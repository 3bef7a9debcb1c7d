"""Quadratic OLS with categorical fixed effects and pointwise bands.

The design is [intercept, x, x^2, region dummies, model dummies] with the
lexicographically first region and model as reference levels. Estimation
goes through a QR decomposition of the design matrix; the normal equations
are never formed or inverted explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import stats

__all__ = ["RankDeficiencyError", "RegressionFit", "PredictionBand", "fit_quadratic_fe", "predict_with_band"]


class RankDeficiencyError(ValueError):
    """The design matrix is rank deficient; names the offending column."""

    def __init__(self, column: str):
        super().__init__(f"design is rank deficient at column {column!r}")
        self.column = column


@dataclass(frozen=True)
class RegressionFit:
    coefficients: np.ndarray
    column_names: tuple[str, ...]
    covariance: np.ndarray
    residual_variance: float
    fitted: np.ndarray
    residuals: np.ndarray
    n: int
    df_resid: int
    x_range: tuple[float, float]
    region_levels: tuple[str, ...]
    model_levels: tuple[str, ...]
    quadratic: bool

    def coefficient(self, name: str) -> float:
        return float(self.coefficients[self.column_names.index(name)])


@dataclass(frozen=True)
class PredictionBand:
    x: np.ndarray
    mean: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    extrapolated: np.ndarray  # bool mask, True outside the fitted x range


def _design(
    x: np.ndarray,
    regions: Sequence[str],
    models: Sequence[str],
    region_levels: Sequence[str],
    model_levels: Sequence[str],
    quadratic: bool,
) -> tuple[np.ndarray, list[str]]:
    columns = [np.ones_like(x)]
    names = ["intercept"]
    columns.append(x)
    names.append("x")
    if quadratic:
        columns.append(x * x)
        names.append("x2")
    for level in region_levels[1:]:
        columns.append(np.array([1.0 if r == level else 0.0 for r in regions]))
        names.append(f"region[{level}]")
    for level in model_levels[1:]:
        columns.append(np.array([1.0 if m == level else 0.0 for m in models]))
        names.append(f"model[{level}]")
    return np.column_stack(columns), names


def _check_rank(X: np.ndarray, names: Sequence[str]) -> None:
    # Incremental QR rank probe: the first column that fails to increase the
    # rank is the offender reported to the caller.
    rank = 0
    for j in range(X.shape[1]):
        sub = X[:, : j + 1]
        new_rank = np.linalg.matrix_rank(sub)
        if new_rank <= rank:
            raise RankDeficiencyError(names[j])
        rank = new_rank


def fit_quadratic_fe(
    y: Sequence[float],
    x: Sequence[float],
    regions: Sequence[str],
    models: Sequence[str],
    quadratic: bool = True,
) -> RegressionFit:
    """Least-squares fit of y on x, x^2 and region/model fixed effects."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    regions = list(regions)
    models = list(models)
    n = y.size
    if not (x.size == n and len(regions) == n and len(models) == n):
        raise ValueError("y, x, regions, models must have the same length")
    if n == 0:
        raise ValueError("no observations")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(x))):
        raise ValueError("y and x must be finite")

    region_levels = tuple(sorted(set(regions)))
    model_levels = tuple(sorted(set(models)))
    X, names = _design(x, regions, models, region_levels, model_levels, quadratic)
    p = X.shape[1]
    if n <= p:
        raise ValueError(f"need more than {p} observations, got {n}")
    _check_rank(X, names)

    Q, R = np.linalg.qr(X)
    beta = np.linalg.solve(R, Q.T @ y)
    fitted = X @ beta
    residuals = y - fitted
    df_resid = n - p
    sigma2 = float(residuals @ residuals) / df_resid
    r_inv = np.linalg.solve(R, np.eye(p))
    covariance = sigma2 * (r_inv @ r_inv.T)

    return RegressionFit(
        coefficients=beta,
        column_names=tuple(names),
        covariance=covariance,
        residual_variance=sigma2,
        fitted=fitted,
        residuals=residuals,
        n=n,
        df_resid=df_resid,
        x_range=(float(x.min()), float(x.max())),
        region_levels=region_levels,
        model_levels=model_levels,
        quadratic=quadratic,
    )


def predict_with_band(
    fit: RegressionFit,
    x_grid: Sequence[float],
    region: Optional[str] = None,
    model: Optional[str] = None,
    level: float = 0.95,
) -> PredictionBand:
    """Pointwise mean prediction with a t-based confidence band.

    Region and model default to the reference levels. Grid points outside
    the fitted x range are flagged as extrapolated, not rejected.
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    x_grid = np.asarray(x_grid, dtype=float)
    if not np.all(np.isfinite(x_grid)):
        raise ValueError("x grid must be finite")
    region = region if region is not None else fit.region_levels[0]
    model = model if model is not None else fit.model_levels[0]
    if region not in fit.region_levels:
        raise ValueError(f"unknown region {region!r}")
    if model not in fit.model_levels:
        raise ValueError(f"unknown model {model!r}")

    X0, _ = _design(
        x_grid,
        [region] * x_grid.size,
        [model] * x_grid.size,
        fit.region_levels,
        fit.model_levels,
        fit.quadratic,
    )
    mean = X0 @ fit.coefficients
    se = np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", X0, fit.covariance, X0), 0.0))
    tq = float(stats.t.ppf(0.5 + level / 2.0, fit.df_resid))
    lo, hi = fit.x_range
    extrapolated = (x_grid < lo) | (x_grid > hi)
    return PredictionBand(
        x=x_grid,
        mean=mean,
        lower=mean - tq * se,
        upper=mean + tq * se,
        extrapolated=extrapolated,
    )
