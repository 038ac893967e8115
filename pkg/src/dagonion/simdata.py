"""Finite-sample data generation from linear SEM parameters."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroVarianceColumnError
from .graph import source_first_order
from .sem import SemParameters

__all__ = ["Dataset", "simulate", "standardize_data"]

ERROR_KINDS = ("gaussian", "exponential")


@dataclass
class Dataset:
    """An n x p data matrix with column names and generation metadata."""

    values: np.ndarray
    names: tuple[str, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"values must be 2-d, got shape {values.shape}")
        if values.shape[0] < 1:
            raise ValueError("dataset must contain at least one row")
        if len(self.names) != values.shape[1]:
            raise ValueError(
                f"{len(self.names)} names for {values.shape[1]} columns"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("dataset contains non-finite entries")
        self.values = values
        self.names = tuple(self.names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def _draw_errors(
    kind: str, omega_i: float, n: int, rng: np.random.Generator
) -> np.ndarray:
    sd = np.sqrt(omega_i)
    if kind == "gaussian":
        return rng.normal(0.0, sd, size=n)
    # Exponential with scale sqrt(omega), shifted to mean zero: variance
    # stays omega and the skewness of 2 is unaffected by the shift.
    return rng.exponential(scale=sd, size=n) - sd


def simulate(
    params: SemParameters,
    error_kind: str,
    n: int,
    rng: np.random.Generator,
) -> Dataset:
    """Draw n samples of X = X B^T + Z column by column.

    Columns are generated in a consistent vertex order so every parent is
    filled in before its children; the returned matrix keeps the original
    label order. ``error_kind`` selects the error family: "gaussian" gives
    normal(0, omega_i) errors, "exponential" gives mean-zero shifted
    exponential errors with variance omega_i.
    """
    if error_kind not in ERROR_KINDS:
        raise ValueError(
            f"error kind must be one of {ERROR_KINDS}, got {error_kind!r}"
        )
    if n < 1:
        raise ValueError(f"sample size must be at least 1, got {n}")
    p = params.g.p
    parent_map = params.g.parent_map()
    X = np.zeros((n, p))
    for v in source_first_order(params.g):
        i0 = v - 1
        z = _draw_errors(error_kind, float(params.omega[i0]), n, rng)
        pa0 = np.asarray(parent_map[v], dtype=np.intp) - 1
        if len(pa0):
            X[:, i0] = X[:, pa0] @ params.B[i0, pa0] + z
        else:
            X[:, i0] = z
    names = tuple(f"X{j}" for j in range(1, p + 1))
    meta = {
        "n": n,
        "error": error_kind,
        "error_centering": "shifted to mean zero" if error_kind == "exponential" else None,
        "standardized": False,
    }
    return Dataset(X, names, meta)


def standardize_data(d: Dataset) -> Dataset:
    """Center each column to mean zero and scale to unit sample variance.

    The variance divisor is n - 1. A constant column raises
    ZeroVarianceColumnError.
    """
    mean = d.values.mean(axis=0)
    sd = d.values.std(axis=0, ddof=1) if d.n > 1 else np.zeros(d.p)
    if np.any(sd == 0):
        bad = int(np.flatnonzero(sd == 0)[0])
        raise ZeroVarianceColumnError(
            f"column {d.names[bad]} has zero sample variance"
        )
    meta = dict(d.meta)
    meta["standardized"] = True
    return Dataset((d.values - mean) / sd, d.names, meta)
