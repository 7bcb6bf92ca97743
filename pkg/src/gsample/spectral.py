"""Laplacian eigenbasis, graph Fourier transform, and signal/noise models."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .graphs import Laplacian
from .rng import rng_from

# Entries smaller than this are ignored when fixing eigenvector signs.
SIGN_TOL = 1e-12

# (default bandwidth, variance of the out-of-band coefficients or None)
SIGNAL_MODELS = {
    "GS1": (10, None),
    "GS2": (10, 5e-3),
    "GS3": (40, None),
}


@dataclass(frozen=True)
class SpectralBasis:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Laplacian.

    Column k of `eigenvectors` pairs with `eigenvalues[k]`.  Signs follow
    a fixed convention (first non-negligible entry of each column is
    positive) so repeated decompositions agree exactly.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float)
        v = np.asarray(self.eigenvectors, dtype=float)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def n(self) -> int:
        return self.eigenvectors.shape[0]

    def low_frequency(self, K: int) -> np.ndarray:
        """First K eigenvector columns (the K lowest graph frequencies)."""
        if not 1 <= K <= self.n:
            raise ValueError(f"bandwidth K={K} out of range [1, {self.n}]")
        return self.eigenvectors[:, :K]


@dataclass(frozen=True)
class GraphSignal:
    """Node-domain values, optionally with their spectrum and bandwidth."""

    values: np.ndarray
    spectrum: np.ndarray | None = None
    bandwidth: int | None = None

    def __post_init__(self):
        x = np.asarray(self.values, dtype=float)
        x.setflags(write=False)
        object.__setattr__(self, "values", x)
        if self.spectrum is not None:
            s = np.asarray(self.spectrum, dtype=float)
            s.setflags(write=False)
            object.__setattr__(self, "spectrum", s)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class Observation:
    """Noisy samples of a signal on an ordered set of node indices."""

    sample_indices: tuple
    values: np.ndarray
    noise_variance: float

    def __post_init__(self):
        idx = tuple(int(i) for i in self.sample_indices)
        if len(set(idx)) != len(idx):
            raise ValueError("sample indices must be distinct")
        y = np.asarray(self.values, dtype=float)
        if y.shape != (len(idx),):
            raise ValueError("observation length must match index count")
        y.setflags(write=False)
        object.__setattr__(self, "sample_indices", idx)
        object.__setattr__(self, "values", y)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    v = vectors.copy()
    significant = np.abs(v) > SIGN_TOL
    first = significant.argmax(axis=0)  # index of first non-negligible entry
    lead = v[first, np.arange(v.shape[1])]
    signs = np.where(lead < 0, -1.0, 1.0)
    return v * signs


def eigendecompose(lap: Laplacian) -> SpectralBasis:
    """Dense symmetric eigendecomposition with deterministic ordering.

    Eigenvalues come out ascending; the sign convention makes the result
    a pure function of the Laplacian, independent of LAPACK's arbitrary
    sign choices.
    """
    w, v = np.linalg.eigh(lap.matrix)
    order = np.argsort(w, kind="stable")
    return SpectralBasis(w[order], _fix_signs(v[:, order]))


def gft(basis: SpectralBasis, x: np.ndarray) -> np.ndarray:
    """Forward transform: expansion coefficients V^T x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (basis.n,):
        raise ValueError(f"signal length {x.shape} != graph size {basis.n}")
    return basis.eigenvectors.T @ x


def igft(basis: SpectralBasis, xhat: np.ndarray) -> np.ndarray:
    """Inverse transform: synthesis V xhat."""
    xhat = np.asarray(xhat, dtype=float)
    if xhat.shape != (basis.n,):
        raise ValueError(f"spectrum length {xhat.shape} != graph size {basis.n}")
    return basis.eigenvectors @ xhat


def gen_signal(model: str, basis: SpectralBasis, seed: int,
               bandwidth: int | None = None) -> GraphSignal:
    """Draw a random signal from one of the named spectral models.

    GS1: exactly bandlimited, 10 low-frequency coefficients ~ N(0, 0.5).
    GS2: as GS1 plus N(0, 5e-3) energy in all remaining coefficients.
    GS3: exactly bandlimited with 40 coefficients ~ N(0, 0.5).

    The second Normal parameter is a variance.  `bandwidth` overrides the
    model default (used when experiments scale the bandwidth with n).
    """
    if model not in SIGNAL_MODELS:
        raise ValueError(f"unknown signal model {model!r}")
    default_k, tail_var = SIGNAL_MODELS[model]
    K = default_k if bandwidth is None else int(bandwidth)
    n = basis.n
    if not 1 <= K <= n:
        raise ValueError(f"bandwidth {K} out of range for n={n}")
    rng = rng_from(seed)
    xhat = np.zeros(n)
    xhat[:K] = rng.normal(0.0, np.sqrt(0.5), size=K)
    if tail_var is not None and K < n:
        xhat[K:] = rng.normal(0.0, np.sqrt(tail_var), size=n - K)
    return GraphSignal(basis.eigenvectors @ xhat, xhat, K)


def observe(signal: GraphSignal, sample_indices, sigma2: float,
            seed: int = 0) -> Observation:
    """Sample the signal on `sample_indices` with i.i.d. N(0, sigma2) noise."""
    idx = [int(i) for i in sample_indices]
    if len(set(idx)) != len(idx):
        raise ValueError("sample indices must be distinct")
    if idx and not (0 <= min(idx) and max(idx) < signal.n):
        raise ValueError("sample index out of range")
    if sigma2 < 0:
        raise ValueError("noise variance must be nonnegative")
    y = signal.values[idx].copy()
    if sigma2 > 0:
        y = y + rng_from(seed).normal(0.0, np.sqrt(sigma2), size=len(idx))
    return Observation(tuple(idx), y, float(sigma2))


def leverage_scores(basis: SpectralBasis, K: int) -> np.ndarray:
    """Per-node sampling probabilities: squared row norms of V_K over K.

    Sums to one because the K columns are orthonormal.
    """
    vk = basis.low_frequency(K)
    return (vk ** 2).sum(axis=1) / K


def save_signal_csv(signal: GraphSignal, path) -> None:
    """Write node-domain values as a single-column CSV with header `value`."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value"])
        for v in signal.values:
            writer.writerow([repr(float(v))])


def load_signal_csv(path) -> GraphSignal:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["value"]:
            raise ValueError(f"{path}: expected header 'value', got {header}")
        values = [float(row[0]) for row in reader if row]
    return GraphSignal(np.array(values))
