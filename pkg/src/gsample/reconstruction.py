"""Signal recovery from node samples, plus the error metrics used throughout.

Three estimators are provided: the unbiased pseudo-inverse solution
(BLUE), a diagonally loaded biased variant defined for any sample count,
and a filter-domain form of the biased estimate that works directly on a
low-pass filter matrix, so it needs no eigendecomposition when that
matrix is the Givens approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import Observation, SpectralBasis

# Relative singular-value cutoff for rank decisions; the unbiased
# estimator degrades silently on near-singular systems without it.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class Reconstruction:
    """Recovered full-length signal with method tag and residual info."""

    values: np.ndarray
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(x)):
            raise ValueError("reconstruction contains non-finite values")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _sampled_rows(basis: SpectralBasis, obs: Observation, K: int) -> np.ndarray:
    vk = basis.low_frequency(K)
    return vk[list(obs.sample_indices), :]


def blue_reconstruct(obs: Observation, basis: SpectralBasis, K: int) -> Reconstruction:
    """Unbiased estimate via the pseudo-inverse of the sampled rows.

    Requires rank(V_SK) = K (so at least K samples).  Solved through the
    SVD with a relative rank cutoff rather than normal equations.
    """
    vsk = _sampled_rows(basis, obs, K)
    u, s, vt = np.linalg.svd(vsk, full_matrices=False)
    if s.size < K or s[-1] <= RANK_TOL * s[0]:
        raise ValueError(
            f"sampled eigenvector rows are rank deficient ({len(obs.sample_indices)} "
            f"samples, bandwidth {K})")
    xhat = vt.T @ ((u.T @ obs.values) / s)
    values = basis.low_frequency(K) @ xhat
    residual = float(np.linalg.norm(vsk @ xhat - obs.values))
    return Reconstruction(values, "blue", {"residual": residual, "K": K})


def biased_reconstruct(obs: Observation, basis: SpectralBasis, K: int,
                       mu: float) -> Reconstruction:
    """Diagonally loaded estimate V_K (V_SK^T V_SK + mu I)^-1 V_SK^T y.

    Defined for any nonempty sample set; converges to the unbiased
    estimate as mu -> 0 on full-rank instances.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    vsk = _sampled_rows(basis, obs, K)
    z = vsk.T @ vsk + mu * np.eye(K)
    xhat = np.linalg.solve(z, vsk.T @ obs.values)
    values = basis.low_frequency(K) @ xhat
    residual = float(np.linalg.norm(vsk @ xhat - obs.values))
    return Reconstruction(values, "biased", {"residual": residual, "K": K, "mu": mu})


def filter_reconstruct(obs: Observation, T: np.ndarray, mu: float) -> Reconstruction:
    """Filter-domain biased estimate x = T_{:,S} (T_SS + mu I)^-1 y.

    With the exact low-pass filter T = V_K V_K^T this equals the
    spectral biased estimate (push-through identity); with an
    approximate T it requires no eigendecomposition at all.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    T = np.asarray(T, dtype=float)
    idx = list(obs.sample_indices)
    tss = T[np.ix_(idx, idx)] + mu * np.eye(len(idx))
    w = np.linalg.solve(tss, obs.values)
    values = T[:, idx] @ w
    return Reconstruction(values, "filter", {"mu": mu})


def error_covariance(basis: SpectralBasis, K: int, sample_indices) -> np.ndarray:
    """Estimation-error covariance V_K (V_SK^T V_SK)^-1 V_K^T of the BLUE."""
    idx = list(sample_indices)
    vk = basis.low_frequency(K)
    vsk = vk[idx, :]
    u, s, vt = np.linalg.svd(vsk, full_matrices=False)
    if s.size < K or s[-1] <= RANK_TOL * s[0]:
        raise ValueError("sampled eigenvector rows are rank deficient")
    gram_inv = vt.T @ np.diag(1.0 / s ** 2) @ vt
    cov = vk @ gram_inv @ vk.T
    return (cov + cov.T) / 2.0


def rmse(x_star: np.ndarray, x: np.ndarray) -> float:
    """Root mean square error sqrt(||x* - x||^2 / n)."""
    x_star = np.asarray(x_star, dtype=float)
    x = np.asarray(x, dtype=float)
    if x_star.shape != x.shape:
        raise ValueError("signals must have the same length")
    return float(np.sqrt(np.mean((x_star - x) ** 2)))


def snr_to_sigma2(snr_db: float) -> float:
    """Noise variance for a target SNR in dB against signal power 0.5."""
    return 0.5 * 10.0 ** (-snr_db / 10.0)


def save_reconstruction_csv(rec: Reconstruction, truth: np.ndarray, path) -> None:
    """Write recovered values next to the ground truth, one row per node."""
    truth = np.asarray(truth, dtype=float)
    if truth.shape != rec.values.shape:
        raise ValueError("ground truth length must match reconstruction")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("recovered,truth\n")
        for a, b in zip(rec.values, truth):
            fh.write(f"{float(a)!r},{float(b)!r}\n")
