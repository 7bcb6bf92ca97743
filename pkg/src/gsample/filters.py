"""Low-pass graph filters and their Givens-rotation approximation.

The ideal low-pass filter with cutoff K is the projector V_K V_K^T onto
the K lowest-frequency eigenvectors.  The approximate variant avoids the
eigendecomposition entirely: a greedy Jacobi sweep applies a fixed budget
of Givens rotations to the Laplacian, and the accumulated rotation
product plays the role of the eigenvector matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Laplacian
from .spectral import SpectralBasis

# Off-diagonal magnitudes at or below this stop the Jacobi sweep early.
OFFDIAG_TOL = 1e-12


@dataclass(frozen=True)
class GivensSeq:
    """Ordered Givens rotations (p, q, theta) acting on an n-point space."""

    n: int
    rotations: tuple

    def __post_init__(self):
        rots = tuple((int(p), int(q), float(t)) for p, q, t in self.rotations)
        for p, q, _ in rots:
            if not (0 <= p < q < self.n):
                raise ValueError(f"rotation plane ({p}, {q}) out of range for n={self.n}")
        object.__setattr__(self, "rotations", rots)

    @property
    def count(self) -> int:
        return len(self.rotations)

    def to_matrix(self) -> np.ndarray:
        """Product of the rotations, applied in order to the identity."""
        q_mat = np.eye(self.n)
        for p, q, theta in self.rotations:
            _rotate_columns(q_mat, p, q, math.cos(theta), math.sin(theta))
        return q_mat


@dataclass(frozen=True)
class ApproxFilter:
    """Low-pass filter T = V~_K V~_K^T synthesized from a rotation sequence."""

    givens: GivensSeq
    approx_eigs: np.ndarray
    perm: np.ndarray
    filter: np.ndarray
    bandwidth: int

    def __post_init__(self):
        f = np.asarray(self.filter, dtype=float)
        f.setflags(write=False)
        object.__setattr__(self, "filter", f)

    @property
    def n(self) -> int:
        return self.filter.shape[0]


def rotation_budget(n: int) -> int:
    """Default rotation count ceil(6 n log10 n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return int(math.ceil(6.0 * n * math.log10(n)))


def _rotate_columns(mat: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    # right-multiplication by the rotation with entries [[c, s], [-s, c]]
    # in the (p, q) plane
    col_p = c * mat[:, p] - s * mat[:, q]
    col_q = s * mat[:, p] + c * mat[:, q]
    mat[:, p] = col_p
    mat[:, q] = col_q


def _rotate_symmetric(w: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    # two-sided update W <- G^T W G, then explicit zero of the target pair
    _rotate_columns(w, p, q, c, s)
    row_p = c * w[p, :] - s * w[q, :]
    row_q = s * w[p, :] + c * w[q, :]
    w[p, :] = row_p
    w[q, :] = row_q
    w[p, q] = 0.0
    w[q, p] = 0.0


def jacobi_angle(w_pp: float, w_qq: float, w_pq: float) -> float:
    """Classical Jacobi angle that zeroes the (p, q) entry."""
    return 0.5 * math.atan2(2.0 * w_pq, w_qq - w_pp)


def apply_rotation(w: np.ndarray, p: int, q: int, theta: float) -> None:
    """In-place two-sided rotation of a symmetric matrix (test/replay hook)."""
    _rotate_symmetric(w, p, q, math.cos(theta), math.sin(theta))


class _RowMax:
    """Running per-row maximum of |W| over the strict upper triangle.

    Keeps pair selection at O(n) per rotation after the O(n^2) setup.
    Rows whose cached entry may have been invalidated by a rotation are
    recomputed with a fresh argmax, which also preserves the tie rule
    (smallest p, then smallest q).
    """

    def __init__(self, w: np.ndarray):
        self.w = w
        self.n = w.shape[0]
        self.best_col = np.zeros(self.n - 1, dtype=np.intp)
        self.best_val = np.zeros(self.n - 1)
        for i in range(self.n - 1):
            self._recompute(i)

    def _recompute(self, i: int) -> None:
        row = np.abs(self.w[i, i + 1 :])
        j = int(np.argmax(row))
        self.best_col[i] = i + 1 + j
        self.best_val[i] = row[j]

    def pick(self):
        p = int(np.argmax(self.best_val))
        return p, int(self.best_col[p]), float(self.best_val[p])

    def update_after_rotation(self, p: int, q: int) -> None:
        stale = np.zeros(self.n - 1, dtype=bool)
        if p > 0:
            stale[:p] |= np.abs(self.w[:p, p]) >= self.best_val[:p]
        if q > 0:
            stale[:q] |= np.abs(self.w[:q, q]) >= self.best_val[:q]
        stale |= (self.best_col == p) | (self.best_col == q)
        if p < self.n - 1:
            stale[p] = True
        if q < self.n - 1:
            stale[q] = True
        for i in np.nonzero(stale)[0]:
            self._recompute(int(i))


def greedy_jacobi(lap: Laplacian, J: int, tol: float = OFFDIAG_TOL):
    """Greedy Jacobi diagonalization truncated at J rotations.

    Each step zeroes the largest off-diagonal entry of the working matrix
    (ties: smallest row, then smallest column), which lowers the squared
    off-diagonal norm by exactly 2 W_pq^2.  Stops early once all
    off-diagonal magnitudes fall to `tol`.

    Returns (GivensSeq, approximate eigenvalues sorted ascending, perm)
    where perm maps rotated coordinates to the ascending order.
    """
    if J < 0:
        raise ValueError("rotation budget must be nonnegative")
    w = lap.matrix.astype(float).copy()
    n = w.shape[0]
    rotations = []
    if n >= 2 and J > 0:
        tracker = _RowMax(w)
        for _ in range(J):
            p, q, val = tracker.pick()
            if val <= tol:
                break
            theta = jacobi_angle(w[p, p], w[q, q], w[p, q])
            _rotate_symmetric(w, p, q, math.cos(theta), math.sin(theta))
            rotations.append((p, q, theta))
            tracker.update_after_rotation(p, q)
    diag = np.diag(w).copy()
    perm = np.argsort(diag, kind="stable")
    return GivensSeq(n, tuple(rotations)), diag[perm], perm


def lowpass_from_givens(givens: GivensSeq, perm, K: int,
                        approx_eigs=None) -> ApproxFilter:
    """Synthesize the approximate low-pass filter from a rotation sequence.

    The accumulated rotation product, with columns reordered by `perm`
    (ascending approximate eigenvalues), stands in for the eigenvector
    matrix; the filter is the outer product of its first K columns.
    """
    n = givens.n
    if not 1 <= K <= n:
        raise ValueError(f"bandwidth K={K} out of range [1, {n}]")
    perm = np.asarray(perm, dtype=np.intp)
    if perm.shape != (n,) or sorted(perm.tolist()) != list(range(n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    v_approx = givens.to_matrix()[:, perm]
    vk = v_approx[:, :K]
    eigs = None if approx_eigs is None else np.asarray(approx_eigs, dtype=float)
    return ApproxFilter(givens, eigs, perm, vk @ vk.T, K)


def approximate_lowpass(lap: Laplacian, K: int, J: int | None = None) -> ApproxFilter:
    """Eigendecomposition-free low-pass filter; J defaults to ceil(6 n log10 n)."""
    if J is None:
        J = rotation_budget(lap.n)
    seq, eigs, perm = greedy_jacobi(lap, J)
    return lowpass_from_givens(seq, perm, K, approx_eigs=eigs)


def exact_lowpass(basis: SpectralBasis, K: int) -> np.ndarray:
    """Ideal low-pass filter V_K V_K^T (an orthogonal projector of rank K)."""
    vk = basis.low_frequency(K)
    return vk @ vk.T


def offdiag_sq_norm(mat: np.ndarray) -> float:
    """Squared Frobenius norm of the off-diagonal part."""
    return float((mat ** 2).sum() - (np.diag(mat) ** 2).sum())


def save_givens_csv(givens: GivensSeq, path) -> None:
    """Write rotations as CSV rows `p,q,theta` (round-trip float repr)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("p,q,theta\n")
        for p, q, theta in givens.rotations:
            fh.write(f"{p},{q},{theta!r}\n")


def load_givens_csv(path, n: int) -> GivensSeq:
    rotations = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "p,q,theta":
            raise ValueError(f"{path}: expected header 'p,q,theta', got {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            p, q, theta = line.split(",")
            rotations.append((int(p), int(q), float(theta)))
    return GivensSeq(n, tuple(rotations))
