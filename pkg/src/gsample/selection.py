"""Sampling-set selection strategies.

The main family minimizes the worst-case coordinate variance of the
spectral estimate (a G-optimal criterion): the objective is the largest
diagonal entry of the inverted, diagonally loaded Gram matrix of the
sampled eigenvector rows.  Three variants are provided:

* god    - unloaded objective, max diag (V_SK^T V_SK)^-1, pseudo-inverse
           below full rank (numerically fragile, kept for reference);
* agod   - loaded objective, max diag (V_SK^T V_SK + mu I)^-1;
* fagod  - filter-submatrix form, max diag (T_SS + mu I)^-1, which needs
           only a low-pass filter matrix T and therefore runs without an
           eigendecomposition when T is the Givens approximation.

Greedy selection maintains the running inverse incrementally: a
rank-one (Sherman-Morrison) update for the fixed-size K x K Gram, and a
Schur-complement growth step for the size-increasing filter submatrix.
A-, D- and E-optimal greedy baselines plus random sampling round out the
set of strategies benchmarked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .filters import ApproxFilter
from .rng import rng_from
from .spectral import SpectralBasis, leverage_scores

# Diagonal loading chosen so the loaded Gram's condition number stays
# below kappa_0 = 100: mu = 1 / (kappa_0 - 1).
DEFAULT_KAPPA0 = 100.0
DEFAULT_MU = 1.0 / (DEFAULT_KAPPA0 - 1.0)

# Relative cutoff for pseudo-inverse ranks (god objective, BLUE).
RANK_TOL = 1e-10

G_OPTIMAL_METHODS = ("god", "agod", "fagod")


@dataclass(frozen=True)
class SamplingSet:
    """Ordered selection of node indices with its per-step objective trace."""

    indices: tuple
    objective_trace: tuple
    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        trace = tuple(float(v) for v in self.objective_trace)
        if len(set(idx)) != len(idx):
            raise ValueError("selected indices must be distinct")
        if len(trace) != len(idx):
            raise ValueError("objective trace must have one value per selection step")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "objective_trace", trace)

    @property
    def size(self) -> int:
        return len(self.indices)


def max_diag(mat: np.ndarray) -> float:
    return float(np.max(np.diagonal(mat)))


def _rows(basis: SpectralBasis, indices, K: int) -> np.ndarray:
    vk = basis.low_frequency(K)
    return vk[list(indices), :]


def _loaded_gram_inverse(vsk: np.ndarray, mu: float) -> np.ndarray:
    K = vsk.shape[1]
    z = vsk.T @ vsk + mu * np.eye(K)
    return np.linalg.inv(z)


def objective_agod(indices, basis: SpectralBasis, K: int, mu: float) -> float:
    """max diag (V_SK^T V_SK + mu I)^-1; 1/mu for the empty set.

    mu = 0 recovers the unloaded (god) objective, computed through a
    pseudo-inverse when the Gram matrix is rank deficient.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    indices = list(indices)
    if mu == 0.0:
        vsk = _rows(basis, indices, K)
        return max_diag(np.linalg.pinv(vsk.T @ vsk, rcond=RANK_TOL))
    if not indices:
        return 1.0 / mu
    return max_diag(_loaded_gram_inverse(_rows(basis, indices, K), mu))


def objective_agod_full(indices, basis: SpectralBasis, K: int, mu: float) -> float:
    """Variant conjugated by V_K: max diag V_K (V_SK^T V_SK + mu I)^-1 V_K^T.

    Kept for completeness; the plain K x K form is the one selected for
    its cheaper evaluation and better reconstructions.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    vk = basis.low_frequency(K)
    vsk = _rows(basis, indices, K)
    gram = vsk.T @ vsk + mu * np.eye(K)
    if mu == 0.0:
        inner = np.linalg.pinv(gram, rcond=RANK_TOL)
    else:
        inner = np.linalg.inv(gram)
    return max_diag(vk @ inner @ vk.T)


def objective_fagod(indices, T: np.ndarray, mu: float) -> float:
    """max diag (T_SS + mu I)^-1 for a filter matrix T; 1/mu on the empty set."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    indices = list(indices)
    if not indices:
        return 1.0 / mu
    tss = T[np.ix_(indices, indices)] + mu * np.eye(len(indices))
    return max_diag(np.linalg.inv(tss))


def objective_dopt(indices, basis: SpectralBasis, K: int, mu: float) -> float:
    """Normalized log-determinant criterion (1/K) ln |(V_SK^T V_SK + mu I)^-1|."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    vsk = _rows(basis, indices, K)
    sign, logdet = np.linalg.slogdet(vsk.T @ vsk + mu * np.eye(K))
    if sign <= 0:
        raise np.linalg.LinAlgError("loaded Gram matrix must be positive definite")
    return -logdet / K


def objective_aopt(indices, basis: SpectralBasis, K: int, mu: float) -> float:
    """Trace criterion Tr (V_SK^T V_SK + mu I)^-1 (K/mu on the empty set)."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    indices = list(indices)
    if not indices:
        return K / mu
    return float(np.trace(_loaded_gram_inverse(_rows(basis, indices, K), mu)))


def objective_eopt(indices, basis: SpectralBasis, K: int) -> float:
    """Smallest singular value of V_SK (0.0 for the empty set; maximized)."""
    indices = list(indices)
    if not indices:
        return 0.0
    sv = np.linalg.svd(_rows(basis, indices, K), compute_uv=False)
    return float(sv[-1])


def update_inverse_rank_one(zinv: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sherman-Morrison: inverse of Z + v^T v given Zinv, for a row vector v.

    For positive definite Z the denominator 1 + v Zinv v^T is at least 1,
    so the update never divides by anything small.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    u = zinv @ v
    denom = 1.0 + float(v @ u)
    return zinv - np.outer(u, u) / denom


def update_inverse_grow(minv: np.ndarray, col: np.ndarray,
                        diag_entry: float) -> np.ndarray:
    """Inverse of the one-row/column extension [[M, col], [col^T, d]].

    Uses the Schur complement s = d - col^T Minv col, which is positive
    whenever the extended matrix is positive definite.
    """
    m = minv.shape[0]
    if m == 0:
        if diag_entry <= 0:
            raise ValueError("cannot grow: nonpositive diagonal entry")
        return np.array([[1.0 / diag_entry]])
    col = np.asarray(col, dtype=float).reshape(-1)
    if col.shape != (m,):
        raise ValueError(f"column length {col.shape} != current size {m}")
    w = minv @ col
    schur = float(diag_entry - col @ w)
    if schur <= 0:
        raise ValueError("nonpositive Schur complement; extended matrix not PD")
    out = np.empty((m + 1, m + 1))
    out[:m, :m] = minv + np.outer(w, w) / schur
    out[:m, m] = -w / schur
    out[m, :m] = -w / schur
    out[m, m] = 1.0 / schur
    return out


class AgodState:
    """Incremental state for the loaded K x K Gram objective.

    Keeps (V_SK^T V_SK + mu I)^-1 up to date across single-node additions
    and scores every candidate in one vectorized pass.
    """

    def __init__(self, basis: SpectralBasis, K: int, mu: float):
        if mu <= 0:
            raise ValueError("mu must be positive")
        self.vk = basis.low_frequency(K)
        self.n = basis.n
        self.K = K
        self.mu = mu
        self._zinv = np.eye(K) / mu
        self.selected = []
        self._taken = np.zeros(self.n, dtype=bool)

    @property
    def inverse(self) -> np.ndarray:
        return self._zinv.copy()

    def objective(self) -> float:
        return max_diag(self._zinv)

    def candidate_objectives(self) -> np.ndarray:
        """Objective after adding each node j (inf where already selected)."""
        u = self.vk @ self._zinv  # row j is v_j Zinv
        denom = 1.0 + np.einsum("ij,ij->i", u, self.vk)
        cand = np.diagonal(self._zinv)[None, :] - u ** 2 / denom[:, None]
        obj = cand.max(axis=1)
        obj[self._taken] = np.inf
        return obj

    def add(self, j: int) -> None:
        j = int(j)
        if self._taken[j]:
            raise ValueError(f"node {j} already selected")
        self._zinv = update_inverse_rank_one(self._zinv, self.vk[j])
        self.selected.append(j)
        self._taken[j] = True


class FagodState:
    """Incremental state for the filter-submatrix objective.

    Grows (T_SS + mu I)^-1 one node at a time via Schur complements and
    scores candidates without forming any inverse from scratch.
    """

    def __init__(self, T: np.ndarray, mu: float):
        if mu <= 0:
            raise ValueError("mu must be positive")
        T = np.asarray(T, dtype=float)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValueError("filter matrix must be square")
        self.T = T
        self.n = T.shape[0]
        self.mu = mu
        self._ainv = np.zeros((0, 0))
        self.selected = []
        self._taken = np.zeros(self.n, dtype=bool)

    @property
    def inverse(self) -> np.ndarray:
        return self._ainv.copy()

    def objective(self) -> float:
        if not self.selected:
            return 1.0 / self.mu
        return max_diag(self._ainv)

    def candidate_objectives(self) -> np.ndarray:
        obj = np.full(self.n, np.inf)
        cand = np.nonzero(~self._taken)[0]
        loaded_diag = self.T[cand, cand] + self.mu
        if not self.selected:
            obj[cand] = 1.0 / loaded_diag
            return obj
        c = self.T[np.ix_(self.selected, cand)]
        w = self._ainv @ c
        schur = loaded_diag - np.einsum("ij,ij->j", c, w)
        grown_max = (np.diagonal(self._ainv)[:, None] + w ** 2 / schur).max(axis=0)
        obj[cand] = np.maximum(grown_max, 1.0 / schur)
        return obj

    def add(self, j: int) -> None:
        j = int(j)
        if self._taken[j]:
            raise ValueError(f"node {j} already selected")
        col = self.T[self.selected, j]
        self._ainv = update_inverse_grow(self._ainv, col, self.T[j, j] + self.mu)
        self.selected.append(j)
        self._taken[j] = True


def _argmin_with_ties(values: np.ndarray) -> int:
    # np.argmin returns the first minimum: the deterministic
    # (value, index) reduction with smallest-index tie-breaking
    return int(np.argmin(values))


def greedy_select(method: str, M: int, *, basis: SpectralBasis | None = None,
                  K: int | None = None, mu: float = DEFAULT_MU,
                  filt=None) -> SamplingSet:
    """Greedy minimization of one of the G-optimal objectives.

    method: "agod" (needs basis, K), "fagod" (needs filt: ApproxFilter or
    a filter matrix), or "god" (needs basis, K; mu forced to 0).  At each
    step the node with the smallest resulting objective joins the set;
    ties go to the smallest node index.
    """
    if method == "agod":
        if basis is None or K is None:
            raise ValueError("agod needs basis and K")
        _check_budget(M, basis.n)
        state = AgodState(basis, K, mu)
        params = {"K": K, "mu": mu}
    elif method == "fagod":
        if filt is None:
            raise ValueError("fagod needs a filter matrix")
        if isinstance(filt, ApproxFilter):
            T = filt.filter
            params = {"K": filt.bandwidth, "mu": mu}
        else:
            T = np.asarray(filt, dtype=float)
            params = {"K": None, "mu": mu}
        _check_budget(M, T.shape[0])
        state = FagodState(T, mu)
    elif method == "god":
        if basis is None or K is None:
            raise ValueError("god needs basis and K")
        _check_budget(M, basis.n)
        return _greedy_god(basis, K, M)
    else:
        raise ValueError(f"unknown greedy method {method!r}")

    trace = []
    for _ in range(M):
        scores = state.candidate_objectives()
        j = _argmin_with_ties(scores)
        trace.append(float(scores[j]))
        state.add(j)
    return SamplingSet(tuple(state.selected), tuple(trace), method, params)


def _check_budget(M: int, n: int) -> None:
    if not 1 <= M <= n:
        raise ValueError(f"budget M={M} out of range [1, {n}]")


def _greedy_god(basis: SpectralBasis, K: int, M: int) -> SamplingSet:
    # pseudo-inverse objective below full rank: no incremental form,
    # evaluate from scratch (reference implementation, small n only)
    selected: list[int] = []
    trace = []
    for _ in range(M):
        best_val, best_j = np.inf, -1
        for j in range(basis.n):
            if j in selected:
                continue
            val = objective_agod(selected + [j], basis, K, 0.0)
            if val < best_val:
                best_val, best_j = val, j
        selected.append(best_j)
        trace.append(best_val)
    return SamplingSet(tuple(selected), tuple(trace), "god", {"K": K, "mu": 0.0})


def greedy_doptimal(basis: SpectralBasis, K: int, mu: float, M: int) -> SamplingSet:
    """Greedy log-determinant maximization of the loaded Gram matrix.

    The determinant gain of adding node j is 1 + v_j Zinv v_j^T (matrix
    determinant lemma), so each step is a vectorized argmax followed by a
    rank-one inverse update.  The trace records (1/K) ln |Z^-1|.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    _check_budget(M, basis.n)
    vk = basis.low_frequency(K)
    zinv = np.eye(K) / mu
    logdet = K * np.log(mu)
    taken = np.zeros(basis.n, dtype=bool)
    selected = []
    trace = []
    for _ in range(M):
        u = vk @ zinv
        gain = np.einsum("ij,ij->i", u, vk)
        gain[taken] = -np.inf
        j = int(np.argmax(gain))
        logdet += np.log1p(gain[j])
        zinv = update_inverse_rank_one(zinv, vk[j])
        taken[j] = True
        selected.append(j)
        trace.append(-logdet / K)
    return SamplingSet(tuple(selected), tuple(trace), "dopt", {"K": K, "mu": mu})


def greedy_aoptimal(basis: SpectralBasis, K: int, mu: float, M: int) -> SamplingSet:
    """Greedy trace minimization of the inverted loaded Gram matrix."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    _check_budget(M, basis.n)
    vk = basis.low_frequency(K)
    zinv = np.eye(K) / mu
    taken = np.zeros(basis.n, dtype=bool)
    selected = []
    trace = []
    for _ in range(M):
        u = vk @ zinv
        denom = 1.0 + np.einsum("ij,ij->i", u, vk)
        new_tr = np.trace(zinv) - (u ** 2).sum(axis=1) / denom
        new_tr[taken] = np.inf
        j = _argmin_with_ties(new_tr)
        zinv = update_inverse_rank_one(zinv, vk[j])
        taken[j] = True
        selected.append(j)
        trace.append(float(new_tr[j]))
    return SamplingSet(tuple(selected), tuple(trace), "aopt", {"K": K, "mu": mu})


def greedy_eoptimal(basis: SpectralBasis, K: int, M: int) -> SamplingSet:
    """Greedy maximization of the smallest singular value of V_SK.

    Below |S| = K the smallest of the |S| singular values is used, which
    extends the criterion to every step.
    """
    _check_budget(M, basis.n)
    vk = basis.low_frequency(K)
    selected: list[int] = []
    trace = []
    for _ in range(M):
        best_val, best_j = -np.inf, -1
        for j in range(basis.n):
            if j in selected:
                continue
            sv = np.linalg.svd(vk[selected + [j], :], compute_uv=False)
            val = float(sv[-1])
            if val > best_val:
                best_val, best_j = val, j
        selected.append(best_j)
        trace.append(best_val)
    return SamplingSet(tuple(selected), tuple(trace), "eopt", {"K": K, "mu": None})


def random_select(mode: str, basis: SpectralBasis, K: int, M: int,
                  seed: int, mu: float = DEFAULT_MU) -> SamplingSet:
    """Random sampling without replacement, uniform or leverage-weighted.

    Leverage mode draws sequentially with renormalization over the
    remaining nodes.  The trace records the agod objective of each prefix
    so random baselines plot on the same axis as the greedy methods.
    """
    _check_budget(M, basis.n)
    rng = rng_from(seed)
    if mode == "uniform":
        chosen = rng.choice(basis.n, size=M, replace=False).tolist()
    elif mode == "leverage":
        probs = leverage_scores(basis, K)
        remaining = np.arange(basis.n)
        weights = probs.copy()
        chosen = []
        for _ in range(M):
            pick = rng.choice(remaining, p=weights / weights.sum())
            chosen.append(int(pick))
            keep = remaining != pick
            remaining = remaining[keep]
            weights = weights[keep]
    else:
        raise ValueError(f"unknown random mode {mode!r}")
    state = AgodState(basis, K, mu)
    trace = []
    for j in chosen:
        state.add(j)
        trace.append(state.objective())
    return SamplingSet(tuple(chosen), tuple(trace), f"rand-{mode}",
                       {"K": K, "mu": mu, "seed": seed})


def save_sampling_csv(sampling: SamplingSet, path) -> None:
    """Write a selection as CSV rows `step,node,objective`."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("step,node,objective\n")
        for step, (node, obj) in enumerate(
                zip(sampling.indices, sampling.objective_trace), start=1):
            fh.write(f"{step},{node},{obj!r}\n")
