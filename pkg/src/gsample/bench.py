"""Config-driven experiment runner.

Experiments are described by flat `key = value` spec files (lists are
comma-separated) and produce CSV rows
`study,graph,signal,method,sweep,trial,value,wall_ms,seed`.  Every data
column is a pure function of the spec, so reruns are byte-identical
regardless of thread count; wall_ms is the only non-reproducible column.

Studies:

* rmse_vs_size   - reconstruction RMSE as the sampling budget grows;
* rmse_vs_snr    - RMSE under varying observation noise, budget = bandwidth;
* rmse_vs_n      - RMSE across graph sizes with bandwidth n/20;
* objective_gap  - max-diag versus log-det objective values along greedy paths;
* suboptimality  - exact relative suboptimality on exhaustively solvable graphs;
* alpha          - empirical supermodularity constants (oracle subcommand only).
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .filters import approximate_lowpass, exact_lowpass, rotation_budget
from .graphs import build_laplacian, gen_community, gen_er, gen_sensor
from .oracle import (COMB_GUARD, empirical_alpha, exhaustive_optimum,
                     relative_suboptimality)
from .reconstruction import (biased_reconstruct, blue_reconstruct,
                             filter_reconstruct, rmse, snr_to_sigma2)
from .rng import RNG_NAME, child_seed
from .selection import (DEFAULT_MU, greedy_aoptimal, greedy_doptimal,
                        greedy_eoptimal, greedy_select, objective_agod,
                        objective_dopt, objective_fagod, random_select)
from .spectral import SIGNAL_MODELS, eigendecompose, gen_signal, observe

THREADS_ENV = "GSAMPLE_THREADS"

RMSE_STUDIES = ("rmse_vs_size", "rmse_vs_snr", "rmse_vs_n")
RUN_STUDIES = RMSE_STUDIES + ("objective_gap", "suboptimality")
ALL_STUDIES = RUN_STUDIES + ("alpha",)

GRAPH_MODELS = ("G1", "G2", "G3")

METHOD_NAMES = ("agod", "fagod", "fagod-exact", "god", "dopt", "aopt",
                "eopt", "rand-uniform", "rand-leverage")

GAP_CURVES = ("G-G", "G-D", "D-D")

CSV_HEADER = "study,graph,signal,method,sweep,trial,value,wall_ms,seed"

_SPEC_KEYS = ("study", "graph", "signal", "methods", "n", "K", "mu", "kappa0",
              "J", "trials", "base_seed", "sweep", "sigma2", "out", "knn",
              "p", "max_set_size")


class SpecError(ValueError):
    """Raised for malformed or inconsistent experiment specs."""


@dataclass(frozen=True)
class ExperimentSpec:
    study: str
    graph: str = "G1"
    signal: str = "GS1"
    methods: tuple = ()
    n: int = 400
    K: object = "model"       # int, "model", or "auto" (= n // 20)
    mu: float = DEFAULT_MU
    J: object = "auto"        # int or "auto" (= ceil(6 n log10 n))
    trials: int = 150
    base_seed: int = 0
    sweep: tuple = ()
    sigma2: float = 5e-3
    out: str = ""
    knn: int = 6
    er_p: float = 0.05
    max_set_size: int | None = None


@dataclass(frozen=True)
class ResultRow:
    study: str
    graph: str
    signal: str
    method: str
    sweep: object
    trial: int
    value: float
    wall_ms: float
    seed: int


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    rows: tuple
    rng_name: str = RNG_NAME


# ---------------------------------------------------------------------------
# spec parsing and validation

_STUDY_DEFAULTS = {
    # study: (n, K, trials, sweep, methods)
    "rmse_vs_size": (400, "model", 150, (5, 10, 15, 20, 25, 30),
                     ("fagod", "rand-uniform")),
    "rmse_vs_snr": (400, "model", 150, (0.0, 5.0, 10.0, 15.0, 20.0),
                    ("fagod", "rand-uniform")),
    "rmse_vs_n": (400, "auto", 150, (100, 200, 300, 400),
                  ("fagod", "rand-uniform")),
    "objective_gap": (120, 10, 1, tuple(range(5, 41, 5)), GAP_CURVES),
    "suboptimality": (10, 2, 50, (2, 3, 4, 5, 6),
                      ("fagod-exact", "rand-uniform")),
    "alpha": (6, 2, 50, (0.01, 0.1, 1.0), ("agod",)),
}

_INT_SWEEP_STUDIES = ("rmse_vs_size", "rmse_vs_n", "objective_gap",
                      "suboptimality")


def _parse_scalar(key, value, lineno, source, kind):
    try:
        return kind(value)
    except ValueError:
        raise SpecError(
            f"{source}:{lineno}: {key} must be {kind.__name__}, got {value!r}") from None


def parse_spec_text(text: str, source: str = "<spec>") -> ExperimentSpec:
    """Parse and fully validate a flat key=value experiment spec."""
    data = {}
    linenos = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _SPEC_KEYS:
            raise SpecError(f"{source}:{lineno}: unknown key {key!r}")
        if key in data:
            raise SpecError(f"{source}:{lineno}: duplicate key {key!r}")
        if not value:
            raise SpecError(f"{source}:{lineno}: empty value for {key!r}")
        data[key] = value
        linenos[key] = lineno

    def anchor(key):
        return f"{source}:{linenos[key]}"

    if "study" not in data:
        raise SpecError(f"{source}: missing required key 'study'")
    study = data["study"]
    if study not in ALL_STUDIES:
        raise SpecError(f"{anchor('study')}: unknown study {study!r} "
                        f"(expected one of {', '.join(ALL_STUDIES)})")
    def_n, def_k, def_trials, def_sweep, def_methods = _STUDY_DEFAULTS[study]

    graph = data.get("graph", "G1")
    if graph not in GRAPH_MODELS:
        raise SpecError(f"{anchor('graph')}: unknown graph model {graph!r}")
    signal = data.get("signal", "GS1")
    if signal not in SIGNAL_MODELS:
        raise SpecError(f"{anchor('signal')}: unknown signal model {signal!r}")

    if study in ("objective_gap", "alpha") and "methods" in data:
        raise SpecError(f"{anchor('methods')}: methods are fixed for study {study!r}")
    if "methods" in data:
        methods = tuple(m.strip() for m in data["methods"].split(","))
        for m in methods:
            if m not in METHOD_NAMES:
                raise SpecError(f"{anchor('methods')}: unknown method {m!r} "
                                f"(expected one of {', '.join(METHOD_NAMES)})")
        if len(set(methods)) != len(methods):
            raise SpecError(f"{anchor('methods')}: duplicate method")
    else:
        methods = def_methods

    if study == "rmse_vs_n" and "n" in data:
        raise SpecError(f"{anchor('n')}: n is swept in rmse_vs_n; remove the n key")
    n = _parse_scalar("n", data["n"], linenos.get("n"), source, int) \
        if "n" in data else def_n
    if n < 2:
        raise SpecError(f"{anchor('n')}: n must be at least 2")

    if "K" in data:
        K = data["K"] if data["K"] in ("model", "auto") else \
            _parse_scalar("K", data["K"], linenos["K"], source, int)
        if isinstance(K, int) and K < 1:
            raise SpecError(f"{anchor('K')}: K must be positive")
    else:
        K = def_k

    if "mu" in data and "kappa0" in data:
        raise SpecError(f"{anchor('kappa0')}: give either mu or kappa0, not both")
    if "mu" in data:
        mu = _parse_scalar("mu", data["mu"], linenos["mu"], source, float)
    elif "kappa0" in data:
        kappa0 = _parse_scalar("kappa0", data["kappa0"], linenos["kappa0"],
                               source, float)
        if kappa0 <= 1:
            raise SpecError(f"{anchor('kappa0')}: kappa0 must exceed 1")
        mu = 1.0 / (kappa0 - 1.0)
    else:
        mu = DEFAULT_MU
    if mu <= 0:
        raise SpecError(f"{anchor('mu')}: mu must be positive")

    if "J" in data:
        J = "auto" if data["J"] == "auto" else \
            _parse_scalar("J", data["J"], linenos["J"], source, int)
        if isinstance(J, int) and J < 0:
            raise SpecError(f"{anchor('J')}: J must be nonnegative")
    else:
        J = "auto"

    trials = _parse_scalar("trials", data["trials"], linenos.get("trials"),
                           source, int) if "trials" in data else def_trials
    if trials < 1:
        raise SpecError(f"{anchor('trials')}: trials must be at least 1")

    base_seed = _parse_scalar("base_seed", data["base_seed"],
                              linenos.get("base_seed"), source, int) \
        if "base_seed" in data else 0

    if "sweep" in data:
        tokens = [t.strip() for t in data["sweep"].split(",") if t.strip()]
        if not tokens:
            raise SpecError(f"{anchor('sweep')}: sweep must not be empty")
        kind = int if study in _INT_SWEEP_STUDIES else float
        sweep = tuple(_parse_scalar("sweep", t, linenos["sweep"], source, kind)
                      for t in tokens)
    else:
        sweep = def_sweep

    sigma2 = 5e-3
    if "sigma2" in data:
        if study == "rmse_vs_snr":
            raise SpecError(f"{anchor('sigma2')}: rmse_vs_snr derives sigma2 "
                            "from the swept SNR")
        sigma2 = _parse_scalar("sigma2", data["sigma2"], linenos["sigma2"],
                               source, float)
        if sigma2 < 0:
            raise SpecError(f"{anchor('sigma2')}: sigma2 must be nonnegative")

    if "max_set_size" in data and study != "alpha":
        raise SpecError(f"{anchor('max_set_size')}: max_set_size applies to "
                        "the alpha study only")
    max_set_size = _parse_scalar("max_set_size", data["max_set_size"],
                                 linenos["max_set_size"], source, int) \
        if "max_set_size" in data else None

    knn = _parse_scalar("knn", data["knn"], linenos.get("knn"), source, int) \
        if "knn" in data else 6
    er_p = _parse_scalar("p", data["p"], linenos.get("p"), source, float) \
        if "p" in data else 0.05
    out = data.get("out", f"{study}.csv")

    spec = ExperimentSpec(study=study, graph=graph, signal=signal,
                          methods=methods, n=n, K=K, mu=mu, J=J,
                          trials=trials, base_seed=base_seed, sweep=sweep,
                          sigma2=sigma2, out=out, knn=knn, er_p=er_p,
                          max_set_size=max_set_size)
    _validate_consistency(spec, source, linenos)
    return spec


def parse_spec_file(path) -> ExperimentSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise SpecError(f"{path}: no such spec file") from None
    return parse_spec_text(text, source=str(path))


def resolve_k(spec: ExperimentSpec, n: int) -> int:
    if spec.K == "model":
        return SIGNAL_MODELS[spec.signal][0]
    if spec.K == "auto":
        return max(1, n // 20)
    return int(spec.K)


def resolve_j(spec: ExperimentSpec, n: int) -> int:
    return rotation_budget(n) if spec.J == "auto" else int(spec.J)


def _validate_consistency(spec: ExperimentSpec, source, linenos):
    def where(key):
        return f"{source}:{linenos[key]}" if key in linenos else source

    sizes = spec.sweep if spec.study == "rmse_vs_n" else (spec.n,)
    for n in sizes:
        k_eff = resolve_k(spec, n)
        if k_eff > n:
            raise SpecError(f"{where('K')}: bandwidth K={k_eff} exceeds n={n}")
        if k_eff < 1:
            raise SpecError(f"{where('K')}: resolved bandwidth is below 1 at n={n}")
    if spec.study in ("rmse_vs_size", "suboptimality", "objective_gap"):
        for m in spec.sweep:
            if not 1 <= m <= spec.n:
                raise SpecError(f"{where('sweep')}: budget {m} out of range "
                                f"[1, {spec.n}]")
    if spec.study == "suboptimality":
        worst = max(math.comb(spec.n, m) for m in spec.sweep)
        if worst > COMB_GUARD:
            raise SpecError(f"{where('n')}: exhaustive search needs "
                            f"C(n, M) <= {COMB_GUARD}")
    if spec.study == "alpha":
        if spec.n > 8:
            raise SpecError(f"{where('n')}: alpha enumeration limited to n <= 8")
        if any(v <= 0 for v in spec.sweep):
            raise SpecError(f"{where('sweep')}: alpha study sweeps mu values > 0")
        m = spec.max_set_size if spec.max_set_size is not None else spec.n - 1
        if not 0 <= m <= spec.n - 1:
            raise SpecError(f"{where('max_set_size')}: must lie in [0, n-1]")
    if spec.study == "rmse_vs_n" and spec.graph == "G3" and min(spec.sweep) < 8:
        raise SpecError(f"{where('sweep')}: community graphs need n >= 8")


def apply_desk_preset(spec: ExperimentSpec) -> ExperimentSpec:
    """Desk-scale preset: 50 trials, n = 200 where n is a free parameter."""
    updates = {"trials": min(spec.trials, 50)}
    if spec.study in ("rmse_vs_size", "rmse_vs_snr"):
        updates["n"] = 200
    return replace(spec, **updates)


# ---------------------------------------------------------------------------
# per-trial machinery

def _make_graph(spec: ExperimentSpec, n: int, trial: int):
    seed = child_seed(spec.base_seed, "graph", spec.graph, n, trial)
    if spec.graph == "G1":
        # toy instances can be smaller than the default neighbour count
        return gen_sensor(n, min(spec.knn, n - 1), seed)
    if spec.graph == "G2":
        return gen_er(n, spec.er_p, seed)
    return gen_community(n, seed)


class _TrialContext:
    """Lazily built per-trial objects shared by every method and sweep value."""

    def __init__(self, spec: ExperimentSpec, n: int, trial: int):
        self.spec = spec
        self.n = n
        self.trial = trial
        self.K = resolve_k(spec, n)
        self.mu = spec.mu
        self.graph = _make_graph(spec, n, trial)
        self.basis = eigendecompose(build_laplacian(self.graph))
        self._signal = None
        self._approx = None
        self._exact = None

    @property
    def signal(self):
        if self._signal is None:
            bandwidth = self.K if self.spec.K == "auto" else None
            self._signal = gen_signal(
                self.spec.signal, self.basis,
                child_seed(self.spec.base_seed, "signal", self.spec.signal,
                           self.n, self.trial),
                bandwidth=bandwidth)
        return self._signal

    def approx_filter(self):
        if self._approx is None:
            lap = build_laplacian(self.graph)
            self._approx = approximate_lowpass(lap, self.K,
                                               resolve_j(self.spec, self.n))
        return self._approx

    def exact_filter(self):
        if self._exact is None:
            self._exact = exact_lowpass(self.basis, self.K)
        return self._exact

    def select(self, method: str, M: int):
        if method == "agod":
            return greedy_select("agod", M, basis=self.basis, K=self.K, mu=self.mu)
        if method == "god":
            return greedy_select("god", M, basis=self.basis, K=self.K)
        if method == "fagod":
            return greedy_select("fagod", M, filt=self.approx_filter(), mu=self.mu)
        if method == "fagod-exact":
            return greedy_select("fagod", M, filt=self.exact_filter(), mu=self.mu)
        if method == "dopt":
            return greedy_doptimal(self.basis, self.K, self.mu, M)
        if method == "aopt":
            return greedy_aoptimal(self.basis, self.K, self.mu, M)
        if method == "eopt":
            return greedy_eoptimal(self.basis, self.K, M)
        if method in ("rand-uniform", "rand-leverage"):
            mode = method.split("-", 1)[1]
            seed = child_seed(spec_label(self.spec), "select", method, self.n,
                              self.trial)
            return random_select(mode, self.basis, self.K, M, seed, mu=self.mu)
        raise ValueError(f"unknown method {method!r}")

    def reconstruct(self, method: str, obs, use_blue: bool):
        if method == "fagod":
            return filter_reconstruct(obs, self.approx_filter().filter, self.mu)
        if method == "fagod-exact":
            return filter_reconstruct(obs, self.exact_filter(), self.mu)
        if use_blue and len(obs.sample_indices) >= self.K:
            return blue_reconstruct(obs, self.basis, self.K)
        return biased_reconstruct(obs, self.basis, self.K, self.mu)


def spec_label(spec: ExperimentSpec) -> str:
    return f"{spec.base_seed}|{spec.study}"


def _trial_seed(spec: ExperimentSpec, trial: int, sweep_value) -> int:
    return child_seed(spec.base_seed, spec.study, trial, sweep_value)


def _rmse_trial_rows(spec: ExperimentSpec, trial: int, use_blue: bool):
    rows = []
    if spec.study == "rmse_vs_n":
        contexts = {n: _TrialContext(spec, int(n), trial) for n in spec.sweep}
    else:
        contexts = {spec.n: _TrialContext(spec, spec.n, trial)}
    for method in spec.methods:
        for sweep_value in spec.sweep:
            t0 = time.perf_counter()
            if spec.study == "rmse_vs_n":
                ctx = contexts[sweep_value]
                budget, sigma2 = ctx.K, spec.sigma2
            elif spec.study == "rmse_vs_snr":
                ctx = contexts[spec.n]
                budget, sigma2 = ctx.K, snr_to_sigma2(sweep_value)
            else:
                ctx = contexts[spec.n]
                budget, sigma2 = int(sweep_value), spec.sigma2
            seed = _trial_seed(spec, trial, sweep_value)
            try:
                sampling = ctx.select(method, budget)
                obs = observe(ctx.signal, sampling.indices, sigma2,
                              seed=child_seed(seed, "noise", method))
                rec = ctx.reconstruct(method, obs, use_blue)
                value = rmse(rec.values, ctx.signal.values)
            except Exception as exc:
                raise RuntimeError(
                    f"{spec.study} failed (method={method}, sweep={sweep_value}, "
                    f"trial={trial}): {exc}") from exc
            wall_ms = (time.perf_counter() - t0) * 1e3
            rows.append(ResultRow(spec.study, spec.graph, spec.signal, method,
                                  sweep_value, trial, value, wall_ms, seed))
    return rows


def _gap_trial_rows(spec: ExperimentSpec, trial: int):
    """Objective values of the max-diag and log-det criteria along greedy paths."""
    ctx = _TrialContext(spec, spec.n, trial)
    m_max = max(spec.sweep)
    t0 = time.perf_counter()
    agod_set = ctx.select("agod", m_max)
    dopt_set = ctx.select("dopt", m_max)
    wall_ms = (time.perf_counter() - t0) * 1e3 / (3 * len(spec.sweep))
    values = {}
    for m in spec.sweep:
        prefix = agod_set.indices[:m]
        gg = objective_agod(prefix, ctx.basis, ctx.K, ctx.mu)
        gd = objective_dopt(prefix, ctx.basis, ctx.K, ctx.mu)
        dd = objective_dopt(dopt_set.indices[:m], ctx.basis, ctx.K, ctx.mu)
        # max diag dominates the geometric mean of the eigenvalues
        if math.log(gg) < gd - 1e-9:
            raise RuntimeError(f"log max-diag fell below normalized log-det "
                               f"at M={m} (trial {trial})")
        values[m] = {"G-G": gg, "G-D": gd, "D-D": dd}
    for curve in ("G-G", "D-D"):
        series = [values[m][curve] for m in sorted(spec.sweep)]
        if any(b > a + 1e-9 for a, b in zip(series, series[1:])):
            raise RuntimeError(f"{curve} objective trace increased with the "
                               f"budget (trial {trial})")
    rows = []
    for curve in GAP_CURVES:
        for m in spec.sweep:
            rows.append(ResultRow(spec.study, spec.graph, spec.signal, curve,
                                  m, trial, values[m][curve], wall_ms,
                                  _trial_seed(spec, trial, m)))
    return rows


def _subopt_trial_rows(spec: ExperimentSpec, trial: int):
    """Relative suboptimality of each method on an exhaustively solved instance.

    The reference objective is the exact-filter max-diag criterion; every
    method's set is scored against the same exhaustive optimum.
    """
    ctx = _TrialContext(spec, spec.n, trial)
    T = ctx.exact_filter()

    def g(indices):
        return objective_fagod(indices, T, ctx.mu)

    m_max = max(spec.sweep)
    selections = {}
    for method in spec.methods:
        selections[method] = ctx.select(method, m_max)
    rows = []
    for m in sorted(spec.sweep):
        g_star, _ = exhaustive_optimum(g, spec.n, m)
        g_empty = g(())
        for method in spec.methods:
            t0 = time.perf_counter()
            # canonical order: a prefix equal to the argmin scores r = 0 exactly
            prefix = tuple(sorted(selections[method].indices[:m]))
            g_hat = g(prefix)
            gap = g_empty - g_star
            if gap <= 0:
                raise RuntimeError(f"degenerate suboptimality instance "
                                   f"(trial {trial}, M={m})")
            r = (g_hat - g_star) / gap
            wall_ms = (time.perf_counter() - t0) * 1e3
            rows.append(ResultRow(spec.study, spec.graph, spec.signal, method,
                                  m, trial, r, wall_ms,
                                  _trial_seed(spec, trial, m)))
    order = {m: i for i, m in enumerate(spec.methods)}
    rows.sort(key=lambda row: (order[row.method], row.sweep, row.trial))
    return rows


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV, "")
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("thread count must be at least 1")
    return threads


def run_experiment(spec: ExperimentSpec, threads: int | None = None,
                   use_blue: bool = False) -> ExperimentResult:
    """Execute a spec and return deterministic result rows.

    Trials run as independent work items on a bounded thread pool; rows
    are sorted by (method, sweep, trial) in spec order before returning,
    so scheduling never affects the output.
    """
    if spec.study not in RUN_STUDIES:
        raise SpecError(f"study {spec.study!r} runs through the oracle "
                        "subcommand, not run")
    threads = _resolve_threads(threads)

    def work(trial):
        if spec.study in RMSE_STUDIES:
            return _rmse_trial_rows(spec, trial, use_blue)
        if spec.study == "objective_gap":
            return _gap_trial_rows(spec, trial)
        return _subopt_trial_rows(spec, trial)

    if threads == 1:
        batches = [work(t) for t in range(spec.trials)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(work, range(spec.trials)))
    rows = [row for batch in batches for row in batch]
    method_order = {m: i for i, m in enumerate(
        GAP_CURVES if spec.study == "objective_gap" else spec.methods)}
    sweep_order = {v: i for i, v in enumerate(spec.sweep)}
    rows.sort(key=lambda r: (method_order[r.method], sweep_order[r.sweep], r.trial))
    expected = len(method_order) * len(spec.sweep) * spec.trials
    if len(rows) != expected:
        raise RuntimeError(f"row count {len(rows)} != expected {expected}")
    if spec.study in RMSE_STUDIES and any(r.value < 0 for r in rows):
        raise RuntimeError("negative RMSE value")
    return ExperimentResult(spec, tuple(rows))


def run_objective_gap(spec: ExperimentSpec,
                      threads: int | None = None) -> ExperimentResult:
    """Objective-gap study entry point (equivalent to run_experiment)."""
    if spec.study != "objective_gap":
        raise SpecError("run_objective_gap needs study = objective_gap")
    return run_experiment(spec, threads=threads)


def run_single(spec: ExperimentSpec, method: str, sweep_value, trial: int,
               use_blue: bool = False) -> ResultRow:
    """Recompute one row standalone (seed-lineage check hook)."""
    narrowed = replace(spec, methods=(method,))
    if spec.study in RMSE_STUDIES:
        rows = _rmse_trial_rows(narrowed, trial, use_blue)
    elif spec.study == "objective_gap":
        rows = _gap_trial_rows(spec, trial)
    elif spec.study == "suboptimality":
        rows = _subopt_trial_rows(narrowed, trial)
    else:
        raise SpecError(f"study {spec.study!r} has no single-row form")
    for row in rows:
        if row.method == method and row.sweep == sweep_value:
            return row
    raise ValueError(f"sweep value {sweep_value!r} not in spec sweep")


def run_alpha_certificate(spec: ExperimentSpec):
    """Empirical alpha for the loaded max-diag objective, per (instance, mu).

    Returns [(instance_label, AlphaReport)] ordered by (trial, mu).
    """
    if spec.study != "alpha":
        raise SpecError("run_alpha_certificate needs study = alpha")
    max_size = spec.max_set_size if spec.max_set_size is not None else spec.n - 1
    reports = []
    for trial in range(spec.trials):
        ctx = _TrialContext(spec, spec.n, trial)
        for mu in spec.sweep:
            def g(indices, _mu=mu):
                return objective_agod(indices, ctx.basis, ctx.K, _mu)
            report = empirical_alpha(g, spec.n, max_size, mu)
            reports.append((f"{spec.graph}-n{spec.n}-t{trial}", report))
    return reports


def run_subopt_reports(spec: ExperimentSpec):
    """Exact SuboptimalityReports for the first configured method.

    Returns [(instance_label, M, SuboptimalityReport)] for the oracle
    subcommand's CSV.
    """
    if spec.study != "suboptimality":
        raise SpecError("run_subopt_reports needs study = suboptimality")
    method = spec.methods[0]
    out = []
    for trial in range(spec.trials):
        ctx = _TrialContext(spec, spec.n, trial)
        T = ctx.exact_filter()

        def g(indices):
            return objective_fagod(indices, T, ctx.mu)

        selection = ctx.select(method, max(spec.sweep))
        for m in sorted(spec.sweep):
            report = relative_suboptimality(g, selection.indices[:m], spec.n, m)
            out.append((f"{spec.graph}-n{spec.n}-t{trial}", m, report))
    return out


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_result_csv(result: ExperimentResult, path) -> None:
    """Write rows under the fixed header; wall_ms is the only jittery column."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in result.rows:
            fh.write(",".join([r.study, r.graph, r.signal, r.method,
                               _fmt(r.sweep), str(r.trial), repr(float(r.value)),
                               f"{r.wall_ms:.3f}", str(r.seed)]) + "\n")
