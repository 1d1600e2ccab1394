"""Random-projector spectral diagnostics over a schedule of graph orders.

A batch of k random unit directions in R^d induces an accumulator
A = sum_j v_j v_j^T.  Two witnesses of rank collapse are tracked: the
ordered linear deflation product prod_j (I - v_j v_j^T) and the exponential
witness Tr exp(-alpha A), evaluated in the log domain so collapse depths
hundreds of decades below underflow remain quotable.  A survivor subspace
of rank r shows up as Tr exp(-alpha A) >= r at every alpha, which is what
the criticality decision exploits.

All randomness flows from explicit integer seeds; records are pure
functions of (configuration, n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from . import spectral

__all__ = [
    "MissProbabilityModel",
    "DirectionBatch",
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "DecisionThresholds",
    "SeedSchedule",
    "ConstraintRestricted",
    "miss_probability",
    "chernoff_miss",
    "mean_field_trace",
    "deflation_probability",
    "deflation_mc",
    "sample_directions",
    "build_accumulator",
    "linear_witness",
    "exp_witness",
    "lyapunov_rate",
    "slope_fit",
    "run_diagnostics",
    "decide_critical",
    "control_record",
]

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class MissProbabilityModel:
    """Sampling model: k unit directions in R^d against a rank-r subspace."""

    k: int
    r: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if not (1 <= self.r <= self.d):
            raise ValueError(f"need 1 <= r <= d, got r={self.r}, d={self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


def miss_probability(model: MissProbabilityModel) -> float:
    """First-moment bound exp(-k r / d) on missing a rank-r subspace."""
    return math.exp(-model.k * model.r / model.d)


def chernoff_miss(model: MissProbabilityModel, variant: str = "table") -> float:
    """Chernoff lower-tail bound on accumulating too little subspace overlap.

    With mu = k r / d and delta = 1 - (r - 1) / mu, the ``table`` variant is
    exp(-mu delta^2 / 2), the form consistent with the tabulated reference
    values.  The ``printed`` variant, exp(-(k r / 2d)(1 - (r - 1)/k)^2),
    is retained for comparison but does not reproduce them.
    """
    mu = model.k * model.r / model.d
    if variant == "table":
        delta = 1.0 - (model.r - 1) / mu
        if delta <= 0.0:
            raise ValueError(
                f"rank {model.r} too large for the concentration regime "
                f"(mu = {mu:g})")
        return math.exp(-mu * delta * delta / 2.0)
    if variant == "printed":
        delta = 1.0 - (model.r - 1) / model.k
        return math.exp(-(model.k * model.r / (2.0 * model.d)) * delta * delta)
    raise ValueError(f"unknown variant {variant!r}")


def mean_field_trace(d: int, k: int, alpha: float) -> float:
    """log10 of the mean-field trace d * exp(-alpha k / d).

    Log-domain return keeps deep-collapse regimes (hundreds of decades
    below the smallest subnormal) representable.
    """
    if d < 1 or k < 1:
        raise ValueError(f"d and k must be >= 1, got d={d}, k={k}")
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return math.log10(d) - (alpha * k / d) / _LN10


def deflation_probability(d: int, k: int) -> float:
    """Expected squared residual (1 - 1/d)^k of k sequential deflations."""
    if d < 2 or k < 0:
        raise ValueError(f"need d >= 2 and k >= 0, got d={d}, k={k}")
    return (1.0 - 1.0 / d) ** k


def deflation_mc(d: int, k: int, trials: int, seed: int) -> tuple[float, float]:
    """Monte Carlo estimate of the deflation residual with its standard error.

    Each trial deflates a random unit target through k independent random
    unit directions and records the remaining squared norm.  The estimator
    is unbiased for (1 - 1/d)^k; independence of successive directions makes
    the expectation telescope exactly.
    """
    if trials < 2:
        raise ValueError(f"trials must be >= 2, got {trials}")
    if d < 2 or k < 0:
        raise ValueError(f"need d >= 2 and k >= 0, got d={d}, k={k}")
    rng = np.random.default_rng(seed)
    targets = rng.normal(size=(trials, d))
    targets /= np.linalg.norm(targets, axis=1, keepdims=True)
    for _ in range(k):
        directions = rng.normal(size=(trials, d))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        overlaps = np.einsum("td,td->t", targets, directions)
        targets -= overlaps[:, None] * directions
    residuals = np.einsum("td,td->t", targets, targets)
    estimate = float(residuals.mean())
    std_error = float(residuals.std(ddof=1) / math.sqrt(trials))
    return estimate, std_error


@dataclass(frozen=True)
class DirectionBatch:
    """k unit directions in R^d with the seed that produced them."""

    d: int
    k: int
    seed: int
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.vectors.shape != (self.k, self.d):
            raise ValueError(
                f"vectors must have shape ({self.k}, {self.d}), "
                f"got {self.vectors.shape}")


def sample_directions(d: int, k: int, seed: int) -> DirectionBatch:
    """Draw k iid uniform unit directions in R^d from one explicit seed.

    Row-normalised standard Gaussians; requires d >= 2 and k >= 1.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    g = np.random.default_rng(seed).normal(loc=0.0, scale=1.0, size=(k, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    if not np.all(norms > 0):
        raise RuntimeError("degenerate zero-norm draw")
    return DirectionBatch(d=d, k=k, seed=seed, vectors=g / norms)


def build_accumulator(batch: DirectionBatch) -> np.ndarray:
    """Accumulator A = sum_j v_j v_j^T; trace equals k by construction."""
    if batch.k == 0:
        return np.zeros((batch.d, batch.d))
    a = batch.vectors.T @ batch.vectors
    return (a + a.T) * 0.5


def linear_witness(batch: DirectionBatch) -> tuple[float, float, float]:
    """Trace and eigenvalue extremes of the ordered deflation product.

    Computes P = (I - v_1 v_1^T)(I - v_2 v_2^T) ... in index order; the
    product is not symmetric, so the full non-Hermitian spectrum is taken.
    Returns (trace, min real part, max |imaginary part|); the empty batch
    yields (d, 1, 0) from P = I.
    """
    d = batch.d
    p = np.eye(d)
    for v in batch.vectors:
        p -= np.outer(p @ v, v)
    eigenvalues = np.linalg.eigvals(p)
    return (float(np.trace(p).real),
            float(eigenvalues.real.min()),
            float(np.abs(eigenvalues.imag).max()))


def _hermitian_eigenvalues(A) -> np.ndarray:
    M = np.asarray(A)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0:
        raise ValueError(f"A must be a square matrix, got shape {M.shape}")
    scale = float(np.abs(M).max())
    if np.allclose(M, M.conj().T, atol=1e-12 * max(scale, 1.0)):
        return np.linalg.eigvalsh(M)
    return np.linalg.eigvals(M)


def exp_witness(A, alpha: float) -> float:
    """log10 of Tr exp(-alpha A) through the eigenvalues of A.

    Goes through the spectral kernel's shifted log-sum-exp, so collapse
    values far below 1e-300 are returned faithfully.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return spectral.log_trace_exp(_hermitian_eigenvalues(A), alpha)


def lyapunov_rate(A, alpha: float) -> float:
    """Boltzmann-weighted mean eigenvalue sum(l e^{-a l}) / sum(e^{-a l}).

    At alpha = 0 this is the plain spectral mean (k/d for an accumulator);
    as alpha grows it tracks the lower spectral edge.  Weights are shifted
    before exponentiation so large alpha stays finite.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    lam = np.asarray(_hermitian_eigenvalues(A), dtype=np.complex128)
    exponents = (-alpha * lam).real
    shift = exponents.max()
    weights = np.exp(exponents - shift)
    value = np.sum(lam * weights) / np.sum(weights)
    return float(value.real)


def slope_fit(alphas: Sequence[float], log10_traces: Sequence[float]) -> float:
    """Least-squares slope of log10 trace against alpha.

    Needs at least two distinct alpha values.
    """
    x = np.asarray(alphas, dtype=float)
    y = np.asarray(log10_traces, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise ValueError("need two or more (alpha, log10 trace) pairs")
    if float(x.max() - x.min()) == 0.0:
        raise ValueError("alphas must not all coincide")
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))


class SeedSchedule:
    """Embedding where n enters only through a per-(seed, n) derived stream.

    Each graph order gets statistically independent directions; no rank
    structure is planted, so witnesses stay at their bulk values.
    """

    def batch(self, d: int, k: int, seed: int, n: int) -> DirectionBatch:
        derived = int(np.random.SeedSequence((seed, n)).generate_state(
            1, np.uint64)[0])
        return sample_directions(d, k, derived)


class ConstraintRestricted:
    """Embedding confining directions to a survivor-subspace complement.

    The rank profile maps n to the survivor rank r(n); the first r
    coordinates of the same per-seed Gaussian draw are zeroed before
    normalisation, so directions live in the orthogonal complement of a
    fixed rank-r subspace and Tr exp(-alpha A) can never fall below r.
    Rank 0 reproduces the unrestricted draw and collapses fully.
    """

    def __init__(self, rank_profile: Mapping[int, int] | Callable[[int], int]):
        if callable(rank_profile):
            self._rank_of = rank_profile
        else:
            profile = dict(rank_profile)
            self._rank_of = profile.__getitem__

    def rank(self, n: int) -> int:
        return int(self._rank_of(n))

    def batch(self, d: int, k: int, seed: int, n: int) -> DirectionBatch:
        if d < 2 or k < 1:
            raise ValueError(f"need d >= 2 and k >= 1, got d={d}, k={k}")
        r = self.rank(n)
        if not (0 <= r < d):
            raise ValueError(f"rank profile must satisfy 0 <= r < d, got {r}")
        g = np.random.default_rng(seed).normal(loc=0.0, scale=1.0, size=(k, d))
        g[:, :r] = 0.0
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        if not np.all(norms > 0):
            raise RuntimeError("degenerate zero-norm draw")
        return DirectionBatch(d=d, k=k, seed=seed, vectors=g / norms)


def _resolve_embedding(embedding) -> Any:
    if embedding is None or embedding == "seed-schedule":
        return SeedSchedule()
    if isinstance(embedding, str):
        raise ValueError(
            f"unknown embedding {embedding!r}; pass 'seed-schedule' or an "
            f"object with a batch(d, k, seed, n) method")
    if not hasattr(embedding, "batch"):
        raise ValueError("embedding must provide a batch(d, k, seed, n) method")
    return embedding


_DEFAULT_ALPHAS = (3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 40.0)
_DEFAULT_SEEDS = (11, 23, 42, 73, 101, 137, 211, 307, 401, 509)


@dataclass(frozen=True)
class DiagnosticsConfig:
    """Sweep configuration: geometry, alpha grid, seed ensemble, embedding."""

    d: int = 24
    k: int = 100
    alpha_grid: tuple[float, ...] = _DEFAULT_ALPHAS
    seeds: tuple[int, ...] = _DEFAULT_SEEDS
    embedding: Any = "seed-schedule"
    thresholds: "DecisionThresholds | None" = None

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        grid = tuple(float(a) for a in self.alpha_grid)
        if not grid or any(a <= 0 for a in grid):
            raise ValueError("alpha_grid must be non-empty and positive")
        if sorted(grid) != list(grid) or len(set(grid)) != len(grid):
            raise ValueError("alpha_grid must be strictly increasing")
        object.__setattr__(self, "alpha_grid", grid)
        seeds = tuple(int(s) for s in self.seeds)
        if not seeds:
            raise ValueError("seeds must be non-empty")
        object.__setattr__(self, "seeds", seeds)


@dataclass(frozen=True)
class DecisionThresholds:
    """Criticality gates; unset fields fall back to config-derived defaults."""

    tau_exp_log10: float | None = None
    tau_lin: float | None = None


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Seed-averaged witnesses for one graph order n.

    ``alpha`` is the decision point (largest grid value); ``log10_tr_exp``
    is the seed-mean log10 exponential witness there, ``trace_grid`` holds
    the same mean at every grid alpha.  ``critical`` is None until the
    record has been judged against its neighbours, and stays None when a
    neighbour is missing.
    """

    n: int
    d: int
    k: int
    alpha: float
    log10_tr_exp: float
    tr_lin: float
    min_re: float
    max_im: float
    slope: float
    lambda_L: float
    rho_H: float
    critical: bool | None = None
    trace_grid: tuple[tuple[float, float], ...] = field(default=(), repr=False)
    error: str | None = None


def _compute_record(config: DiagnosticsConfig, n: int,
                    embedding) -> DiagnosticsRecord:
    grid = config.alpha_grid
    alpha_decision = grid[-1]
    per_alpha = np.zeros(len(grid))
    tr_lin = min_re = max_im = lam_l = rho_h = 0.0
    count = 0
    for seed in config.seeds:
        batch = embedding.batch(config.d, config.k, seed, n)
        accumulator = build_accumulator(batch)
        lin_tr, lin_min, lin_max = linear_witness(batch)
        eigenvalues = _hermitian_eigenvalues(accumulator)
        for idx, alpha in enumerate(grid):
            per_alpha[idx] += spectral.log_trace_exp(eigenvalues, alpha)
        tr_lin += lin_tr
        min_re += lin_min
        max_im += lin_max
        lam_l += lyapunov_rate(accumulator, alpha_decision)
        rho_h += spectral.spectral_norm(accumulator, tol=1e-10, max_iter=2000)
        count += 1
    per_alpha /= count
    tr_lin /= count
    min_re /= count
    max_im /= count
    lam_l /= count
    rho_h /= count
    if len(grid) >= 2:
        slope = slope_fit(grid, per_alpha)
    else:
        # Single-alpha sweeps are anchored at the exact Tr exp(0 A) = d point
        # so the reported slope is the true secant of the trace curve.
        slope = (per_alpha[0] - math.log10(config.d)) / grid[0]
    return DiagnosticsRecord(
        n=n, d=config.d, k=config.k, alpha=alpha_decision,
        log10_tr_exp=float(per_alpha[-1]), tr_lin=tr_lin, min_re=min_re,
        max_im=max_im, slope=float(slope), lambda_L=lam_l, rho_H=rho_h,
        critical=None,
        trace_grid=tuple((a, float(t)) for a, t in zip(grid, per_alpha)),
    )


def run_diagnostics(config: DiagnosticsConfig, n_values: Sequence[int],
                    embedding=None) -> list[DiagnosticsRecord]:
    """One seed-averaged record per graph order, judged for criticality.

    Orders are deduplicated and processed ascending.  A numerical failure
    at one order is captured on its record (``error`` field, NaN witnesses)
    without aborting the sweep.  Criticality needs both neighbours, so the
    first and last records always stay indeterminate.
    """
    resolved = _resolve_embedding(
        embedding if embedding is not None else config.embedding)
    orders = sorted(set(int(n) for n in n_values))
    if not orders:
        raise ValueError("n_values must be non-empty")
    records: list[DiagnosticsRecord] = []
    for n in orders:
        try:
            records.append(_compute_record(config, n, resolved))
        except (np.linalg.LinAlgError, spectral.PowerIterationError) as exc:
            nan = float("nan")
            records.append(DiagnosticsRecord(
                n=n, d=config.d, k=config.k, alpha=config.alpha_grid[-1],
                log10_tr_exp=nan, tr_lin=nan, min_re=nan, max_im=nan,
                slope=nan, lambda_L=nan, rho_H=nan, critical=None,
                error=str(exc)))
    judged = []
    for idx, record in enumerate(records):
        before = records[idx - 1] if idx > 0 else None
        after = records[idx + 1] if idx + 1 < len(records) else None
        verdict = decide_critical(record, config.thresholds, (before, after))
        judged.append(replace(record, critical=verdict))
    return judged


def decide_critical(record: DiagnosticsRecord,
                    thresholds: DecisionThresholds | None = None,
                    neighbors: tuple[DiagnosticsRecord | None,
                                     DiagnosticsRecord | None] = (None, None),
                    ) -> bool | None:
    """Three-way conjunction marking a collapse order.

    Fires only when (a) the exponential witness sits at or below the
    threshold (default: log-midpoint between the mean-field trace and 1 at
    the decision alpha), (b) the linear witness is strictly locally
    extremal against both neighbours, and (c) the accumulator norm is
    strictly locally extremal.  Missing neighbours or a failed record make
    the verdict indeterminate (None).
    """
    if record.error is not None:
        return None
    before, after = neighbors
    if before is None or after is None:
        return None
    if before.error is not None or after.error is not None:
        return None
    gates = thresholds or DecisionThresholds()
    tau = gates.tau_exp_log10
    if tau is None:
        tau = 0.5 * mean_field_trace(record.d, record.k, record.alpha)
    if not (record.log10_tr_exp <= tau):
        return False
    if gates.tau_lin is not None and not (record.tr_lin <= gates.tau_lin):
        return False
    lin_extremal = ((record.tr_lin < before.tr_lin and record.tr_lin < after.tr_lin)
                    or (record.tr_lin > before.tr_lin and record.tr_lin > after.tr_lin))
    rho_extremal = ((record.rho_H < before.rho_H and record.rho_H < after.rho_H)
                    or (record.rho_H > before.rho_H and record.rho_H > after.rho_H))
    return bool(lin_extremal and rho_extremal)


def control_record(coloring, config: DiagnosticsConfig) -> DiagnosticsRecord:
    """Diagnostics for a control colouring under the restricted embedding.

    An explicit good-colouring witness certifies at least a one-dimensional
    survivor subspace, so the control is evaluated at the certified minimum
    rank 1; the exponential witness then cannot fall below 1 and the record
    can never be judged critical (it also has no neighbours, so the verdict
    is indeterminate by construction).
    """
    embedding = ConstraintRestricted({int(coloring.v): 1})
    record = _compute_record(config, int(coloring.v), embedding)
    verdict = decide_critical(record, config.thresholds, (None, None))
    return replace(record, critical=verdict)
