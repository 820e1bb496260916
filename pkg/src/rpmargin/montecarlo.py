"""Seeded Monte Carlo estimators for projection-distortion rejection rates.

Every estimator draws one fresh projection matrix per (grid point, trial)
and counts how often a projected quantity's ratio to its original leaves
the tolerance band. Trial seeds derive only from (master_seed, n, t)
through :func:`mix_seed`, so a curve is a pure function of its
:class:`TrialConfig` and the input data, independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import bounds
from .data import BINARY, MULTICLASS, ONE_PARAMETER, LabeledDataset, LinearWitness, as_vector
from .datasets import GeneratedMulticlass, GeneratedPair
from .margin import (
    binary_margin,
    multiclass_margin,
    multiclass_margin_unnormalised,
    one_param_projected_margin,
)
from .projection import FAMILIES, GAUSSIAN, BlockProjection, ProjectionMatrix, new_projection, project_dataset

_MASK64 = (1 << 64) - 1

# 97.5% standard normal quantile, for two-sided 95% Wilson intervals.
_WILSON_Z = 1.959963984540054

MatrixFactory = Callable[[int, int, int], ProjectionMatrix]


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, n: int, t: int) -> int:
    """Derive the 64-bit seed for trial t at grid point n.

    Three chained splitmix64 finalizer rounds, absorbing master_seed, n
    and t in that order. This mixing function is part of the package's
    reproducibility contract: identical (master_seed, n, t) always maps
    to the identical trial seed.
    """
    h = _splitmix64(master_seed & _MASK64)
    h = _splitmix64(h ^ (n & _MASK64))
    h = _splitmix64(h ^ (t & _MASK64))
    return h


@dataclass(frozen=True)
class TrialConfig:
    """Grid of projection dimensions plus the shared trial parameters."""

    n_grid: tuple[int, ...]
    epsilon: float
    trials: int
    master_seed: int = 0
    family: str = GAUSSIAN

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if len(grid) == 0:
            raise ValueError("n_grid must be nonempty")
        if grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be strictly increasing and positive")
        object.__setattr__(self, "n_grid", grid)
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie strictly inside (0, 1), got {self.epsilon}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.master_seed <= _MASK64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown projection family {self.family!r}")


@dataclass(frozen=True)
class RejectionCurve:
    """Empirical rejection probabilities along a dimension grid.

    ``theory_bound`` carries the matching closed-form ceiling where one
    exists (None otherwise); confidence intervals are 95% Wilson.
    """

    n: np.ndarray
    rejections: np.ndarray
    trials: np.ndarray
    p_hat: np.ndarray
    ci_lo: np.ndarray
    ci_hi: np.ndarray
    epsilon: float
    theory_bound: np.ndarray | None = None


class MeanEstimate(NamedTuple):
    sample_mean: float
    standard_error: float


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in 0..trials")
    z = _WILSON_Z
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _default_factory(family: str) -> MatrixFactory:
    return lambda n, d, seed: new_projection(n, d, family, seed)


def _run_curve(
    cfg: TrialConfig,
    d: int,
    rejected,
    matrix_factory: MatrixFactory | None,
    theory: Callable[[int], float] | None = None,
) -> RejectionCurve:
    factory = matrix_factory or _default_factory(cfg.family)
    counts = []
    for n in cfg.n_grid:
        count = 0
        for t in range(cfg.trials):
            R = factory(n, d, mix_seed(cfg.master_seed, n, t))
            if rejected(R):
                count += 1
        counts.append(count)

    n_arr = np.array(cfg.n_grid, dtype=int)
    rej = np.array(counts, dtype=int)
    trials = np.full_like(n_arr, cfg.trials)
    p_hat = rej / cfg.trials
    ci = np.array([wilson_interval(k, cfg.trials) for k in counts])
    tb = None if theory is None else np.array([theory(n) for n in cfg.n_grid])
    return RejectionCurve(n_arr, rej, trials, p_hat, ci[:, 0], ci[:, 1], cfg.epsilon, tb)


def _unpack_pair(pair) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(pair, GeneratedPair):
        return pair.w, pair.x
    w, x = pair
    return as_vector(w), as_vector(x)


def reject_angle(pair, cfg: TrialConfig, matrix_factory: MatrixFactory | None = None) -> RejectionCurve:
    """Rejection rate of cosine preservation (half-open band).

    A trial is rejected when the ratio of the projected cosine to the
    original cosine falls outside [1 - eps, 1 + eps). Trials where a
    projected vector collapses to zero count as rejections.
    """
    w, x = _unpack_pair(pair)
    inner = float(w @ x)
    if inner == 0.0:
        raise ValueError("angle rejection is undefined for orthogonal pairs (zero inner product)")
    base = inner / (float(np.linalg.norm(w)) * float(np.linalg.norm(x)))
    lo, hi = 1.0 - cfg.epsilon, 1.0 + cfg.epsilon

    def rejected(R: ProjectionMatrix) -> bool:
        pw = R.entries @ w
        px = R.entries @ x
        nw = float(np.linalg.norm(pw))
        nx = float(np.linalg.norm(px))
        if nw == 0.0 or nx == 0.0:
            return True
        ratio = float(pw @ px) / (nw * nx) / base
        return not (lo <= ratio < hi)

    return _run_curve(cfg, w.shape[0], rejected, matrix_factory)


def reject_inner(pair, cfg: TrialConfig, matrix_factory: MatrixFactory | None = None) -> RejectionCurve:
    """Rejection rate of inner-product preservation (closed band).

    A trial is rejected when <Rw, Rx> / <w, x> falls outside
    [1 - eps, 1 + eps].
    """
    w, x = _unpack_pair(pair)
    inner = float(w @ x)
    if inner == 0.0:
        raise ValueError("inner-product rejection is undefined for orthogonal pairs")
    lo, hi = 1.0 - cfg.epsilon, 1.0 + cfg.epsilon

    def rejected(R: ProjectionMatrix) -> bool:
        ratio = float((R.entries @ w) @ (R.entries @ x)) / inner
        return not (lo <= ratio <= hi)

    return _run_curve(cfg, w.shape[0], rejected, matrix_factory)


def verify_angle_interval(pair, cfg: TrialConfig, matrix_factory: MatrixFactory | None = None) -> RejectionCurve:
    """Violation rate of the closed-form cosine-distortion interval.

    Counts trials whose projected cosine leaves the two-sided interval
    from :func:`rpmargin.bounds.angle_distortion_interval`; the attached
    theory bound is that interval's failure probability at each n.
    """
    w, x = _unpack_pair(pair)
    nw = float(np.linalg.norm(w))
    nx = float(np.linalg.norm(x))
    if nw == 0.0 or nx == 0.0:
        raise ValueError("zero vectors have no angle")
    base = float(w @ x) / (nw * nx)
    if base <= 0.0:
        raise ValueError("the distortion interval requires an acute pair (cosine > 0)")
    interval, tail = bounds.angle_distortion_interval(base, cfg.epsilon)

    def rejected(R: ProjectionMatrix) -> bool:
        pw = R.entries @ w
        px = R.entries @ x
        npw = float(np.linalg.norm(pw))
        npx = float(np.linalg.norm(px))
        if npw == 0.0 or npx == 0.0:
            return True
        cos = float(pw @ px) / (npw * npx)
        return not (interval.lo <= cos <= interval.hi)

    return _run_curve(cfg, w.shape[0], rejected, matrix_factory, theory=tail.failure_prob)


def verify_norm_tail(x, cfg: TrialConfig, matrix_factory: MatrixFactory | None = None) -> RejectionCurve:
    """Violation rate of the two-sided norm concentration band.

    Counts trials with ||Rx||^2 / ||x||^2 outside [1 - eps, 1 + eps];
    the attached theory bound is twice the one-sided chi-square tail.
    """
    x = as_vector(x)
    nx2 = float(x @ x)
    if nx2 == 0.0:
        raise ValueError("norm concentration is undefined for the zero vector")
    lo, hi = 1.0 - cfg.epsilon, 1.0 + cfg.epsilon

    def rejected(R: ProjectionMatrix) -> bool:
        px = R.entries @ x
        ratio = float(px @ px) / nx2
        return not (lo <= ratio <= hi)

    def theory(n: int) -> float:
        return 2.0 * bounds.chi2_tails(n, cfg.epsilon).upper

    return _run_curve(cfg, x.shape[0], rejected, matrix_factory, theory=theory)


def verify_mean(pair, n: int, trials: int, seed: int = 0, family: str = GAUSSIAN) -> MeanEstimate:
    """Sample mean and standard error of <Rw, Rx> over independent matrices."""
    if trials < 2:
        raise ValueError("at least two trials are needed for a standard error")
    if n < 1:
        raise ValueError("projection dimension must be positive")
    w, x = _unpack_pair(pair)
    vals = np.empty(trials)
    for t in range(trials):
        R = new_projection(n, w.shape[0], family, mix_seed(seed, n, t))
        vals[t] = (R.entries @ w) @ (R.entries @ x)
    return MeanEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(trials)))


def _pair_curves(
    pairs,
    n_grid: tuple[int, ...],
    trials: int,
    master_seed: int,
    epsilons: tuple[float, ...],
    stat: str,
    family: str = GAUSSIAN,
) -> dict[tuple[int, float], RejectionCurve]:
    """One matrix sweep over several pairs and tolerance bands.

    Internal fast path for the reproduction CLI. Trial seeds and
    arithmetic are identical to :func:`reject_angle` / :func:`reject_inner`
    (matrices depend only on (master_seed, n, t)), so each returned curve
    equals the public operation run with the matching TrialConfig.
    Returns {(pair_index, epsilon): curve}.
    """
    if stat not in ("angle", "inner"):
        raise ValueError(f"unknown pair statistic {stat!r}")
    info = []
    for pair in pairs:
        w, x = _unpack_pair(pair)
        inner = float(w @ x)
        if inner == 0.0:
            raise ValueError("pair rejection is undefined for orthogonal pairs")
        base_cos = inner / (float(np.linalg.norm(w)) * float(np.linalg.norm(x)))
        info.append((w, x, base_cos, inner))
    d = info[0][0].shape[0]

    counts = np.zeros((len(pairs), len(epsilons), len(n_grid)), dtype=int)
    for j, n in enumerate(n_grid):
        for t in range(trials):
            R = new_projection(n, d, family, mix_seed(master_seed, n, t))
            for i, (w, x, base_cos, inner) in enumerate(info):
                pw = R.entries @ w
                px = R.entries @ x
                if stat == "angle":
                    nw = float(np.linalg.norm(pw))
                    nx = float(np.linalg.norm(px))
                    ratio = np.nan if nw == 0.0 or nx == 0.0 else float(pw @ px) / (nw * nx) / base_cos
                    for k, eps in enumerate(epsilons):
                        if not (1.0 - eps <= ratio < 1.0 + eps):
                            counts[i, k, j] += 1
                else:
                    ratio = float(pw @ px) / inner
                    for k, eps in enumerate(epsilons):
                        if not (1.0 - eps <= ratio <= 1.0 + eps):
                            counts[i, k, j] += 1

    curves = {}
    n_arr = np.array(n_grid, dtype=int)
    trials_arr = np.full_like(n_arr, trials)
    for i in range(len(pairs)):
        for k, eps in enumerate(epsilons):
            rej = counts[i, k]
            ci = np.array([wilson_interval(int(c), trials) for c in rej])
            curves[(i, eps)] = RejectionCurve(
                n_arr, rej.copy(), trials_arr, rej / trials, ci[:, 0], ci[:, 1], eps
            )
    return curves


def _unpack_margin_data(data) -> tuple[LabeledDataset, LinearWitness]:
    if isinstance(data, GeneratedMulticlass):
        return data.dataset, data.witness
    dataset, witness = data
    if not isinstance(dataset, LabeledDataset) or not isinstance(witness, LinearWitness):
        raise ValueError("expected a GeneratedMulticlass or a (dataset, witness) pair")
    return dataset, witness


def _one_param_original_margin(S: LabeledDataset, u: np.ndarray) -> float:
    """Margin of the unprojected single-parameter construction.

    With block y of u written w_y, this is
    min (<w_y, x> - <w_{y'}, x>) / (||u|| sqrt(2) ||x||): the block-margin
    expression evaluated before any projection, where each block image of
    x is x itself.
    """
    L = S.num_classes
    W = u.reshape(L, S.dim)
    scores = S.points @ W.T                  # (m, L)
    nu = float(np.linalg.norm(u))
    nx = np.linalg.norm(S.points, axis=1)
    if np.any(nx == 0.0):
        raise ValueError("the one-parameter margin is undefined for zero points")
    best = np.inf
    for i in range(S.m):
        y = S.labels[i] - 1
        vals = (scores[i, y] - scores[i, :]) / (nu * math.sqrt(2.0) * nx[i])
        vals[y] = np.inf
        best = min(best, float(vals.min()))
    return best


def reject_margin(
    data,
    cfg: TrialConfig,
    normalised: bool = True,
    matrix_factory: MatrixFactory | None = None,
) -> RejectionCurve:
    """Rejection rate of margin preservation (half-open band).

    For each trial the dataset and the witness are projected with the same
    matrix and the margin gamma' of the projected witness is re-measured;
    the trial is rejected when gamma'/gamma falls outside [1-eps, 1+eps).
    Multiclass witnesses project per class vector; a one-parameter witness
    projects through the column-block structure (and is only defined in
    normalised form). ``data`` is a GeneratedMulticlass or a
    (dataset, witness) pair.
    """
    dataset, witness = _unpack_margin_data(data)

    if witness.kind == BINARY:
        u = witness.vector
        original = binary_margin(dataset, u, normalised)

        def projected_margin(R: ProjectionMatrix) -> float:
            return binary_margin(project_dataset(R, dataset), R.entries @ u, normalised)

        proj_dim = dataset.dim
    elif witness.kind == MULTICLASS:
        measure = multiclass_margin if normalised else multiclass_margin_unnormalised
        original = measure(dataset, witness)

        def projected_margin(R: ProjectionMatrix) -> float:
            projected_witness = LinearWitness.multiclass(witness.vectors @ R.entries.T)
            return measure(project_dataset(R, dataset), projected_witness)

        proj_dim = dataset.dim
    elif witness.kind == ONE_PARAMETER:
        if not normalised:
            raise ValueError("the one-parameter margin is defined in normalised form only")
        L = dataset.num_classes
        u = witness.vector
        if u.shape[0] != dataset.dim * L:
            raise ValueError(
                f"one-parameter witness has dimension {u.shape[0]}, expected {dataset.dim * L}"
            )
        original = _one_param_original_margin(dataset, u)

        def projected_margin(R: ProjectionMatrix) -> float:
            B = BlockProjection(R, dataset.dim, L)
            return one_param_projected_margin(dataset, R.entries @ u, B)

        proj_dim = dataset.dim * L
    else:
        raise ValueError(f"unknown witness kind {witness.kind!r}")

    if original == 0.0:
        raise ValueError("the original margin is zero; the preservation ratio is undefined")
    lo, hi = 1.0 - cfg.epsilon, 1.0 + cfg.epsilon

    def rejected(R: ProjectionMatrix) -> bool:
        ratio = projected_margin(R) / original
        return not (lo <= ratio < hi)

    return _run_curve(cfg, proj_dim, rejected, matrix_factory)
