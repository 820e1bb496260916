"""Margins of labeled datasets with respect to fixed linear witnesses.

All margin quantities here are evaluations against a supplied witness;
the one optimizer (:func:`optimize_binary_margin`) exists so generated
datasets can be checked against a brute-force oracle
(:func:`sweep_margin_2d`).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .data import BINARY, MULTICLASS, LabeledDataset, LinearWitness, as_vector
from .projection import BlockProjection


def cosine(w, x) -> float:
    """Cosine of the angle between two nonzero vectors, clamped to [-1, 1]."""
    w = as_vector(w)
    x = as_vector(x)
    nw = float(np.linalg.norm(w))
    nx = float(np.linalg.norm(x))
    if nw == 0.0 or nx == 0.0:
        raise ValueError("cosine is undefined for zero vectors")
    return float(np.clip(float(w @ x) / (nw * nx), -1.0, 1.0))


def _point_norms(S: LabeledDataset) -> np.ndarray:
    norms = np.linalg.norm(S.points, axis=1)
    if np.any(norms == 0.0):
        raise ValueError("normalised margins are undefined when a point is the zero vector")
    return norms


def binary_margin(S: LabeledDataset, u, normalised: bool = True) -> float:
    """Smallest signed margin of a binary dataset for witness u.

    Unnormalised: min_i y_i <u/||u||, x_i>. Normalised: the same with each
    point also divided by its norm, i.e. min_i y_i cos(u, x_i). A positive
    value certifies linear separability by that margin with witness u.
    """
    if S.kind != BINARY:
        raise ValueError("binary_margin needs a binary dataset")
    if S.m == 0:
        raise ValueError("margin of an empty dataset is undefined")
    u = as_vector(u)
    if u.shape[0] != S.dim:
        raise ValueError(f"witness has dimension {u.shape[0]}, dataset has {S.dim}")
    nu = float(np.linalg.norm(u))
    if nu == 0.0:
        raise ValueError("witness must be nonzero")
    scores = S.labels * (S.points @ (u / nu))
    if normalised:
        scores = scores / _point_norms(S)
    return float(scores.min())


def _cosine_matrix(S: LabeledDataset, W: LinearWitness, normalised: bool) -> np.ndarray:
    """(m, L) matrix of <u_y, x_i> / ||u_y|| (divided by ||x_i|| when normalised)."""
    wnorms = np.linalg.norm(W.vectors, axis=1)
    scores = S.points @ (W.vectors / wnorms[:, None]).T
    if normalised:
        scores = scores / _point_norms(S)[:, None]
    return scores


def _check_multiclass_pair(S: LabeledDataset, W: LinearWitness):
    if S.kind != MULTICLASS:
        raise ValueError("a multiclass dataset is required")
    if W.kind != MULTICLASS:
        raise ValueError("a multiclass witness is required")
    if S.m == 0:
        raise ValueError("margin of an empty dataset is undefined")
    if W.num_classes != S.num_classes:
        raise ValueError(
            f"witness has {W.num_classes} class vectors, dataset has {S.num_classes} classes"
        )
    if W.vectors.shape[1] != S.dim:
        raise ValueError(f"witness vectors have dimension {W.vectors.shape[1]}, dataset has {S.dim}")


def _margin_from_scores(scores: np.ndarray, labels: np.ndarray) -> float:
    idx = np.arange(scores.shape[0])
    own = scores[idx, labels - 1]
    rivals = scores.copy()
    rivals[idx, labels - 1] = -np.inf
    return float((own - rivals.max(axis=1)).min())


def multiclass_margin(S: LabeledDataset, W: LinearWitness) -> float:
    """Normalised multiclass margin of S for per-class witness vectors.

    min over (x, y) of cos(u_y, x) - max_{y' != y} cos(u_{y'}, x).
    """
    _check_multiclass_pair(S, W)
    return _margin_from_scores(_cosine_matrix(S, W, normalised=True), S.labels)


def multiclass_margin_unnormalised(S: LabeledDataset, W: LinearWitness) -> float:
    """As :func:`multiclass_margin` without dividing by point norms.

    Witness vectors are still unit-normalised first, matching the
    unnormalised binary convention.
    """
    _check_multiclass_pair(S, W)
    return _margin_from_scores(_cosine_matrix(S, W, normalised=False), S.labels)


def one_param_projected_margin(S: LabeledDataset, v, B: BlockProjection) -> float:
    """Single-vector multiclass margin of block-projected data.

    min over (x, y) in S and y' != y of
    (<v, R_y x> - <v, R_{y'} x>) / (||v|| sqrt(||R_y x||^2 + ||R_{y'} x||^2)),
    where R_y x is the y-th column block applied to x.
    """
    if S.kind != MULTICLASS:
        raise ValueError("a multiclass dataset is required")
    if S.m == 0:
        raise ValueError("margin of an empty dataset is undefined")
    if B.num_classes != S.num_classes:
        raise ValueError(f"block projection has {B.num_classes} classes, dataset has {S.num_classes}")
    if B.block_dim != S.dim:
        raise ValueError(f"block dimension {B.block_dim} does not match data dimension {S.dim}")
    v = as_vector(v)
    if v.shape[0] != B.base.n:
        raise ValueError(f"parameter vector has dimension {v.shape[0]}, projection yields {B.base.n}")
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        raise ValueError("parameter vector must be nonzero")

    L = S.num_classes
    # blocks[c] holds R_{c+1} x_i in row i
    blocks = np.stack([S.points @ B.block(c + 1).T for c in range(L)])
    scores = blocks @ v                     # (L, m): <v, R_c x_i>
    sq = np.einsum("cmn,cmn->cm", blocks, blocks)  # (L, m): ||R_c x_i||^2

    best = np.inf
    for i in range(S.m):
        y = S.labels[i] - 1
        denom_sq = sq[y, i] + sq[:, i]
        if np.any(denom_sq[np.arange(L) != y] == 0.0):
            raise ValueError("degenerate input: both block projections of a point are zero")
        vals = (scores[y, i] - scores[:, i]) / (nv * np.sqrt(denom_sq))
        vals[y] = np.inf
        best = min(best, float(vals.min()))
    return best


class OptimizeResult(NamedTuple):
    witness: np.ndarray
    margin: float
    separable: bool


class SweepResult(NamedTuple):
    witness: np.ndarray
    margin: float


def _normalised_rows(S: LabeledDataset) -> np.ndarray:
    """Rows y_i * x_i / ||x_i||; the normalised margin of unit u is min(P @ u)."""
    return (S.labels / _point_norms(S))[:, None] * S.points


def optimize_binary_margin(S: LabeledDataset, tol: float = 1e-6, max_iter: int = 100_000) -> OptimizeResult:
    """Maximise the normalised binary margin over unit-length witnesses.

    On the length-normalised points the optimal margin equals the distance
    from the origin to the convex hull of {y_i x_i / ||x_i||} (the dual of
    minimising ||w|| subject to y_i <w, x_i/||x_i||> >= 1). That minimum-norm
    point is found with pairwise Frank-Wolfe steps and an explicit duality
    gap, so the achieved margin is within ``tol`` of the optimum at
    termination. When the hull contains the origin the data admit no
    positive margin; a projected subgradient search then returns the best
    (negative) margin found, flagged as non-separable.

    Parameters
    ----------
    S : LabeledDataset
        Binary dataset with no zero points.
    tol : float
        Convergence tolerance on the achieved margin.
    max_iter : int
        Iteration cap for the Frank-Wolfe loop.
    """
    if S.kind != BINARY:
        raise ValueError("optimize_binary_margin needs a binary dataset")
    if S.m == 0:
        raise ValueError("cannot optimize the margin of an empty dataset")
    P = _normalised_rows(S)
    m = P.shape[0]

    lam = np.zeros(m)
    start = int(np.argmin(np.linalg.norm(P, axis=1)))
    lam[start] = 1.0
    q = P[start].copy()

    for _ in range(max_iter):
        nq = float(np.linalg.norm(q))
        if nq < 1e-12:
            break
        dots = P @ q
        toward = int(np.argmin(dots))
        if nq - dots[toward] / nq <= tol:
            break
        support = np.flatnonzero(lam > 0.0)
        away = int(support[np.argmax(dots[support])])
        direction = P[toward] - P[away]
        dd = float(direction @ direction)
        if dd == 0.0:
            break
        step = float(np.clip(-(q @ direction) / dd, 0.0, lam[away]))
        if step == 0.0:
            break
        lam[away] -= step
        lam[toward] += step
        q = lam @ P  # recompute from weights to keep rounding from accumulating

    nq = float(np.linalg.norm(q))
    if nq >= 1e-9:
        u = q / nq
        margin = float((P @ u).min())
        return OptimizeResult(u, margin, margin > 0.0)
    return _best_effort_direction(P)


def _best_effort_direction(P: np.ndarray, iters: int = 4000) -> OptimizeResult:
    """Subgradient search on the unit sphere for non-separable data."""
    rng = np.random.default_rng(0)
    d = P.shape[1]
    u = P.mean(axis=0)
    if np.linalg.norm(u) < 1e-12:
        u = rng.standard_normal(d)
    u = u / np.linalg.norm(u)
    best_u, best_val = u, float((P @ u).min())
    for k in range(1, iters + 1):
        worst = int(np.argmin(P @ u))
        u = u + (0.5 / np.sqrt(k)) * P[worst]
        nu = float(np.linalg.norm(u))
        if nu < 1e-12:
            u = rng.standard_normal(d)
            nu = float(np.linalg.norm(u))
        u = u / nu
        val = float((P @ u).min())
        if val > best_val:
            best_u, best_val = u, val
    return OptimizeResult(best_u, best_val, best_val > 0.0)


def sweep_margin_2d(S: LabeledDataset, num_angles: int) -> SweepResult:
    """Brute-force margin oracle: best of ``num_angles`` evenly spaced unit directions.

    Directions are angles 2*pi*k/num_angles for k = 0..num_angles-1, so
    grids for num_angles and 2*num_angles are nested.
    """
    if S.kind != BINARY:
        raise ValueError("sweep_margin_2d needs a binary dataset")
    if S.dim != 2:
        raise ValueError("sweep_margin_2d only handles 2-D points")
    if S.m == 0:
        raise ValueError("cannot sweep the margin of an empty dataset")
    if num_angles < 1:
        raise ValueError("num_angles must be positive")
    P = _normalised_rows(S)

    best_val = -np.inf
    best_angle = 0.0
    chunk = 1 << 16
    for lo in range(0, num_angles, chunk):
        k = np.arange(lo, min(lo + chunk, num_angles))
        angles = (2.0 * np.pi / num_angles) * k
        U = np.column_stack([np.cos(angles), np.sin(angles)])
        vals = (U @ P.T).min(axis=1)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_angle = float(angles[j])
    u = np.array([np.cos(best_angle), np.sin(best_angle)])
    return SweepResult(u, best_val)
