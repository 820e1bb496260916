"""Synthetic inputs: the stretched-square counter-example, controlled-cosine
vector pairs, and parallel-hyperplane multiclass data with a known witness.

All generators are pure functions of (parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset, LinearWitness, as_vector


@dataclass(frozen=True)
class GeneratedPair:
    """Two vectors with a prescribed cosine, unit-norm by construction."""

    w: np.ndarray
    x: np.ndarray
    target_cosine: float

    def __post_init__(self):
        object.__setattr__(self, "w", as_vector(self.w))
        object.__setattr__(self, "x", as_vector(self.x))
        if self.w.shape != self.x.shape:
            raise ValueError("pair vectors must share a dimension")


@dataclass(frozen=True)
class GeneratedMulticlass:
    """A multiclass dataset bundled with a witness and its exact margin."""

    dataset: LabeledDataset
    witness: LinearWitness
    target_margin: float


def counterexample_square(stretch: float = 1.0) -> LabeledDataset:
    """Four points (+-s, +-1), positives on top, stretched horizontally by s.

    The unnormalised margin of the witness (0, 1) is 1 for every stretch,
    while the chance that a random 1-D projection keeps the classes
    separable shrinks to zero as s grows; that gap is the point of this
    construction.
    """
    if stretch < 1.0:
        raise ValueError(f"stretch must be >= 1, got {stretch}")
    s = float(stretch)
    points = np.array([[-s, 1.0], [s, 1.0], [-s, -1.0], [s, -1.0]])
    return LabeledDataset.binary(points, [1, 1, -1, -1])


def separability_probability_1d(stretch: float) -> float:
    """Probability that a uniform 1-D projection separates the square.

    A direction at angle t keeps the classes separable exactly when
    |tan t| > s, an angular window of length pi - 2 arctan(s) out of pi.
    """
    if stretch < 1.0:
        raise ValueError(f"stretch must be >= 1, got {stretch}")
    return (math.pi - 2.0 * math.atan(stretch)) / math.pi


def mc_separability_1d(stretch: float, num_directions: int = 100_000, seed: int = 0) -> float:
    """Monte Carlo estimate of :func:`separability_probability_1d`.

    Draws uniform directions and checks 1-D separability of the four
    projected points directly (one class strictly above the other), with
    no use of the closed form.
    """
    if num_directions < 1:
        raise ValueError("num_directions must be positive")
    square = counterexample_square(stretch)
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, np.pi, num_directions)
    directions = np.column_stack([np.cos(theta), np.sin(theta)])
    proj = directions @ square.points.T          # (num_directions, 4)
    pos = proj[:, square.labels == 1]
    neg = proj[:, square.labels == -1]
    separable = (pos.min(axis=1) > neg.max(axis=1)) | (neg.min(axis=1) > pos.max(axis=1))
    return float(separable.mean())


def random_pair_with_cosine(d: int, target_cosine: float, seed: int = 0) -> GeneratedPair:
    """Unit vectors w, x with cos(w, x) equal to ``target_cosine``.

    w is a uniformly random unit direction and x = c w + sqrt(1-c^2) q
    for a random unit q orthogonal to w, so the cosine is exact to
    rounding. Because both vectors are unit length the inner product
    <w, x> coincides with the cosine.
    """
    if d < 2:
        raise ValueError("controlled-cosine pairs need dimension >= 2")
    if not -1.0 < target_cosine < 1.0:
        raise ValueError(f"target cosine must lie strictly inside (-1, 1), got {target_cosine}")
    rng = np.random.default_rng(seed)
    w = _random_unit(rng, d)
    q = _random_unit_orthogonal(rng, w)
    x = target_cosine * w + math.sqrt(1.0 - target_cosine**2) * q
    return GeneratedPair(w, x, target_cosine)


def _random_unit(rng, d: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(d)
        norm = np.linalg.norm(v)
        if norm > 1e-9:
            return v / norm


def _random_unit_orthogonal(rng, w: np.ndarray) -> np.ndarray:
    while True:
        r = rng.standard_normal(w.shape[0])
        r -= (r @ w) * w
        norm = np.linalg.norm(r)
        if norm > 1e-9:
            return r / norm


def parallel_hyperplanes(
    num_classes: int,
    per_class: int,
    d: int,
    gap: float = 1.0,
    spread: float = 0.1,
    seed: int = 0,
) -> GeneratedMulticlass:
    """L classes of points on parallel hyperplanes with a known-margin witness.

    Class y sits on the hyperplane at offset y * gap along a random unit
    normal g; every point additionally carries a fixed coordinate (equal
    to gap) along a reserved direction h orthogonal to g, plus uniform
    noise in [-spread, spread] over the remaining d - 2 directions. The
    h-coordinate makes homogeneous separation possible at all: without
    it the class centers would be positive multiples of one direction
    and no witness set could order their cosines consistently.

    The witness vectors u_y point at the class centers inside the (g, h)
    plane, so every cosine against class-y points reduces to a planar
    angle computation; ``target_margin`` is that closed-form value, not a
    re-measurement through the generic margin path.
    """
    if num_classes < 2:
        raise ValueError("at least two classes are required")
    if per_class < 1:
        raise ValueError("per_class must be positive")
    if d < 2:
        raise ValueError("the construction needs dimension >= 2 (normal plus bias direction)")
    if gap <= 0.0:
        raise ValueError("gap must be positive")
    if spread <= 0.0:
        raise ValueError("spread must be positive")

    rng = np.random.default_rng(seed)
    frame = _random_orthonormal_frame(rng, d)
    g = frame[:, 0]
    h = frame[:, 1]
    complement = frame[:, 2:]                       # (d, d-2), may be empty
    bias = gap

    offsets = gap * np.arange(1, num_classes + 1)   # class y at y * gap
    coeffs = rng.uniform(-spread, spread, size=(num_classes, per_class, d - 2))

    points = []
    labels = []
    for c in range(num_classes):
        center = offsets[c] * g + bias * h
        block = center + coeffs[c] @ complement.T
        points.append(block)
        labels.extend([c + 1] * per_class)
    dataset = LabeledDataset.multiclass(np.vstack(points), labels, num_classes)

    rho = np.hypot(offsets, bias)                   # planar center norms
    witness_rows = (offsets[:, None] * g + bias * h) / rho[:, None]
    witness = LinearWitness.multiclass(witness_rows)

    # Closed-form margin: with alpha_y the planar angle of class y's center,
    # a class-y point x has cos(u_{y'}, x) = rho_y cos(alpha_y - alpha_{y'}) / ||x||,
    # so the margin term is (rho_y / ||x||)(1 - max_{y' != y} cos(alpha_y - alpha_{y'}))
    # and the minimum over the class is attained at its largest-norm point.
    alpha = np.arctan2(bias, offsets)
    target = math.inf
    for c in range(num_classes):
        gaps = np.cos(alpha[c] - np.delete(alpha, c))
        term = 1.0 - float(gaps.max())
        max_norm = math.sqrt(rho[c] ** 2 + float((coeffs[c] ** 2).sum(axis=1).max()))
        target = min(target, rho[c] / max_norm * term)

    return GeneratedMulticlass(dataset, witness, float(target))


def binary_from_two_class(gm: GeneratedMulticlass) -> tuple[LabeledDataset, LinearWitness]:
    """Relabel a two-class generated dataset as binary (+1 for class 1).

    The binary witness is the difference u_1 - u_2 of the class witness
    vectors: signed scores against it reproduce the pairwise class
    comparison up to a positive factor.
    """
    if gm.dataset.num_classes != 2:
        raise ValueError("binary relabeling needs exactly two classes")
    labels = np.where(gm.dataset.labels == 1, 1, -1)
    dataset = LabeledDataset.binary(gm.dataset.points, labels)
    u = gm.witness.vectors[0] - gm.witness.vectors[1]
    return dataset, LinearWitness.binary(u)


def _random_orthonormal_frame(rng, d: int) -> np.ndarray:
    """Haar-ish random orthonormal basis via QR with sign correction."""
    A = rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs[np.newaxis, :]
