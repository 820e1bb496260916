"""Dense random projection matrices and their application to vectors and datasets.

A projection matrix here is an n x d array whose entries are i.i.d. draws
scaled by 1/sqrt(n), so that E<Rw, Rx> = <w, x> for any fixed w, x. The
scale lives inside the stored entries; downstream code treats the matrix
as plain dense linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset, as_vector, _freeze

GAUSSIAN = "gaussian"
SIGN_COIN = "sign-coin"
FAMILIES = (GAUSSIAN, SIGN_COIN)

_MAX_SEED = 2**64


@dataclass(frozen=True)
class ProjectionMatrix:
    """An n x d projection with the 1/sqrt(n) scale baked into ``entries``.

    Instances are immutable after construction (the entry array is made
    read-only) and safe to share across threads.
    """

    entries: np.ndarray
    family: str = GAUSSIAN
    seed: int = 0

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ValueError(f"entries must be a nonempty 2-D array, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("matrix entries must be finite")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown projection family {self.family!r}")
        object.__setattr__(self, "entries", _freeze(entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def d(self) -> int:
        return self.entries.shape[1]


def new_projection(n: int, d: int, family: str = GAUSSIAN, seed: int = 0) -> ProjectionMatrix:
    """Draw an n x d random projection matrix.

    Parameters
    ----------
    n, d : int
        Output and input dimension; both must be positive.
    family : str
        "gaussian": entries are standard normal draws times 1/sqrt(n).
        "sign-coin": entries are +-1 with equal probability, times
        1/sqrt(n). Provided as a generator only; the closed-form bounds
        in :mod:`rpmargin.bounds` are stated for the gaussian family.
    seed : int
        64-bit seed. Sampling uses numpy's PCG64 generator (ziggurat
        normal sampler), so the same (n, d, family, seed) reproduces the
        same matrix bit-for-bit within one numpy build.
    """
    if n < 1 or d < 1:
        raise ValueError("projection dimensions must be positive")
    if not 0 <= seed < _MAX_SEED:
        raise ValueError("seed must fit in 64 unsigned bits")
    rng = np.random.default_rng(seed)
    if family == GAUSSIAN:
        raw = rng.standard_normal((n, d))
    elif family == SIGN_COIN:
        raw = 2.0 * rng.integers(0, 2, size=(n, d)) - 1.0
    else:
        raise ValueError(f"unknown projection family {family!r}")
    return ProjectionMatrix(raw / np.sqrt(n), family, seed)


def project(R: ProjectionMatrix, x) -> np.ndarray:
    """Matrix-vector product R x (dimension reduction of a single vector)."""
    x = as_vector(x)
    if x.shape[0] != R.d:
        raise ValueError(f"dimension mismatch: matrix expects {R.d}, vector has {x.shape[0]}")
    return R.entries @ x


def project_dataset(R: ProjectionMatrix, S: LabeledDataset) -> LabeledDataset:
    """Project every point of ``S``; labels and flavor are unchanged."""
    if S.dim != R.d:
        raise ValueError(f"dimension mismatch: matrix expects {R.d}, dataset has {S.dim}")
    return S.with_points(S.points @ R.entries.T)


def tensor_embed(x, y: int, num_classes: int) -> np.ndarray:
    """Embed x into block y of a d*num_classes vector (x tensor e_y).

    The result is zero everywhere except block y, which holds x, so its
    norm equals ||x|| and embeddings of the same x into different blocks
    are orthogonal.
    """
    x = as_vector(x)
    if num_classes < 1:
        raise ValueError("num_classes must be positive")
    if not 1 <= y <= num_classes:
        raise ValueError(f"class index {y} out of range 1..{num_classes}")
    d = x.shape[0]
    out = np.zeros(d * num_classes)
    out[(y - 1) * d : y * d] = x
    return out


@dataclass(frozen=True)
class BlockProjection:
    """A projection over class-block embeddings, viewed as column blocks.

    The base matrix has block_dim * num_classes columns; block y (an
    n x block_dim sub-matrix) is what the base matrix applies to the
    y-th embedding block.
    """

    base: ProjectionMatrix
    block_dim: int
    num_classes: int

    def __post_init__(self):
        if self.block_dim < 1:
            raise ValueError("block_dim must be positive")
        if self.num_classes < 2:
            raise ValueError("a block projection needs at least two classes")
        if self.base.d != self.block_dim * self.num_classes:
            raise ValueError(
                f"base matrix has {self.base.d} columns, expected "
                f"block_dim * num_classes = {self.block_dim * self.num_classes}"
            )

    def block(self, y: int) -> np.ndarray:
        """The y-th n x block_dim column block of the base matrix."""
        if not 1 <= y <= self.num_classes:
            raise ValueError(f"class index {y} out of range 1..{self.num_classes}")
        return self.base.entries[:, (y - 1) * self.block_dim : y * self.block_dim]


def block_project(B: BlockProjection, x, y: int) -> np.ndarray:
    """Apply the y-th column block to x.

    Equal (exactly, up to floating-point associativity) to projecting
    tensor_embed(x, y, L) through the base matrix, since the other
    blocks multiply zeros.
    """
    x = as_vector(x)
    if x.shape[0] != B.block_dim:
        raise ValueError(f"dimension mismatch: block expects {B.block_dim}, vector has {x.shape[0]}")
    return B.block(y) @ x
