"""Shared containers: labeled datasets and linear witnesses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BINARY = "binary"
MULTICLASS = "multiclass"
ONE_PARAMETER = "one-parameter"


def as_vector(x) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float array, validating as we go."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if v.size == 0:
        raise ValueError("vector must have at least one entry")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def _freeze(a: np.ndarray) -> np.ndarray:
    # Shared-read immutability: all containers hand out read-only arrays.
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LabeledDataset:
    """m labeled points of equal dimension.

    ``kind`` is ``"binary"`` (labels in {-1, +1}) or ``"multiclass"``
    (labels in 1..num_classes). Points are stored as an (m, d) array and
    are read-only after construction, so instances can be shared freely
    across threads.
    """

    points: np.ndarray
    labels: np.ndarray
    kind: str = BINARY
    num_classes: int | None = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        labels = np.asarray(self.labels)
        if points.ndim != 2:
            raise ValueError(f"points must be an (m, d) array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("all point coordinates must be finite")
        if labels.ndim != 1 or labels.shape[0] != points.shape[0]:
            raise ValueError("labels must be a 1-D sequence matching the number of points")
        if labels.size and not np.all(labels == labels.astype(int)):
            raise ValueError("labels must be integers")
        labels = labels.astype(int)
        if self.kind == BINARY:
            if self.num_classes is not None:
                raise ValueError("binary datasets do not take num_classes")
            if labels.size and not np.all(np.isin(labels, (-1, 1))):
                raise ValueError("binary labels must be -1 or +1")
        elif self.kind == MULTICLASS:
            if self.num_classes is None or int(self.num_classes) < 2:
                raise ValueError("multiclass datasets need num_classes >= 2")
            object.__setattr__(self, "num_classes", int(self.num_classes))
            if labels.size and (labels.min() < 1 or labels.max() > self.num_classes):
                raise ValueError(f"multiclass labels must lie in 1..{self.num_classes}")
        else:
            raise ValueError(f"unknown dataset kind {self.kind!r}")
        object.__setattr__(self, "points", _freeze(points))
        object.__setattr__(self, "labels", _freeze(labels))

    @classmethod
    def binary(cls, points, labels) -> "LabeledDataset":
        return cls(points, labels, BINARY)

    @classmethod
    def multiclass(cls, points, labels, num_classes: int) -> "LabeledDataset":
        return cls(points, labels, MULTICLASS, num_classes)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def with_points(self, points) -> "LabeledDataset":
        """Same labels and kind, new coordinates (used by projection)."""
        return LabeledDataset(points, self.labels, self.kind, self.num_classes)


@dataclass(frozen=True)
class LinearWitness:
    """A separating parameter for a labeled dataset.

    kind "binary" and "one-parameter" store a single vector (one row);
    kind "multiclass" stores one row per class. Rows are nonzero.
    """

    kind: str
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=float)
        if vectors.ndim != 2:
            raise ValueError("witness vectors must form a 2-D array, one row per vector")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("witness entries must be finite")
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("witness vectors must be nonzero")
        if self.kind in (BINARY, ONE_PARAMETER):
            if vectors.shape[0] != 1:
                raise ValueError(f"{self.kind} witness stores exactly one vector")
        elif self.kind == MULTICLASS:
            if vectors.shape[0] < 2:
                raise ValueError("multiclass witness needs at least two vectors")
        else:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        object.__setattr__(self, "vectors", _freeze(vectors))

    @classmethod
    def binary(cls, u) -> "LinearWitness":
        return cls(BINARY, np.atleast_2d(as_vector(u)))

    @classmethod
    def multiclass(cls, vectors) -> "LinearWitness":
        return cls(MULTICLASS, vectors)

    @classmethod
    def one_parameter(cls, u) -> "LinearWitness":
        return cls(ONE_PARAMETER, np.atleast_2d(as_vector(u)))

    @property
    def num_classes(self) -> int:
        if self.kind != MULTICLASS:
            raise ValueError("num_classes is defined for multiclass witnesses only")
        return self.vectors.shape[0]

    @property
    def vector(self) -> np.ndarray:
        """The single stored vector (binary / one-parameter witnesses)."""
        if self.kind == MULTICLASS:
            raise ValueError("multiclass witnesses store one vector per class")
        return self.vectors[0]
