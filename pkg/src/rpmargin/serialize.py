"""CSV and JSON wire formats shared by the CLI and tests.

Datasets travel as header-less CSV, one point per row: label first, then
the coordinates. Vector pairs use the same shape with tags "w" and "x"
in the label column. Rejection curves and the counter-example sweep use
the fixed headers below; floats are rendered with 12 significant digits
and a "." decimal separator regardless of locale.
"""

from __future__ import annotations

import json

import numpy as np

from .data import BINARY, MULTICLASS, LabeledDataset, LinearWitness
from .datasets import GeneratedMulticlass, GeneratedPair
from .montecarlo import RejectionCurve

CURVE_HEADER = "series,n,epsilon,trials,rejections,p_hat,ci_lo,ci_hi,theory_bound"
COUNTEREXAMPLE_HEADER = "s,analytic_prob,mc_prob,mc_trials"


def fmt(value: float) -> str:
    """12 significant digits, locale independent."""
    return format(float(value), ".12g")


def curves_to_csv(named_curves: list[tuple[str, RejectionCurve]]) -> str:
    lines = [CURVE_HEADER]
    for series, curve in named_curves:
        for i in range(len(curve.n)):
            tb = "" if curve.theory_bound is None else fmt(curve.theory_bound[i])
            lines.append(
                f"{series},{int(curve.n[i])},{fmt(curve.epsilon)},{int(curve.trials[i])},"
                f"{int(curve.rejections[i])},{fmt(curve.p_hat[i])},{fmt(curve.ci_lo[i])},"
                f"{fmt(curve.ci_hi[i])},{tb}"
            )
    return "\n".join(lines) + "\n"


def dataset_to_csv(S: LabeledDataset) -> str:
    lines = [
        f"{int(label)}," + ",".join(fmt(c) for c in row)
        for label, row in zip(S.labels, S.points)
    ]
    return "\n".join(lines) + "\n"


def dataset_from_csv(text: str) -> LabeledDataset:
    rows = [line.split(",") for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty dataset input")
    try:
        labels = [int(float(r[0])) for r in rows]
        points = [[float(v) for v in r[1:]] for r in rows]
    except ValueError as exc:
        raise ValueError(f"malformed dataset CSV: {exc}") from None
    widths = {len(p) for p in points}
    if len(widths) != 1 or widths == {0}:
        raise ValueError("every dataset row needs the same, nonzero number of coordinates")
    if all(l in (-1, 1) for l in labels):
        return LabeledDataset.binary(points, labels)
    if min(labels) < 1:
        raise ValueError("labels must be -1/+1 (binary) or 1..L (multiclass)")
    return LabeledDataset.multiclass(points, labels, max(max(labels), 2))


def pair_to_csv(pair: GeneratedPair) -> str:
    w_line = "w," + ",".join(fmt(c) for c in pair.w)
    x_line = "x," + ",".join(fmt(c) for c in pair.x)
    return w_line + "\n" + x_line + "\n"


def pair_from_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    rows = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        tag, _, rest = line.partition(",")
        rows[tag.strip()] = np.array([float(v) for v in rest.split(",")])
    if set(rows) != {"w", "x"}:
        raise ValueError('pair input needs exactly two rows tagged "w" and "x"')
    return rows["w"], rows["x"]


def vector_from_csv(text: str) -> np.ndarray:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 1:
        raise ValueError("expected a single row of comma-separated coordinates")
    return np.array([float(v) for v in lines[0].split(",")])


def dataset_to_doc(S: LabeledDataset, witness: LinearWitness | None = None, target_margin: float | None = None) -> dict:
    doc: dict = {"kind": S.kind, "labels": S.labels.tolist(), "points": S.points.tolist()}
    if S.kind == MULTICLASS:
        doc["num_classes"] = S.num_classes
    if witness is not None:
        doc["witness"] = {"kind": witness.kind, "vectors": witness.vectors.tolist()}
    if target_margin is not None:
        doc["target_margin"] = float(target_margin)
    return doc


def generated_to_json(gm: GeneratedMulticlass) -> str:
    return json.dumps(dataset_to_doc(gm.dataset, gm.witness, gm.target_margin)) + "\n"


def dataset_from_doc(doc: dict) -> tuple[LabeledDataset, LinearWitness | None, float | None]:
    kind = doc.get("kind")
    if kind == BINARY:
        dataset = LabeledDataset.binary(doc["points"], doc["labels"])
    elif kind == MULTICLASS:
        dataset = LabeledDataset.multiclass(doc["points"], doc["labels"], doc["num_classes"])
    else:
        raise ValueError(f"unknown dataset kind {kind!r} in JSON document")
    witness = None
    if "witness" in doc:
        w = doc["witness"]
        witness = LinearWitness(w["kind"], np.asarray(w["vectors"], dtype=float))
    target = doc.get("target_margin")
    return dataset, witness, None if target is None else float(target)


def dataset_from_json(text: str) -> tuple[LabeledDataset, LinearWitness | None, float | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON document: {exc}") from None
    return dataset_from_doc(doc)
