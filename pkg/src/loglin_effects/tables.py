"""2x2x2 contingency tables: parsing, validation, probabilities, margins.

Cells are ordered lexicographically by (x, z, y) with x slowest, so the
flat index of cell (x, z, y) is ``4*x + 2*z + y``.  Every structure here
is immutable; counts are stored as floats so continuity-corrected tables
flow through fitting unchanged.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

VARIABLES = ("X", "Z", "Y")

#: canonical cell order: (x, z, y) lexicographic, x slowest
CELLS = tuple((x, z, y) for x in (0, 1) for z in (0, 1) for y in (0, 1))


class TableError(ValueError):
    """Malformed, inconsistent, or otherwise unusable table input."""


def cell_index(x: int, z: int, y: int) -> int:
    return 4 * x + 2 * z + y


@dataclass(frozen=True)
class ContingencyTable:
    """Observed counts n(x, z, y) over three binary variables."""

    counts: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        counts = tuple(float(c) for c in self.counts)
        if len(counts) != 8:
            raise TableError(f"expected 8 cells, got {len(counts)}")
        for (x, z, y), c in zip(CELLS, counts):
            if not math.isfinite(c) or c < 0:
                raise TableError(f"negative or non-finite count at cell ({x},{z},{y})")
        if sum(counts) <= 0:
            raise TableError("table total must be positive")
        if self.labels is not None and len(self.labels) != 3:
            raise TableError("labels must name exactly X, Z, Y")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> float:
        return sum(self.counts)

    def count(self, x: int, z: int, y: int) -> float:
        return self.counts[cell_index(x, z, y)]


@dataclass(frozen=True)
class JointProbabilityTable:
    """Joint probabilities pi(x, z, y), canonical cell order, summing to 1."""

    probs: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != 8:
            raise TableError(f"expected 8 probabilities, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise TableError("negative probability")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise TableError(f"probabilities sum to {sum(probs)!r}, not 1")
        object.__setattr__(self, "probs", probs)

    def prob(self, x: int, z: int, y: int) -> float:
        return self.probs[cell_index(x, z, y)]


@dataclass(frozen=True)
class MarginalTable:
    """Probabilities over a subset of {X, Z, Y}, optionally conditioned.

    ``probs`` maps level tuples (ordered as ``variables``) to values.
    """

    variables: tuple
    probs: dict = field(compare=False)
    condition: Optional[tuple] = None  # (variable, level)

    def prob(self, *levels: int) -> float:
        return self.probs[tuple(levels)]


def joint_probabilities(table: ContingencyTable) -> JointProbabilityTable:
    """Convert counts to the joint probability table (count / total)."""
    total = table.total
    if total <= 0:
        raise TableError("table total must be positive")
    return JointProbabilityTable(tuple(c / total for c in table.counts))


def margin(
    joint: JointProbabilityTable,
    keep: Iterable[str],
    condition: Optional[tuple] = None,
) -> MarginalTable:
    """Marginalize the joint table onto ``keep``, optionally given ``condition``.

    ``condition`` is a ``(variable, level)`` pair; the result is renormalized
    over the conditioning slice.
    """
    keep = tuple(v for v in VARIABLES if v in set(keep))
    if not keep:
        raise TableError("keep must name at least one variable")
    if condition is not None:
        cond_var, cond_level = condition
        if cond_var not in VARIABLES:
            raise TableError(f"unknown conditioning variable {cond_var!r}")
        if cond_var in keep:
            raise TableError("conditioning variable cannot be kept")
        if cond_level not in (0, 1):
            raise TableError("conditioning level must be 0 or 1")

    pos = {v: i for i, v in enumerate(VARIABLES)}
    sums: dict = {}
    slice_total = 0.0
    for cell, p in zip(CELLS, joint.probs):
        if condition is not None and cell[pos[condition[0]]] != condition[1]:
            continue
        slice_total += p
        key = tuple(cell[pos[v]] for v in keep)
        sums[key] = sums.get(key, 0.0) + p

    if condition is not None:
        if slice_total <= 0:
            raise TableError("conditioning slice has zero probability")
        sums = {k: v / slice_total for k, v in sums.items()}

    n = len(keep)
    full = {levels: sums.get(levels, 0.0)
            for levels in _level_tuples(n)}
    return MarginalTable(variables=keep, probs=full, condition=condition)


def _level_tuples(n: int):
    if n == 1:
        return [(0,), (1,)]
    return [prev + (b,) for prev in _level_tuples(n - 1) for b in (0, 1)]


def validate(
    table: ContingencyTable,
    policy: str = "error",
    correction: float = 0.5,
) -> ContingencyTable:
    """Apply the zero-cell policy: ``error``, ``correct``, or ``allow``.

    Under ``correct`` the correction amount is added to every cell, not just
    the zero ones, so odds-ratio structure is shifted uniformly.
    """
    if policy not in ("error", "correct", "allow"):
        raise TableError(f"unknown zero-cell policy {policy!r}")
    zero_cells = [cell for cell, c in zip(CELLS, table.counts) if c == 0.0]
    if not zero_cells:
        return table
    if policy == "error":
        raise TableError(f"zero count in cell {zero_cells[0]} (policy 'error')")
    if policy == "allow":
        return table
    if correction <= 0:
        raise TableError("correction amount must be positive")
    return ContingencyTable(
        tuple(c + correction for c in table.counts), labels=table.labels
    )


def dichotomize(records: Sequence, thresholds="mean") -> ContingencyTable:
    """Reduce numeric (x, z, y) records to a 2x2x2 table by thresholding.

    ``thresholds`` is either ``"mean"`` (per-variable mean split) or a triple
    of explicit cut points.  Values below the threshold map to 0, values at
    or above it map to 1.
    """
    records = [tuple(float(v) for v in r) for r in records]
    if len(records) < 2:
        raise TableError("need at least 2 records to dichotomize")
    if any(len(r) != 3 for r in records):
        raise TableError("each record must have exactly 3 values")

    if thresholds == "mean":
        cuts = []
        for j in range(3):
            col = [r[j] for r in records]
            if max(col) == min(col):
                raise TableError(
                    f"variable {VARIABLES[j]} is constant; mean split undefined"
                )
            cuts.append(sum(col) / len(col))
    else:
        cuts = [float(t) for t in thresholds]
        if len(cuts) != 3:
            raise TableError("thresholds must give one cut point per variable")

    counts = [0.0] * 8
    for r in records:
        x, z, y = (0 if r[j] < cuts[j] else 1 for j in range(3))
        counts[cell_index(x, z, y)] += 1.0
    return ContingencyTable(tuple(counts))


# ---------------------------------------------------------------------------
# serialization


def parse_table(source, fmt: str = "csv") -> ContingencyTable:
    """Parse a table from bytes, text, or a readable stream.

    CSV: header ``x,z,y,count``.  JSON: ``{"labels": [...], "cells": [...]}``
    where cells is either 8 objects ``{x,z,y,count}`` or a flat 8-array in
    canonical order.  Missing cells are filled with count 0.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if fmt == "csv":
        return _parse_csv(source)
    if fmt == "json":
        return _parse_json(source)
    raise TableError(f"unknown table format {fmt!r}")


def _coerce_level(raw, what: str) -> int:
    try:
        v = int(str(raw).strip())
    except (TypeError, ValueError):
        raise TableError(f"non-binary level for {what}: {raw!r}") from None
    if v not in (0, 1):
        raise TableError(f"non-binary level for {what}: {raw!r}")
    return v


def _coerce_count(raw) -> float:
    try:
        c = float(raw)
    except (TypeError, ValueError):
        raise TableError(f"malformed count {raw!r}") from None
    if not math.isfinite(c) or c < 0:
        raise TableError(f"negative count {raw!r}")
    return c


def _assemble(cells: dict, labels=None) -> ContingencyTable:
    counts = [0.0] * 8
    for (x, z, y), c in cells.items():
        counts[cell_index(x, z, y)] = c
    return ContingencyTable(tuple(counts), labels=labels)


def _parse_csv(text: str) -> ContingencyTable:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(f.strip() for f in row)]
    if not rows:
        raise TableError("empty CSV input")
    header = [h.strip().lower() for h in rows[0]]
    if header != ["x", "z", "y", "count"]:
        raise TableError(f"expected header x,z,y,count, got {rows[0]!r}")
    seen: dict = {}
    for row in rows[1:]:
        if len(row) != 4:
            raise TableError(f"malformed record {row!r}")
        x = _coerce_level(row[0], "x")
        z = _coerce_level(row[1], "z")
        y = _coerce_level(row[2], "y")
        c = _coerce_count(row[3])
        if (x, z, y) in seen:
            raise TableError(f"duplicate cell ({x},{z},{y})")
        seen[(x, z, y)] = c
    return _assemble(seen)


def _parse_json(text: str) -> ContingencyTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or "cells" not in doc:
        raise TableError("JSON table must be an object with a 'cells' field")
    labels = doc.get("labels")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
    cells = doc["cells"]
    if isinstance(cells, list) and len(cells) == 8 and all(
        not isinstance(c, dict) for c in cells
    ):
        return ContingencyTable(
            tuple(_coerce_count(c) for c in cells), labels=labels
        )
    seen: dict = {}
    for entry in cells:
        if not isinstance(entry, dict):
            raise TableError(f"malformed cell entry {entry!r}")
        x = _coerce_level(entry.get("x"), "x")
        z = _coerce_level(entry.get("z"), "z")
        y = _coerce_level(entry.get("y"), "y")
        c = _coerce_count(entry.get("count"))
        if (x, z, y) in seen:
            raise TableError(f"duplicate cell ({x},{z},{y})")
        seen[(x, z, y)] = c
    return _assemble(seen, labels=labels)


def serialize_table(table: ContingencyTable, fmt: str = "csv") -> str:
    """Serialize in canonical cell order; inverse of ``parse_table``."""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "z", "y", "count"])
        for (x, z, y), c in zip(CELLS, table.counts):
            writer.writerow([x, z, y, repr(c)])
        return out.getvalue()
    if fmt == "json":
        doc: dict = {}
        if table.labels is not None:
            doc["labels"] = list(table.labels)
        doc["cells"] = [
            {"x": x, "z": z, "y": y, "count": c}
            for (x, z, y), c in zip(CELLS, table.counts)
        ]
        return json.dumps(doc, indent=2)
    raise TableError(f"unknown table format {fmt!r}")
