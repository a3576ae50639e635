"""File formats: network JSON, edge lists, trace and table CSVs."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .network import GngNetwork
from .trainer import TrainingTrace

TRACE_COLUMNS = ("iteration", "mse", "kmse", "units", "edges")


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to a temp file next to ``path`` then rename over it."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def network_to_json(net: GngNetwork, meta: dict | None = None) -> str:
    doc = {"meta": dict(meta or {})}
    doc.update(net.to_dict())
    return json.dumps(doc, indent=1) + "\n"


def save_network(net: GngNetwork, path, meta: dict | None = None) -> None:
    atomic_write_text(path, network_to_json(net, meta))


def load_network(path) -> tuple[GngNetwork, dict]:
    with open(path) as fh:
        doc = json.load(fh)
    return GngNetwork.from_dict(doc), doc.get("meta", {})


def save_edge_list(net: GngNetwork, path) -> None:
    atomic_write_text(path, net.to_edge_list())


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def trace_to_csv(trace: TrainingTrace) -> str:
    return rows_to_csv(TRACE_COLUMNS, trace.records)


def save_trace(trace: TrainingTrace, path) -> None:
    atomic_write_text(path, trace_to_csv(trace))
