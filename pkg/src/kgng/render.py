"""SVG drawings of a network over its data (first two coordinates)."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .io import atomic_write_text
from .network import GngNetwork

SVG_NS = "http://www.w3.org/2000/svg"


def _bounds(points: np.ndarray, margin: float):
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = hi - lo
    span = np.where(span > 0, span, 1.0)
    return lo - margin * span, hi + margin * span


def network_svg(net: GngNetwork, data=None, size: int = 600, margin: float = 0.05,
                data_radius: float = 1.5, unit_radius: float = 3.0) -> str:
    """Data as gray dots, units as black dots, edges as black lines.

    The viewport is fitted to the data bounding box (or to the units when
    there is no data) plus ``margin`` of the span on every side.
    """
    X = np.empty((0, 2))
    if data is not None:
        pts = np.asarray(getattr(data, "points", data), dtype=np.float64)
        if pts.size:
            X = pts[:, :2] if pts.shape[1] >= 2 else np.column_stack([pts[:, 0], np.zeros(len(pts))])
    W = net.weights
    W = W[:, :2] if net.dimension >= 2 else np.column_stack([W[:, 0], np.zeros(len(W))])

    ref = X if len(X) else W
    if len(ref) == 0:
        ref = np.zeros((1, 2))
    lo, hi = _bounds(ref, margin)
    scale = size / (hi - lo)

    def px(p):
        # y axis points down in SVG
        return (p[0] - lo[0]) * scale[0], (hi[1] - p[1]) * scale[1]

    root = ET.Element("svg", xmlns=SVG_NS, width=str(size), height=str(size),
                      viewBox=f"0 0 {size} {size}")
    g_data = ET.SubElement(root, "g", id="data")
    for p in X:
        x, y = px(p)
        ET.SubElement(g_data, "circle", cx=f"{x:.2f}", cy=f"{y:.2f}", r=f"{data_radius:g}", fill="gray")

    pos = {uid: px(W[net.row(uid)]) for uid in net.ids}
    g_edges = ET.SubElement(root, "g", id="edges")
    for e in net.edges():
        (x1, y1), (x2, y2) = pos[e.u], pos[e.v]
        ET.SubElement(g_edges, "line", x1=f"{x1:.2f}", y1=f"{y1:.2f}", x2=f"{x2:.2f}", y2=f"{y2:.2f}",
                      stroke="black", **{"stroke-width": "1"})
    g_units = ET.SubElement(root, "g", id="units")
    for uid in net.ids:
        x, y = pos[uid]
        ET.SubElement(g_units, "circle", cx=f"{x:.2f}", cy=f"{y:.2f}", r=f"{unit_radius:g}", fill="black")
    return ET.tostring(root, encoding="unicode") + "\n"


def render_svg(net: GngNetwork, data, out, **kwargs) -> None:
    atomic_write_text(out, network_svg(net, data, **kwargs))
