"""Minimal SVG writing shared by the net and planar-graph emitters."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from . import __version__

PIXELS = 480.0
MARGIN = 12.0


class Canvas:
    """Maps model coordinates (y up) onto a square pixel box (y down)."""

    def __init__(self, points: np.ndarray):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = max(float((hi - lo).max()), 1e-12)
        self.scale = (PIXELS - 2 * MARGIN) / span
        self.lo = lo
        self.height = (hi[1] - lo[1]) * self.scale + 2 * MARGIN
        self.width = (hi[0] - lo[0]) * self.scale + 2 * MARGIN
        self.root = ET.Element(
            "svg",
            xmlns="http://www.w3.org/2000/svg",
            version="1.1",
            width=_num(self.width),
            height=_num(self.height),
            viewBox=f"0 0 {_num(self.width)} {_num(self.height)}",
        )
        self.root.append(ET.Comment(f" peelkit {__version__} "))

    def xy(self, p) -> tuple[float, float]:
        x = (p[0] - self.lo[0]) * self.scale + MARGIN
        y = self.height - ((p[1] - self.lo[1]) * self.scale + MARGIN)
        return x, y

    def points_attr(self, pts) -> str:
        return " ".join(f"{_num(x)},{_num(y)}" for x, y in map(self.xy, pts))

    def add(self, tag: str, parent=None, **attrs) -> ET.Element:
        attrs = {k.rstrip("_").replace("_", "-"): str(v) for k, v in attrs.items()}
        return ET.SubElement(self.root if parent is None else parent, tag, attrs)

    def tostring(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def _num(x: float) -> str:
    return f"{x:.3f}"


def gray(lightness: float) -> str:
    v = int(round(255 * lightness))
    return f"#{v:02x}{v:02x}{v:02x}"
