"""Static SVG drawings of a plane projection, with an optional deformed overlay."""

from __future__ import annotations

from typing import Sequence

from .axial import AxialFunction, Embedding, dot, immerse
from .graph import Graph
from .morse import generic_plane_projection

__all__ = ["plane_points", "svg"]


def plane_points(g: Graph, a: AxialFunction, emb: Embedding | None = None, plane=None) -> list:
    """Exact vertex positions projected to R^2 (identity when already planar)."""
    emb = emb if emb is not None else immerse(g, a)
    dim = len(emb[0]) if len(emb) else 0
    if dim <= 2:
        return [tuple(p) + (0,) * (2 - dim) for p in emb.points]
    P = plane or generic_plane_projection(a)
    return [(dot(P[0], p), dot(P[1], p)) for p in emb.points]


def _fit(pts: Sequence, size: float, pad: float):
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    w = max(max(xs) - min(xs), 1e-9)
    h = max(max(ys) - min(ys), 1e-9)
    s = (size - 2 * pad) / max(w, h)
    return lambda p: (pad + (p[0] - min(xs)) * s, size - pad - (p[1] - min(ys)) * s)


def svg(g: Graph, pts: Sequence, overlay: Sequence | None = None, size: int = 400,
        title: str | None = None) -> str:
    """SVG 1.1 text; y axis points up."""
    fpts = [(float(x), float(y)) for x, y in pts]
    fover = [(float(x), float(y)) for x, y in overlay] if overlay is not None else []
    tf = _fit(fpts + fover, size, 20)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{title}</title>")

    def layer(P, stroke, dash=""):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<g stroke="{stroke}" stroke-width="1.5" fill="none"{extra}>')
        for e in range(0, g.edge_count, 2):
            (x1, y1), (x2, y2) = tf(P[g.tail(e)]), tf(P[g.head(e)])
            out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}"/>')
        out.append("</g>")

    layer(fpts, "#222")
    if fover:
        layer(fover, "#c33", "4 3")
    out.append('<g fill="#222">')
    for v, p in enumerate(fpts):
        x, y = tf(p)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3"><title>{v}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
