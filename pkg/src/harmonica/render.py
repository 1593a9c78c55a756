"""Deterministic SVG rendering of complexes and chain supports.

Edges of the 1-skeleton are drawn thin and gray; the support of a chain
is emphasized.  Given two chains, the symmetric difference of their
supports is emphasized instead (the comparison view used when checking a
rational representative against a finite-field one).  Output depends only
on the input data, byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import Chain, SimplicialComplex

_VIEWS = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}


def project_points(points, view: str = "xy"):
    """Orthographic projection onto a coordinate plane (default: the
    first two coordinates)."""
    try:
        ij = _VIEWS[view]
    except KeyError:
        raise ValueError(f"unknown view {view!r}; use xy, xz, or yz")
    out = []
    for p in points:
        if len(p) == 1:
            out.append((Fraction(p[0]), Fraction(0)))
        else:
            out.append((Fraction(p[ij[0]]), Fraction(p[ij[1]])))
    return out


def chain_support_edges(sc: SimplicialComplex, chain: Chain):
    """Edge index -> vertex pair for the nonzero coefficients of a
    1-chain."""
    if chain.degree != 1:
        raise ValueError("only 1-chains have an edge support")
    edges = sc.simplices[1] if len(sc.simplices) > 1 else []
    if len(chain.coefficients) != len(edges):
        raise ValueError("chain length does not match the edge count")
    return {i: edges[i] for i in chain.support()}


def render_svg(sc: SimplicialComplex, chains=(), view: str = "xy",
               width: int = 640, height: int = 640) -> str:
    """An SVG of the 1-skeleton with chain supports emphasized.

    One chain: its support is drawn in blue.  Two chains: the symmetric
    difference of the supports is drawn in red.  Each highlighted edge is
    emitted exactly once."""
    if sc.points is None:
        raise ValueError("complex carries no vertex coordinates")
    chains = list(chains)
    if len(chains) > 2:
        raise ValueError("at most two chains can be rendered")
    pts = project_points(sc.points, view)
    edges = sc.simplices[1] if len(sc.simplices) > 1 else []

    if len(chains) == 2:
        s0 = set(chains[0].support())
        s1 = set(chains[1].support())
        highlight = sorted(s0 ^ s1)
        color = "#cc2222"
    elif len(chains) == 1:
        highlight = sorted(chains[0].support())
        color = "#2244cc"
    else:
        highlight = []
        color = "#2244cc"
    for c in chains:
        if len(c.coefficients) != len(edges):
            raise ValueError("chain length does not match the edge count")

    xs = [p[0] for p in pts] or [Fraction(0)]
    ys = [p[1] for p in pts] or [Fraction(0)]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span_x = xmax - xmin or Fraction(1)
    span_y = ymax - ymin or Fraction(1)
    margin = 20

    def sx(x: Fraction) -> str:
        t = (x - xmin) / span_x
        return f"{float(margin + t * (width - 2 * margin)):.2f}"

    def sy(y: Fraction) -> str:
        t = (y - ymin) / span_y  # flip: SVG y grows downward
        return f"{float(height - margin - t * (height - 2 * margin)):.2f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    hl = set(highlight)
    for i, (u, v) in enumerate(edges):
        if i in hl:
            continue
        lines.append(
            f'<line x1="{sx(pts[u][0])}" y1="{sy(pts[u][1])}" '
            f'x2="{sx(pts[v][0])}" y2="{sy(pts[v][1])}" '
            f'stroke="#bbbbbb" stroke-width="1"/>')
    for i in highlight:
        u, v = edges[i]
        lines.append(
            f'<line x1="{sx(pts[u][0])}" y1="{sy(pts[u][1])}" '
            f'x2="{sx(pts[v][0])}" y2="{sy(pts[v][1])}" '
            f'stroke="{color}" stroke-width="3"/>')
    for p in pts:
        lines.append(f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="2.5" '
                     f'fill="#222222"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
