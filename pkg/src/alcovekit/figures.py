"""Deterministic SVG pictures of rank-1/rank-2 apartments.

Three kinds are supported:

  * rank1_line:     the SL2 base alcove with type-classification coloring,
  * rank2_A2:       an A2 alcove neighborhood with genericity shading,
  * admissible_A2:  the affine A2 alcove grid with Adm(mu') highlighted.

Output is plain SVG text, byte-identical across runs for identical specs.
All layout constants live in LAYOUT below for visual diffability.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Sequence

from .galois import GaloisType, frobenius_invariant
from .rootdata import build_root_datum, split_gamma
from .weyl_affine import admissible_set, base_alcove, elements_of_length_at_most

LAYOUT = {
    "scale": 360.0,              # SVG pixels per apartment unit
    "margin": 40.0,
    "rank1_small_radius": 3.0,
    "rank1_big_radius": 6.0,
    "grid_stroke": "#b0b0b0",
    "grid_width": 0.4,
    "outline_width": 2.0,
    "shade_fill": "#ff0000",
    "shade_opacity": 0.15,
    "adm_fill": "#000000",
    "adm_opacity": 0.09,
    "wall_colors": {1: "#0000f0", 2: "#f000f0", 3: "#f00000"},
    "node_green": "#00c000",
    "node_red": "#e00000",
    "node_white": "#ffffff",
    "sqrt3": math.sqrt(3.0),
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str  # rank1_line | rank2_A2 | admissible_A2
    p: int = 7
    e: int = 24
    shading_depth: int = 0
    subdivisions: int = 36
    mu: tuple[int, ...] = (1, 0, 0)
    marks: tuple[tuple[tuple[Fraction, ...], str], ...] = ()


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def sl2_node_colors(p: int, e: int) -> list[tuple[int, str]]:
    """Color of the u-vertex at parameter n/e for n = 0..e.

    White: not in the orbit of o (odd n).  Green: the classified type is
    Frobenius invariant.  Red: classified but not invariant.
    """
    rd = build_root_datum("SL2")
    g = split_gamma(rd, p, e)
    out = []
    for n in range(e + 1):
        if n % 2 == 1:
            out.append((n, LAYOUT["node_white"]))
            continue
        lam = (-(n // 2), n // 2)
        t = GaloisType.from_lambda(rd, g, lam)
        flag, _ = frobenius_invariant(t)
        out.append((n, LAYOUT["node_green"] if flag else LAYOUT["node_red"]))
    return out


def _svg_header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]


def _render_rank1(spec: FigureSpec) -> str:
    S = LAYOUT["scale"]
    M = LAYOUT["margin"]
    width = S + 2 * M
    height = 2 * M
    y = M
    lines = _svg_header(width, height)
    lines.append(
        f'<line x1="{_fmt(M)}" y1="{_fmt(y)}" x2="{_fmt(M + S)}" y2="{_fmt(y)}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    colors = sl2_node_colors(spec.p, spec.e)
    small_r = LAYOUT["rank1_small_radius"]
    big_r = LAYOUT["rank1_big_radius"]
    for n, color in colors:
        x = M + S * n / spec.e
        r = big_r if n in (0, spec.e) else small_r
        lines.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{color}" '
            f'stroke="#000000" stroke-width="0.6"/>'
        )
    lines.append(
        f'<text x="{_fmt(M)}" y="{_fmt(y - 12)}" font-size="12" '
        f'text-anchor="middle">o</text>'
    )
    lines.append(
        f'<text x="{_fmt(M + S)}" y="{_fmt(y - 12)}" font-size="12" '
        f'text-anchor="middle">o+(1/2,-1/2)</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _a2_xy(eta: Sequence[Fraction]) -> tuple[float, float]:
    """Plane coordinates of a reduced-apartment point for a GL3 block.

    o maps to the origin, o-(1,0,0) to (-1,-sqrt3), o-(1,1,0) to (1,-sqrt3).
    """
    x = float(eta[0] - 2 * eta[1] + eta[2])
    y = LAYOUT["sqrt3"] * float(eta[0] - eta[2])
    return x, y


def _to_screen(x: float, y: float, width: float, height: float,
               scale: float) -> tuple[float, float]:
    return width / 2 + scale * x, height / 2 - scale * y


_BASE_TRIANGLE = ((Fraction(0), Fraction(0), Fraction(0)),
                  (Fraction(-1), Fraction(0), Fraction(0)),
                  (Fraction(-1), Fraction(-1), Fraction(0)))


def _reduced_center(pts) -> tuple[Fraction, ...]:
    """Barycenter projected to the reduced apartment (center direction removed)."""
    s = [sum(q[i] for q in pts) for i in range(3)]
    m = sum(s) / 3 if isinstance(sum(s), Fraction) else Fraction(sum(s), 3)
    return tuple(Fraction(c) - m for c in s)


def _alcove_patches(gallery_bound: int, bx_max: float, by_max: float):
    """Alcove vertex triples within a window around o, deterministically sorted."""
    rd = build_root_datum("GL3")
    alc = base_alcove(rd)
    out = []
    for z in elements_of_length_at_most(rd, gallery_bound, alc):
        pts = tuple(z.act(v) for v in _BASE_TRIANGLE)
        bx = sum(_a2_xy(q)[0] for q in pts) / 3
        by = sum(_a2_xy(q)[1] for q in pts) / 3
        if abs(bx) <= bx_max and abs(by) <= by_max:
            out.append((z, pts))
    out.sort(key=lambda zp: tuple(sorted(str(c) for q in zp[1] for c in q)))
    return out


def _canvas(patches, scale: float, margin: float):
    xs, ys = [], []
    for _, pts in patches:
        for q in pts:
            x, y = _a2_xy(q)
            xs.append(x)
            ys.append(y)
    half_w = max(abs(min(xs)), abs(max(xs)))
    half_h = max(abs(min(ys)), abs(max(ys)))
    return 2 * half_w * scale + 2 * margin, 2 * half_h * scale + 2 * margin


def _render_genericity(spec: FigureSpec) -> str:
    """Nested d-generic triangles inside each drawn A2 alcove."""
    S = LAYOUT["scale"] * 0.6
    M = LAYOUT["margin"]
    p = spec.p
    patches = _alcove_patches(4, 1.6, 1.5)
    width, height = _canvas(patches, S, M)
    scale = S
    lines = _svg_header(width, height)
    for _, pts in patches:
        # nested genericity shading: layer k covers the k-generic sub-triangle
        bary = [sum(q[i] for q in pts) / 3 for i in range(3)]
        for k in range(0, spec.shading_depth + 1):
            frac = Fraction(k, p)
            inner = []
            for q in pts:
                inner.append(tuple(
                    q[i] + (bary[i] - q[i]) * 3 * frac for i in range(3)))
            path = []
            for q in inner:
                xx, yy = _to_screen(*_a2_xy(q), width, height, scale)
                path.append(f"{_fmt(xx)},{_fmt(yy)}")
            lines.append(
                f'<polygon points="{" ".join(path)}" fill="{LAYOUT["shade_fill"]}" '
                f'fill-opacity="{LAYOUT["shade_opacity"]}" stroke="none"/>'
            )
        # subdivision grid
        n = spec.subdivisions
        corners = [_to_screen(*_a2_xy(q), width, height, scale) for q in pts]
        for i in range(3):
            a, b, c = corners[i], corners[(i + 1) % 3], corners[(i + 2) % 3]
            for t in range(1, n):
                f1 = t / n
                p1 = (a[0] + f1 * (b[0] - a[0]), a[1] + f1 * (b[1] - a[1]))
                p2 = (a[0] + f1 * (c[0] - a[0]), a[1] + f1 * (c[1] - a[1]))
                lines.append(
                    f'<line x1="{_fmt(p1[0])}" y1="{_fmt(p1[1])}" '
                    f'x2="{_fmt(p2[0])}" y2="{_fmt(p2[1])}" '
                    f'stroke="{LAYOUT["grid_stroke"]}" stroke-width="{LAYOUT["grid_width"]}"/>'
                )
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in corners)
        lines.append(
            f'<polygon points="{path}" fill="none" stroke="#000000" '
            f'stroke-width="{LAYOUT["outline_width"]}"/>'
        )
    for eta, label in spec.marks:
        xx, yy = _to_screen(*_a2_xy(eta), width, height, scale)
        lines.append(
            f'<circle cx="{_fmt(xx)}" cy="{_fmt(yy)}" r="3.0000" fill="#000000"/>'
        )
        lines.append(
            f'<text x="{_fmt(xx + 5)}" y="{_fmt(yy - 5)}" font-size="11">{label}</text>'
        )
    ox, oy = _to_screen(0, 0, width, height, scale)
    lines.append(f'<circle cx="{_fmt(ox)}" cy="{_fmt(oy)}" r="4.0000" fill="#000000"/>')
    lines.append(f'<text x="{_fmt(ox + 6)}" y="{_fmt(oy - 6)}" font-size="12">o</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# the three wall segments of the base alcove, as vertex pairs (see the walls
# fixed by each simple affine reflection)
_WALL_VERTICES = {
    1: ((Fraction(0), Fraction(0), Fraction(0)), (Fraction(-1), Fraction(-1), Fraction(0))),
    2: ((Fraction(0), Fraction(0), Fraction(0)), (Fraction(-1), Fraction(0), Fraction(0))),
    3: ((Fraction(-1), Fraction(0), Fraction(0)), (Fraction(-1), Fraction(-1), Fraction(0))),
}


def _render_admissible(spec: FigureSpec) -> str:
    S = LAYOUT["scale"] * 0.4
    M = LAYOUT["margin"]
    rd = build_root_datum("GL3")
    alc = base_alcove(rd)
    adm = admissible_set(rd, spec.mu, alc)
    # an element is drawn as its alcove in the reduced apartment; match by
    # center-normalized barycenter
    adm_centers = set()
    for z in adm:
        pts = [z.act(v) for v in _BASE_TRIANGLE]
        adm_centers.add(_reduced_center(pts))
    elems = _alcove_patches(8, 3.2, 2.9)
    width, height = _canvas(elems, S, M)
    scale = S
    lines = _svg_header(width, height)
    shaded = 0
    edges: dict[tuple, str] = {}
    for z, pts in elems:
        corners = [_to_screen(*_a2_xy(q), width, height, scale) for q in pts]
        if _reduced_center(pts) in adm_centers:
            shaded += 1
            path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in corners)
            lines.append(
                f'<polygon points="{path}" fill="{LAYOUT["adm_fill"]}" '
                f'fill-opacity="{LAYOUT["adm_opacity"]}" stroke="none"/>'
            )
        for i in (1, 2, 3):
            va, vb = _WALL_VERTICES[i]
            pa = _to_screen(*_a2_xy(z.act(va)), width, height, scale)
            pb = _to_screen(*_a2_xy(z.act(vb)), width, height, scale)
            key = tuple(sorted([(_fmt(pa[0]), _fmt(pa[1])), (_fmt(pb[0]), _fmt(pb[1]))]))
            edges.setdefault(key, LAYOUT["wall_colors"][i])
    for key in sorted(edges):
        (x1, y1), (x2, y2) = key
        lines.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{edges[key]}" stroke-width="1.8"/>'
        )
    labels = [((Fraction(0), Fraction(0), Fraction(0)), "o"),
              ((Fraction(-1), Fraction(0), Fraction(0)), "o-(1,0,0)"),
              ((Fraction(-1), Fraction(-1), Fraction(0)), "o-(1,1,0)")]
    for eta, label in labels:
        xx, yy = _to_screen(*_a2_xy(eta), width, height, scale)
        lines.append(f'<circle cx="{_fmt(xx)}" cy="{_fmt(yy)}" r="3.0000" fill="#000000"/>')
        lines.append(
            f'<text x="{_fmt(xx + 5)}" y="{_fmt(yy - 5)}" font-size="11">{label}</text>'
        )
    lines.append(f"<!-- shaded alcoves: {shaded} -->")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render(spec: FigureSpec) -> str:
    if spec.kind == "rank1_line":
        return _render_rank1(spec)
    if spec.kind == "rank2_A2":
        return _render_genericity(spec)
    if spec.kind == "admissible_A2":
        return _render_admissible(spec)
    raise ValueError(f"unsupported figure kind {spec.kind!r}")
