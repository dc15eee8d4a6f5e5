"""Hand-rolled SVG output; no drawing dependency.

Renders into a fixed viewBox covering [-1.2, 1.2]^2 with the y axis
flipped so the complex plane reads the usual way.
"""

from __future__ import annotations

import numpy as np

VIEW = 1.2
SIZE = 640.0

DEFAULT_STYLES = {
    "unit": "none:#999:1",        # fill:stroke:width
    "family": "none:#7aa0c4:0.7",
    "curve": "none:#1a7a1a:2",    # outer envelope / main curve
    "extremes": "none:#c03030:1.5",
}


def _sx(x: float) -> float:
    return (x + VIEW) / (2 * VIEW) * SIZE


def _sy(y: float) -> float:
    return (VIEW - y) / (2 * VIEW) * SIZE


def _style(key: str, styles) -> str:
    fill, stroke, width = (styles or DEFAULT_STYLES).get(key, DEFAULT_STYLES[key]).split(":")
    return f'fill="{fill}" stroke="{stroke}" stroke-width="{width}"'


def _path(points, key: str, styles, closed: bool) -> str:
    coords = " L ".join(f"{_sx(x):.3f},{_sy(y):.3f}" for x, y in points)
    tail = " Z" if closed else ""
    return f'<path class="{key}" d="M {coords}{tail}" {_style(key, styles)}/>'


def render_scene(curve=None, circles=None, extremes=None, closed_curve=True, styles=None) -> str:
    """Compose the SVG document.

    curve: (n, 2) array drawn as the main path; circles: list of
    (cx, cy, r) family circles; extremes: (n, 2) secondary curve.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE:g} {SIZE:g}" '
        f'width="{SIZE:g}" height="{SIZE:g}">',
        f'<circle class="unit" cx="{_sx(0):.3f}" cy="{_sy(0):.3f}" '
        f'r="{SIZE / (2 * VIEW):.3f}" {_style("unit", styles)}/>',
    ]
    for (cx, cy, r) in circles or []:
        parts.append(
            f'<circle class="family" cx="{_sx(cx):.3f}" cy="{_sy(cy):.3f}" '
            f'r="{r * SIZE / (2 * VIEW):.3f}" {_style("family", styles)}/>')
    if extremes is not None and len(extremes):
        parts.append(_path(np.asarray(extremes), "extremes", styles, closed_curve))
    if curve is not None and len(curve):
        parts.append(_path(np.asarray(curve), "curve", styles, closed_curve))
    parts.append("</svg>")
    return "\n".join(parts)
