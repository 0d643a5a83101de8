"""Minimal SVG line plot of a Lebesgue function along one axis of the domain."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .grids import Ball, Domain
from .solver import Scheme, lebesgue_function


def axis_segment(domain: Domain, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Points on the segment through the domain centre along the first coordinate."""
    if isinstance(domain, Ball):
        center = np.zeros(domain.n) if domain.center is None else np.asarray(domain.center, dtype=float)
        lo, hi = center[0] - domain.radius, center[0] + domain.radius
    else:
        center = (np.asarray(domain.lower) + np.asarray(domain.upper)) / 2.0
        lo, hi = domain.lower[0], domain.upper[0]
    t = np.linspace(lo, hi, samples)
    pts = np.tile(center, (samples, 1))
    pts[:, 0] = t
    return t, pts


def lebesgue_svg(scheme: Scheme, domain: Domain, samples: int = 400, width: int = 640, height: int = 360) -> str:
    t, pts = axis_segment(domain, samples)
    y = lebesgue_function(scheme, pts)
    pad = 40
    ymax = float(y.max()) if y.max() > 0 else 1.0
    xs = pad + (t - t[0]) / (t[-1] - t[0]) * (width - 2 * pad)
    ys = height - pad - y / ymax * (height - 2 * pad)
    path = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(xs, ys))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
        f'  <rect width="{width}" height="{height}" fill="white"/>\n'
        f'  <line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>\n'
        f'  <line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'  <polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{path}"/>\n'
        f'  <text x="{pad}" y="{pad - 8}" font-size="12">max {ymax:.6g}</text>\n'
        f'  <text x="{pad}" y="{height - pad + 16}" font-size="12">x1 = {t[0]:.4g}</text>\n'
        f'  <text x="{width - pad}" y="{height - pad + 16}" font-size="12" text-anchor="end">x1 = {t[-1]:.4g}</text>\n'
        "</svg>\n"
    )


def write_lebesgue_svg(scheme: Scheme, domain: Domain, path: str | Path, samples: int = 400) -> None:
    Path(path).write_text(lebesgue_svg(scheme, domain, samples))
