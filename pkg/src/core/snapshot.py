"""PNG snapshot of a run: agents in their Step-1 colours, leader ringed."""

from __future__ import annotations

from pathlib import Path
from typing import Union

from PIL import Image, ImageDraw

from core.protocol import Color, RendezvousRun

PALETTE = {
    Color.WHITE: (200, 200, 200),
    Color.BLUE: (30, 90, 220),
    Color.GREEN: (40, 170, 60),
    Color.YELLOW: (235, 200, 30),
    Color.PURPLE: (140, 60, 170),
    Color.BROWN: (130, 80, 40),
    Color.ORANGE: (245, 140, 20),
    Color.TAILMAN_S: (90, 55, 25),
    Color.TAILMAN_M: (190, 100, 10),
    Color.MIDDLEMAN: (110, 110, 110),
    Color.PINK: (240, 120, 180),
    Color.RED: (220, 30, 30),
}
BACKGROUND = (20, 20, 24)
# Chiefs and string members are drawn larger than the white/green/yellow field.
EMPHASIS = frozenset({
    Color.BLUE, Color.PINK, Color.RED,
    Color.BROWN, Color.ORANGE, Color.TAILMAN_S, Color.TAILMAN_M, Color.MIDDLEMAN,
})


def render_snapshot(run: RendezvousRun, path: Union[str, Path], size: int = 900) -> Path:
    """Draw the disc and every agent; returns the written path.

    Raises:
        OSError: the image cannot be written.
    """
    if size < 64:
        raise ValueError("snapshot size must be at least 64 pixels")
    margin = 12
    half = size / 2
    scale = (half - margin) / run.cfg.n

    def to_px(x: float, y: float) -> tuple[float, float]:
        return half + x * scale, half - y * scale

    img = Image.new("RGB", (size, size), BACKGROUND)
    draw = ImageDraw.Draw(img)
    draw.ellipse([margin, margin, size - margin, size - margin], outline=(90, 90, 100), width=2)

    colors = run.state.color
    coords = run.state.coords
    order = sorted(range(len(colors)), key=lambda i: (Color(int(colors[i])) in EMPHASIS, i))
    for i in order:
        c = Color(int(colors[i]))
        px, py = to_px(float(coords[i, 0]), float(coords[i, 1]))
        r = 3.0 if c in EMPHASIS else 1.2
        draw.ellipse([px - r, py - r, px + r, py + r], fill=PALETTE[c])

    for leader in run.report.leader_ids:
        px, py = to_px(float(coords[leader, 0]), float(coords[leader, 1]))
        draw.ellipse([px - 9, py - 9, px + 9, py + 9], outline=PALETTE[Color.RED], width=3)

    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    img.save(out, format="PNG")
    return out
