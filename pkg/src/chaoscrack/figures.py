"""Render the attack pipeline as a grid of grayscale panels."""

from __future__ import annotations

from os import PathLike
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .grid import PixelGrid  # noqa: E402

PIPELINE_PANELS = (
    ("plain", "(a) original P"),
    ("shuffled", "(b) shuffled S"),
    ("cipher", "(c) intercepted C"),
    ("zero_probe", "(d) zero probe P1"),
    ("zero_probe_shuffled", "(e) shuffled S1"),
    ("keystream", "(f) C1 = keystream"),
    ("recovered_shuffled", "(g) C xor keystream"),
    ("index_probe", "(h) index probe P2"),
    ("index_probe_shuffled", "(i) shuffled S2"),
    ("index_probe_cipher", "(j) probe cipher C2"),
    ("recovered", "(k) recovered M"),
)


def render_panels(
    panels: Sequence[tuple[str, PixelGrid]],
    path: str | PathLike,
    ncols: int = 4,
    title: str | None = None,
) -> None:
    nrows = -(-len(panels) // ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(2.4 * ncols, 2.6 * nrows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, (label, img) in zip(axes.flat, panels):
        ax.imshow(img.matrix(), cmap="gray", vmin=0, vmax=255, interpolation="nearest")
        ax.set_title(label, fontsize=9)
    if title:
        fig.suptitle(title, fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_pipeline(images: dict[str, PixelGrid], path: str | PathLike, title: str | None = None) -> None:
    """Draw whichever pipeline stages are present in ``images``, in pipeline order."""
    panels = [(label, images[name]) for name, label in PIPELINE_PANELS if name in images]
    render_panels(panels, path, title=title)
