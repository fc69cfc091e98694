"""Static SVG scatter plots of samples with their nerve 1-skeleton.

Needs the optional ``plot`` extra (matplotlib).
"""

import logging
from pathlib import Path

from src.nerve_recon.complex import SimplicialComplex
from src.nerve_recon.errors import DomainError, NerveReconError

logger = logging.getLogger("src.nerve_recon.harness")


def plot_nerve(complex_: SimplicialComplex, path: str | Path, title: str | None = None) -> Path:
    """Write a 2-D or 3-D scatter of the vertices plus nerve edges to ``path`` (SVG)."""
    if complex_.points is None:
        raise DomainError("only geometric complexes can be plotted")
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise NerveReconError("plotting needs matplotlib: pip install 'nerve-recon[plot]'") from exc

    points = complex_.points
    dim = points.shape[1]
    if dim not in (2, 3):
        raise DomainError(f"can only plot 2-D or 3-D clouds, got dimension {dim}")

    fig = plt.figure(figsize=(6, 6))
    if dim == 2:
        ax = fig.add_subplot(1, 1, 1)
        for i, j in complex_.simplices[1]:
            ax.plot(points[[i, j], 0], points[[i, j], 1], color="0.7", linewidth=0.4)
        ax.scatter(points[:, 0], points[:, 1], s=4, color="tab:blue")
        ax.set_aspect("equal")
    else:
        ax = fig.add_subplot(1, 1, 1, projection="3d")
        for i, j in complex_.simplices[1]:
            ax.plot(points[[i, j], 0], points[[i, j], 1], points[[i, j], 2], color="0.7", linewidth=0.3)
        ax.scatter(points[:, 0], points[:, 1], points[:, 2], s=3, color="tab:blue")
    ax.set_title(title or f"nerve eps={complex_.epsilon:g} f={list(complex_.f_vector())}")

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, format="svg")
    plt.close(fig)
    logger.debug("plot_written path=%s", target)
    return target
