"""Plots of one-variable cell decompositions.

This module draws the cells of a decomposition on the real line, one row per target set,
with the breakpoints marked. Algebraic endpoints are placed at floating-point
approximations, which are used for drawing only.
"""

import base64
import logging
from io import BytesIO
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from algebra.algreal import AlgReal  # noqa: E402
from config.settings import settings  # noqa: E402
from rcf.decompose import Decomposition  # noqa: E402

logger = logging.getLogger(__name__)


class Plotter:
    """Renders decompositions to PNG.

    Features:
    - One row per target set
    - Open intervals as bars, points as dots
    - Base64 or file output
    """

    def __init__(self):
        """Initialize plotter with default style settings."""
        self.default_figsize = (10, 4)
        self.default_dpi = settings.plot_dpi

    def cell_frame(self, decomposition: Decomposition) -> pd.DataFrame:
        """One row per (target, cell) with approximate ends; infinite ends are NaN."""
        rows = []
        for target, members in enumerate(decomposition.certificates):
            for k in members:
                cell = decomposition.cells[k]
                if cell["kind"] == "point":
                    at = AlgReal.from_json(cell["at"]).approx()
                    lo, hi = at, at
                else:
                    lo = float("nan") if cell["lo"] is None else AlgReal.from_json(cell["lo"]).approx()
                    hi = float("nan") if cell["hi"] is None else AlgReal.from_json(cell["hi"]).approx()
                rows.append({"target": target, "kind": cell["kind"], "lo": lo, "hi": hi,
                             "label": decomposition.labels[k]})
        return pd.DataFrame(rows, columns=["target", "kind", "lo", "hi", "label"])

    def _span(self, breakpoints: list[float]) -> tuple[float, float]:
        if not breakpoints:
            return -1.0, 1.0
        lo, hi = min(breakpoints), max(breakpoints)
        margin = max(1.0, (hi - lo) * 0.25)
        return lo - margin, hi + margin

    def _draw(self, decomposition: Decomposition, names: Optional[Sequence[str]], title: str) -> None:
        breakpoints = [AlgReal.from_json(b).approx() for b in decomposition.breakpoints]
        left, right = self._span(breakpoints)
        df = self.cell_frame(decomposition)
        plt.figure(figsize=self.default_figsize)
        for b in breakpoints:
            plt.axvline(b, color="grey", linestyle="--", linewidth=0.8)
        for row in df.itertuples():
            if row.kind == "point":
                plt.plot([row.lo], [row.target], "o", color="black")
            else:
                lo = left if pd.isna(row.lo) else row.lo
                hi = right if pd.isna(row.hi) else row.hi
                plt.plot([lo, hi], [row.target, row.target], linewidth=4, solid_capstyle="butt")
                plt.plot([lo, hi], [row.target, row.target], "o", mfc="white", color="black")
        count = len(decomposition.certificates)
        labels = list(names) if names is not None else [f"target {i}" for i in range(count)]
        plt.yticks(range(count), labels)
        plt.xlim(left, right)
        plt.ylim(-1, max(count, 1))
        plt.title(title)
        plt.tight_layout()

    def _convert_to_base64(self) -> str:
        img_buffer = BytesIO()
        plt.savefig(img_buffer, format="png", dpi=self.default_dpi)
        img_buffer.seek(0)
        img_base64 = base64.b64encode(img_buffer.getvalue()).decode()
        plt.close()
        return img_base64

    def plot_decomposition(self, decomposition: Decomposition, path: Optional[Path] = None,
                           names: Optional[Sequence[str]] = None, title: str = "") -> Optional[str]:
        """Draw a decomposition.

        Args:
            decomposition: Cells and per-target certificates
            path: PNG file to write; when omitted the image is returned as base64
            names: Row labels, one per target
            title: Chart title

        Returns:
            Optional[str]: Base64 PNG when no path is given, else None
        """
        if not settings.enable_visualization:
            logger.warning("Visualization disabled, no plot drawn")
            return None
        self._draw(decomposition, names, title)
        if path is None:
            return self._convert_to_base64()
        plt.savefig(path, format="png", dpi=self.default_dpi)
        plt.close()
        logger.info(f"Decomposition plot written to {path}")
        return None


# Create global plotter instance
plotter = Plotter()
