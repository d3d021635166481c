"""relaylab-figures: plots relaylab sweep CSVs; no math is recomputed."""

from .render import FIGURE_IDS, FigureSpec, RenderError, RenderResult, render

__version__ = "0.1.0"

__all__ = ["FIGURE_IDS", "FigureSpec", "RenderError", "RenderResult", "render"]
