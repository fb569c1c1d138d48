"""Offline rendering of levylab figure-data CSVs."""
__version__ = "0.1.0"

from .render import FIGURES, PanelSpec, RenderError, render, render_all  # noqa: F401
