from .panels import PANEL_IDS, PANELS, PanelSpec, SeriesSpec
from .render import SchemaError, render_figures, render_panel

__all__ = ["PANELS", "PANEL_IDS", "PanelSpec", "SeriesSpec", "SchemaError", "render_figures", "render_panel"]
