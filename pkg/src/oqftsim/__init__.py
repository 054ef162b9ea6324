"""oqftsim: resource co-design simulator for optimistic quantum Fourier
transforms on a surface-code neutral-atom architecture."""

__version__ = "0.1.0"

from .params import PatchGeometry, SystemParams, move_ticks, move_time, reach_spans, validate_params

__all__ = [
    "SystemParams", "PatchGeometry", "validate_params",
    "move_time", "move_ticks", "reach_spans",
    "__version__",
]
