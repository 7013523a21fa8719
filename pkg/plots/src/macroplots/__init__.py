"""Figure rendering for macrolab CSV output.

Consumes only the documented CSV schemas; never imports the analysis
package itself.
"""

__version__ = "0.1.0"

from .figures import FIGURE_IDS, FigureSpec, Panel, RefLine, Series, build_dataset
from .schema import BOUNDS_COLUMNS, SAMPLE_COLUMNS, SchemaError, read_bounds_rows, read_sample_rows
from .draw import render

__all__ = [
    "BOUNDS_COLUMNS",
    "FIGURE_IDS",
    "FigureSpec",
    "Panel",
    "RefLine",
    "SAMPLE_COLUMNS",
    "SchemaError",
    "Series",
    "build_dataset",
    "read_bounds_rows",
    "read_sample_rows",
    "render",
]
