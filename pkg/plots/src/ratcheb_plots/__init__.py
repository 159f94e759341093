"""Figure rendering for ratcheb fit artifacts.

Reads the fit CLI's public file formats (error_curve.csv, extrema.json,
optionally target.csv) and renders a two-panel figure. Deliberately has
no import-level dependency on the fitting package: the file formats are
the only contract between the two.
"""

from .render import ParseError, PlotJob, render

__all__ = ["ParseError", "PlotJob", "render"]

__version__ = "0.1.0"
