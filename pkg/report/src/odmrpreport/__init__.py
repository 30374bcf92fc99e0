from .charts import FigureSpec, MissingCellsError, ReportError, render, report_all

__version__ = "0.1.0"

__all__ = ["FigureSpec", "MissingCellsError", "ReportError", "render",
           "report_all", "__version__"]
