from .report_converter import ReportConverter

__all__ = ('ReportConverter',)
