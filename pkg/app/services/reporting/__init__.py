from app.services.reporting.dot import to_dot
from app.services.reporting.formatting import (
    format_decimal,
    format_fraction,
    format_interpretation,
    format_intervals,
    format_pair,
)

__all__ = [
    "to_dot",
    "format_decimal",
    "format_fraction",
    "format_interpretation",
    "format_intervals",
    "format_pair",
]
