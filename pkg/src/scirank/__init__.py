"""Science-model ranking services for scholarly search."""

__version__ = "0.1.0"
