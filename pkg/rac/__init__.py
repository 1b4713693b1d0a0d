"""RAC1 drawing toolkit: validation, planarization, charging audits and the 5n-10 family."""

__version__ = "0.1.0"
