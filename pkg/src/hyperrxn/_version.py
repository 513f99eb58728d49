"""Version information for hyperrxn."""

__version__ = "0.1.0"
