"""Test package for hyperrxn."""
