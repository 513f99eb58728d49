"""Tests for hyperrxn data models."""
