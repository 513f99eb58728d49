"""Tests for relational layers, readout, models and losses."""
