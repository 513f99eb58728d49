"""Tests for the reaction fingerprint baseline."""
