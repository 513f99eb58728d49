"""Tests for attention records and interpretability scores."""
