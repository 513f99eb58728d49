"""Tests for the chemistry parser and writer."""
