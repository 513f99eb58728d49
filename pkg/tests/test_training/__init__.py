"""Tests for datasets, configuration and the training loop."""
