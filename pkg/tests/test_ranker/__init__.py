"""Tests for pairwise ranking and ranked-pairs voting."""
