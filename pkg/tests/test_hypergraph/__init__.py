"""Tests for rxn-hypergraph construction, features and batching."""
