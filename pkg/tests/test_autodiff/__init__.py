"""Tests for the differentiation engine, optimizer and checkpoints."""
