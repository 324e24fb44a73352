"""Tests for the matrix polynomial eigenvalue locator."""
