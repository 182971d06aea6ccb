"""Unit tests for tedge components."""
