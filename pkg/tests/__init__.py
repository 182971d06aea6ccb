"""tedge test suite."""
