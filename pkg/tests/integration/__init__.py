"""End-to-end tests of the tedge command line."""
