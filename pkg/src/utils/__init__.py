"""Shared utilities: schema validation and stage telemetry."""
