"""Observability package for structured logging."""
