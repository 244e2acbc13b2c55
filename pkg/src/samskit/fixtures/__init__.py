"""Bundled example collections."""
