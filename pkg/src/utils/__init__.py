"""Logging, persisted settings, worker threads, timing and host information."""
