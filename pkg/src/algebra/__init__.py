"""Exact polynomial and matrix algebra package."""
