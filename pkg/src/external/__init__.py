"""Witness and isometry documents on disk."""
