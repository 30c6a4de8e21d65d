"""Command-line text: polynomial parsing and report rendering."""
