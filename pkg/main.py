#!/usr/bin/env python3
"""Salem Entropy Toolkit launcher: `python main.py <command> <polynomial> [options]`."""
import os
import sys

# Repository root on the path so `src` imports as a package
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main_app import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
