#!/usr/bin/env python3
"""
Engel structure toolkit - command-line entry point.

Run ``python engel.py --help`` for the list of subcommands.
"""

from src.cli.main import main


if __name__ == "__main__":
    main()
