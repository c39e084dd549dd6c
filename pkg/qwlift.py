#!/usr/bin/env python3
"""
qwlift - Hadamard quantum walks lifted to a four-state Markov chain.

This is the main entry point for the qwlift tool.
"""

from src.cli import cli

if __name__ == "__main__":
    cli()
