#!/usr/bin/env python3
"""
Troplanar
=========

Entry point when running from a checkout; installed copies use the
``troplanar`` console script.
"""

from troplanar.cli import app

if __name__ == "__main__":
    app()
