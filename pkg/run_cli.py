#!/usr/bin/env python
import os
import sys

# Add the project root to PYTHONPATH
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.cli.main import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
