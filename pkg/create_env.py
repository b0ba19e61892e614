#!/usr/bin/env python
import os


def create_env_file():
    """Create a .env file with the default solver and service settings."""
    env_content = """# Solver resource guards
DP_CELL_LIMIT=100000000
ENUMERATION_LIMIT=2000000
COMBINATION_LIMIT=10000000
FLIP_LIMIT_FACTOR=4

# Numeric configuration
MEASURE_TOLERANCE=1e-9
DEFAULT_EPSILON=0.5

# Instance generators
SPIRAL_VERIFY_MAX_Q=10
DEFAULT_SEED=0

# CLI / batch settings
BATCH_WORKERS=4
SHOW_PROGRESS=False
LOG_LEVEL=INFO

# API settings
API_HOST=0.0.0.0
API_PORT=8000
DEBUG=False
"""

    if os.path.exists(".env"):
        print(".env already exists, leaving it untouched")
        return

    with open(".env", "w") as f:
        f.write(env_content)

    print("Created .env file with default settings")


if __name__ == "__main__":
    create_env_file()
