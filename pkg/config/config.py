import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
INSTANCES_DIR = DATA_DIR / "instances"

# Solver resource guards
DP_CELL_LIMIT = int(os.getenv("DP_CELL_LIMIT", str(10**8)))  # cells per DP table
ENUMERATION_LIMIT = int(os.getenv("ENUMERATION_LIMIT", "2000000"))  # triangulations
COMBINATION_LIMIT = int(os.getenv("COMBINATION_LIMIT", str(10**7)))  # k-subsets scanned
FLIP_LIMIT_FACTOR = int(os.getenv("FLIP_LIMIT_FACTOR", "4"))  # flips allowed = factor * n^3

# Numeric configuration
MEASURE_TOLERANCE = float(os.getenv("MEASURE_TOLERANCE", "1e-9"))
DEFAULT_EPSILON = float(os.getenv("DEFAULT_EPSILON", "0.5"))  # convex and Delaunay dispatch when none is given

# Instance generators
SPIRAL_VERIFY_MAX_Q = int(os.getenv("SPIRAL_VERIFY_MAX_Q", "10"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))
RANDOM_GRID_FACTOR = 10  # grid side = factor * n for random polygons

# Rendering
MAX_RENDER_LAYERS = 8
SVG_MARGIN = 0.05  # fraction of the bounding box
SVG_STROKES = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#e377c2", "#8c564b"]

# CLI / batch settings
BATCH_WORKERS = int(os.getenv("BATCH_WORKERS", "4"))
SHOW_PROGRESS = os.getenv("SHOW_PROGRESS", "False").lower() in ("true", "1", "t")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# API settings
API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("API_PORT", "8000"))
DEBUG = os.getenv("DEBUG", "False").lower() in ("true", "1", "t")
