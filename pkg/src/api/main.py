import time
import logging
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, StrictInt

from src.cli.report import error_report, run_bct, run_enumerate, run_min_dt, run_sum_dnt, run_validate
from src.geometry.polygon import validate_polygon
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, ResourceLimit, TriangulationError
from src.utils.models import RunReport

from config.config import API_HOST, API_PORT, DEBUG

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if DEBUG else logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title="Diverse Triangulation API",
    description="Bi-criteria and diverse triangulations of simple polygons",
    version="0.1.0"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

HTTP_STATUS = (
    (Infeasible, 409),
    (InvalidInput, 422),
    (ResourceLimit, 413),
    (InvariantViolation, 500),
)

Rational = Union[StrictInt, float, str]


# Define request models
class PolygonRequest(BaseModel):
    vertices: List[Tuple[StrictInt, StrictInt]]


class EnumerateRequest(PolygonRequest):
    limit: Optional[int] = None


class BctRequest(PolygonRequest):
    weight: str
    quality: str
    bound: Rational
    k: int = 1
    epsilon: Optional[Rational] = None
    sense: str = "minimize"
    constraint: str = "at-most"
    W: Optional[int] = None


class SumDntRequest(PolygonRequest):
    k: int
    measure: str = "const0"
    alpha: Rational = 1
    epsilon: Optional[Rational] = None
    method: str = "auto"


class MinDtRequest(PolygonRequest):
    k: int


def _rational(value) -> Optional[Fraction]:
    if value is None:
        return None
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"'{value}' is not a number")


def _handle(command: str, request: PolygonRequest, solve: Callable) -> RunReport:
    """Validate the polygon, run the solver and map library errors to HTTP statuses."""
    logger.info(f"{command} request with {len(request.vertices)} vertices")
    start_time = time.time()
    try:
        polygon = validate_polygon([list(v) for v in request.vertices])
        instance, solution, certificate = solve(polygon)
        total_time = int((time.time() - start_time) * 1000)
        logger.info(f"{command} finished in {total_time}ms")
        return RunReport(
            command=command,
            instance=instance,
            solution=solution,
            certificate=certificate,
            timing_ms=total_time,
        )
    except TriangulationError as e:
        report = error_report(command, [], e, int((time.time() - start_time) * 1000))
        status = next((code for cls, code in HTTP_STATUS if isinstance(e, cls)), 500)
        logger.warning(f"{command} failed with {status}: {e}")
        raise HTTPException(status_code=status, detail=report.model_dump())
    except Exception as e:
        logger.error(f"Error processing {command}: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))


@app.on_event("startup")
async def startup_event():
    logger.info("=" * 50)
    logger.info("Diverse Triangulation API started")
    logger.info(f"Server URL: http://{API_HOST}:{API_PORT}")
    logger.info(f"API docs: http://{API_HOST}:{API_PORT}/docs")
    logger.info(f"Debug mode: {DEBUG}")
    logger.info("=" * 50)


@app.get("/")
async def root():
    """Root endpoint for health check."""
    return {"status": "ok", "message": "Diverse Triangulation API is running"}


@app.post("/api/validate", response_model=RunReport)
def validate(request: PolygonRequest):
    return _handle("validate", request, run_validate)


@app.post("/api/enumerate", response_model=RunReport)
def enumerate_triangulations(request: EnumerateRequest):
    return _handle("enumerate", request, lambda p: run_enumerate(p, request.limit))


@app.post("/api/bct", response_model=RunReport)
def bct(request: BctRequest):
    """
    k best triangulations under a weight with a bound on a quality measure.
    """
    return _handle("bct", request, lambda p: run_bct(
        p, request.weight, request.quality, _rational(request.bound), request.k,
        _rational(request.epsilon), request.sense, request.constraint, request.W,
    ))


@app.post("/api/sum-dnt", response_model=RunReport)
def sum_dnt(request: SumDntRequest):
    return _handle("sum-dnt", request, lambda p: run_sum_dnt(
        p, request.measure, request.k, _rational(request.alpha), _rational(request.epsilon), request.method,
    ))


@app.post("/api/min-dt", response_model=RunReport)
def min_dt(request: MinDtRequest):
    return _handle("min-dt", request, lambda p: run_min_dt(p, request.k))


if __name__ == "__main__":
    import uvicorn
    print("\n" + "=" * 50)
    print("Starting Diverse Triangulation API...")
    print(f"Server URL: http://{API_HOST}:{API_PORT}")
    print(f"API docs: http://{API_HOST}:{API_PORT}/docs")
    print("=" * 50 + "\n")
    uvicorn.run("src.api.main:app", host=API_HOST, port=API_PORT, reload=DEBUG)
