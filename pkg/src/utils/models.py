from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt


# File formats

class PolygonFile(BaseModel):
    """JSON polygon input: {"vertices": [[x, y], ...]} with integer coordinates."""
    vertices: List[Tuple[StrictInt, StrictInt]]


class MeasureTableFile(BaseModel):
    """Explicit atom table keyed by "i,j" (edge base) or "a,b,c" (triangle base)."""
    base: Literal["edge", "triangle"] = "edge"
    combiner: Literal["sum", "min", "max"] = "sum"
    atoms: Dict[str, Union[StrictInt, float]] = Field(default_factory=dict)
    default: Optional[Union[StrictInt, float]] = None
    name: str = "table"


class TriangulationFile(BaseModel):
    """One or more triangulations, each a canonical list of [i, j] pairs."""
    triangulations: List[List[Tuple[StrictInt, StrictInt]]]


# Reports

class InstanceSummary(BaseModel):
    n: int
    diagonal_count: int
    convex: bool
    flipped: bool = False
    cocircular: Optional[bool] = None


class CertificateModel(BaseModel):
    method: str
    alpha_bound_checked: bool = False
    alpha_effective: Optional[str] = None
    beta: Optional[str] = None  # rational as "p/q"
    r_used: Optional[int] = None


class SolutionModel(BaseModel):
    triangulations: List[List[Tuple[int, int]]] = Field(default_factory=list)
    count: Optional[int] = None
    sum_sd: Optional[int] = None
    min_sd: Optional[int] = None
    quality_values: List[Optional[float]] = Field(default_factory=list)  # None encodes +inf
    weight_values: List[Optional[float]] = Field(default_factory=list)
    optimum: Optional[float] = None


class RunReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    argv: List[str] = Field(default_factory=list)
    status: Literal["ok", "infeasible", "invalid", "resource-limit", "internal-error"] = "ok"
    exit_code: int = 0
    message: Optional[str] = None
    instance: Optional[InstanceSummary] = None
    solution: Optional[SolutionModel] = None
    certificate: Optional[CertificateModel] = None
    timing_ms: int = 0
    source: Optional[str] = None
