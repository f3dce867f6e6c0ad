"""Pydantic models for rcdkit documents and reports.

Rationals travel as strings (``"1/3"``), partitions as arrays of arrays of
0-based state indices.
"""

from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr


class Mode(str, Enum):
    """Arithmetic mode of an instance."""

    RATIONAL = "rational"
    FLOAT = "float"


class InstanceDocument(BaseModel):
    """Wire form of an instance."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    n: StrictInt = Field(..., ge=1, description="Number of states")
    nu: List[Union[StrictStr, StrictInt]] = Field(
        ..., description="Measure weights as rational strings"
    )
    kernel: Optional[List[List[Union[StrictStr, StrictInt]]]] = Field(
        None, alias="R", description="Kernel rows as rational strings"
    )
    partition: Optional[List[List[StrictInt]]] = Field(
        None, description="Blocks of 0-based states"
    )
    mode: Mode = Mode.RATIONAL
    epsilon: Optional[StrictStr] = Field(None, description="Decimal tolerance, float mode only")
    meta: Optional[Dict[str, str]] = Field(None, description="Free-form annotations")


class Witness(BaseModel):
    """Concrete data certifying a failed (or, for certificates, held) property."""

    x: Optional[int] = None
    y: Optional[int] = None
    z: Optional[int] = None
    set_a: Optional[List[int]] = None
    set_b: Optional[List[int]] = None
    lhs: Optional[str] = Field(None, description="Left side of the violated equation")
    rhs: Optional[str] = Field(None, description="Right side of the violated equation")
    note: Optional[str] = None


class PropertyVerdict(BaseModel):
    """Outcome of one property check."""

    prop: str
    holds: bool
    witness: Optional[Witness] = None
    certificate: Optional[List[int]] = Field(
        None, description="Full-measure union of blocks on which (P)/(T) hold"
    )


class PropertyProfile(BaseModel):
    """All property verdicts for one (kernel, measure, partition) triple."""

    sigma: List[List[int]]
    partition: List[List[int]]
    partition_source: str = Field(..., description="'sigma', 'document' or 'argument'")
    verdicts: Dict[str, PropertyVerdict]

    def holds(self, prop: str) -> bool:
        return self.verdicts[prop].holds


class FailedCondition(str, Enum):
    """Which condition made a kernel fail to be an r.c.d."""

    STATIONARITY = "stationarity"
    TOTALITY = "totality"
    ABS_CONTINUITY = "abs_continuity"


class RcdVerdict(BaseModel):
    """Decision whether a kernel is an r.c.d. for a measure."""

    is_rcd: bool
    conditioning: Optional[List[List[int]]] = None
    failed_condition: Optional[FailedCondition] = None
    witness: Optional[Witness] = None
    abs_continuous: Optional[bool] = None


class OracleResult(BaseModel):
    """Brute-force scan of every partition against the r.c.d. definition."""

    accepted: List[List[List[int]]]
    partitions_scanned: int


class CounterexampleRecord(BaseModel):
    """Instance on which a law's premise holds and its conclusion fails."""

    trial: int
    instance: InstanceDocument
    aux_partition: Optional[List[List[int]]] = None
    witness: Optional[Witness] = None


class LawReport(BaseModel):
    """Result of one falsification campaign."""

    law: str
    statement: str
    anchor: str
    trials: int
    premise_hits: int
    premise_rate: float
    counterexamples: List[CounterexampleRecord]
    seed: int
    n_range: List[int]
    generator_version: str
    mode: Mode = Mode.RATIONAL
    expect_counterexample: bool = False
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """True when the outcome matches the law's expectation."""
        found = bool(self.counterexamples)
        return found if self.expect_counterexample else not found
