"""
Schema definitions for qwlift.

This module contains the Pydantic models and enums shared by the walk
engine, the oracle and the command-line interface.
"""

import re
from enum import Enum
from typing import List, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BoundaryKind(str, Enum):
    """Boundary conditions applied at the two extreme lattice sites."""
    NONE = "none"
    CYCLIC = "cyclic"
    REFLECT1 = "reflect1"
    REFLECT2 = "reflect2"
    TRAP = "trap"


EDGE_KINDS = (BoundaryKind.REFLECT1, BoundaryKind.REFLECT2, BoundaryKind.TRAP)


class System(str, Enum):
    """Which side of the lift an operator acts on."""
    LIFTED = "lifted"
    UNITARY = "unitary"


class Scaling(str, Enum):
    """Scaling mode of a lifted state."""
    SQRT2_STEP = "sqrt2-step"
    UNSCALED = "unscaled"


class LiftMode(str, Enum):
    """How a qubit state is lifted into the four coin populations."""
    SIGN_SPLIT = "sign-split"
    RAW = "raw"


class OutputFormat(str, Enum):
    """Dataset file formats."""
    CSV = "csv"
    JSON = "json"


class BoundarySpec(BaseModel):
    """Model for the boundary condition of a walk."""
    model_config = ConfigDict(frozen=True)

    kind: BoundaryKind = BoundaryKind.NONE
    cyclic: bool = False

    @property
    def wraps(self) -> bool:
        """True when the shift operator is closed cyclically."""
        return self.kind == BoundaryKind.CYCLIC or self.cyclic

    @property
    def has_edges(self) -> bool:
        """True when the edge sites carry their own coin matrix."""
        return self.kind in EDGE_KINDS

    def check_lattice(self, lattice: "Lattice") -> None:
        """
        Raise ValueError when this boundary cannot be placed on the lattice.

        Args:
            lattice (Lattice): Lattice the boundary is applied to
        """
        if self.has_edges and lattice.m < 3:
            raise ValueError(
                f"Boundary kind '{self.kind.value}' needs at least 3 sites, got {lattice.m}"
            )


class Lattice(BaseModel):
    """
    Model for an m-site line.

    Sites are indexed 0..m-1 internally; ``first_label`` only affects the
    labels shown to users (dataset ``site`` column, InitialSpec sites).
    """
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    first_label: int = 0

    @classmethod
    def centered(cls, steps: int) -> "Lattice":
        """Lattice of 2n+3 sites labelled by signed offset from the centre."""
        return cls(m=2 * steps + 3, first_label=-(steps + 1))

    @classmethod
    def numbered(cls, m: int) -> "Lattice":
        """Lattice of m sites labelled 1..m."""
        return cls(m=m, first_label=1)

    def labels(self) -> np.ndarray:
        return np.arange(self.first_label, self.first_label + self.m)

    def index_of(self, label: int) -> int:
        """
        Convert a site label to a lattice index.

        Args:
            label (int): Site label

        Returns:
            int: Index in 0..m-1
        """
        index = label - self.first_label
        if not 0 <= index < self.m:
            last = self.first_label + self.m - 1
            raise ValueError(f"Site {label} is outside the lattice [{self.first_label}, {last}]")
        return index

    def dimension(self, system: System) -> int:
        return (4 if system == System.LIFTED else 2) * self.m


_NUMBER = r"\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"
_PAIR = rf"\({_NUMBER},{_NUMBER}\)"
_INITIAL_RE = re.compile(
    rf"^(point|uniform):(-?\d+)(?:-(-?\d+))?:\s*{_PAIR}\s*,\s*{_PAIR}\s*$"
)


class InitialSpec(BaseModel):
    """
    Model for an initial condition.

    Textual grammar::

        point:SITE:(RE_A0,IM_A0),(RE_A1,IM_A1)
        uniform:FIRST-LAST:(RE_A0,IM_A0),(RE_A1,IM_A1)

    Amplitudes are used as written, without renormalisation.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["point", "uniform"]
    first: int
    last: int
    a0: Tuple[float, float]
    a1: Tuple[float, float]

    @model_validator(mode="after")
    def _check(self) -> "InitialSpec":
        if self.last < self.first:
            raise ValueError(f"initial: site range {self.first}-{self.last} is empty")
        if self.kind == "point" and self.first != self.last:
            raise ValueError("initial: a point start covers exactly one site")
        if not any(self.a0 + self.a1):
            raise ValueError("initial: at least one amplitude must be nonzero")
        return self

    @classmethod
    def parse(cls, text: str) -> "InitialSpec":
        """
        Parse the textual grammar.

        Args:
            text (str): Specification such as ``point:0:(1,0),(0,0)``

        Returns:
            InitialSpec: Parsed specification
        """
        # Accept the typographic minus sign as well
        normalized = text.replace("−", "-").strip()
        match = _INITIAL_RE.match(normalized)
        if not match:
            raise ValueError(f"initial: cannot parse '{text}'")

        kind, first, last, re0, im0, re1, im1 = match.groups()
        if kind == "point" and last is not None:
            raise ValueError(f"initial: point start takes a single site, got '{text}'")
        if kind == "uniform" and last is None:
            raise ValueError(f"initial: uniform start needs a FIRST-LAST range, got '{text}'")

        first_site = int(first)
        return cls(
            kind=kind,
            first=first_site,
            last=int(last) if last is not None else first_site,
            a0=(float(re0), float(im0)),
            a1=(float(re1), float(im1)),
        )

    def amplitudes(self) -> Tuple[complex, complex]:
        return complex(*self.a0), complex(*self.a1)

    def site_labels(self) -> List[int]:
        return list(range(self.first, self.last + 1))


class RunRequest(BaseModel):
    """Model for a ``run`` command request."""
    steps: int = Field(ge=0)
    sites: Union[int, Literal["auto"]] = "auto"
    boundary: BoundarySpec = BoundarySpec()
    initial: InitialSpec
    scaling: Scaling = Scaling.SQRT2_STEP
    lift_mode: LiftMode = LiftMode.SIGN_SPLIT
    output: str = "walk.csv"
    format: OutputFormat = OutputFormat.CSV

    @model_validator(mode="after")
    def _check_sites(self) -> "RunRequest":
        if self.sites == "auto":
            if self.boundary.kind != BoundaryKind.NONE:
                raise ValueError("sites: 'auto' is only valid with boundary kind 'none'")
        elif self.sites < 2:
            raise ValueError(f"sites: need at least 2 sites, got {self.sites}")
        return self

    def lattice(self) -> Lattice:
        if self.sites == "auto":
            return Lattice.centered(self.steps)
        return Lattice.numbered(self.sites)


class MomentReport(BaseModel):
    """Model for the moments of a site distribution."""
    mean: float
    std: float = Field(ge=0.0)
    total: float = Field(ge=0.0)


class ResidualRow(BaseModel):
    """Model for one named identity check."""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    residual: float
    tolerance: float
    passed: bool = Field(alias="pass")
    identity: str = Field(default="", exclude=True)


class SuiteReport(BaseModel):
    """Model for the equivalence suite result."""
    seed: int
    rows: List[ResidualRow]

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)


class BenchRow(BaseModel):
    """Model for one benchmark timing."""
    engine: Literal["structural", "dense"]
    m: int
    n: int
    seconds: float
    steps_per_sec: float


# Column order of every per-site dataset
DATASET_COLUMNS = [
    "site",
    "p0_re", "p0_im",
    "p1_re", "p1_im",
    "m1_re", "m1_im",
    "m0_re", "m0_im",
    "prob0", "prob1", "prob_total",
    "classical",
    "phase0", "phase1",
]
