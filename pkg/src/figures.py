"""
Figure datasets for qwlift.

Each figure id maps to a fixed walk configuration. Building a figure runs
that walk and writes plot-ready datasets; images are not rendered.
"""

import logging
import math
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel

from .line_walk import run_lifted_walk, site_distribution
from .report_writer import DatasetWriter
from .schemas import (
    BoundaryKind,
    BoundarySpec,
    InitialSpec,
    OutputFormat,
    RunRequest,
    Scaling,
)

logger = logging.getLogger(__name__)

_HALF = 1 / math.sqrt(2)
_FINITE = 1 / math.sqrt(46)


class FigureConfig(BaseModel):
    """One registered figure: a walk and the columns written for it."""
    figure_id: int
    title: str
    sites: Union[int, Literal["auto"]] = "auto"
    boundary: BoundaryKind = BoundaryKind.NONE
    initial: str
    steps: Tuple[int, ...]
    columns: Optional[Tuple[str, ...]] = None
    core_radius: Optional[int] = None

    def request(self, steps: int) -> RunRequest:
        return RunRequest(
            steps=steps,
            sites=self.sites,
            boundary=BoundarySpec(kind=self.boundary),
            initial=InitialSpec.parse(self.initial),
            scaling=Scaling.UNSCALED,
        )

    def filename(self, steps: int, fmt: OutputFormat) -> str:
        suffix = f"_n{steps}" if len(self.steps) > 1 else ""
        return f"figure{self.figure_id}{suffix}.{fmt.value}"


FIGURES: Dict[int, FigureConfig] = {
    3: FigureConfig(
        figure_id=3,
        title="Four coin-state populations and quantum probabilities after 100 steps from |0> at the origin",
        initial="point:0:(1,0),(0,0)",
        steps=(100,),
    ),
    4: FigureConfig(
        figure_id=4,
        title="Classical walk against quantum walk after 100 steps from |0> at the origin",
        initial="point:0:(1,0),(0,0)",
        steps=(100,),
        columns=("site", "classical", "prob_total"),
        core_radius=100,
    ),
    5: FigureConfig(
        figure_id=5,
        title="Probabilities and phase differences after 50 steps from (|0> + i|1>)/sqrt 2",
        initial=f"point:0:({_HALF!r},0),(0,{_HALF!r})",
        steps=(50,),
    ),
    8: FigureConfig(
        figure_id=8,
        title="25 sites between reflect1 boundaries after 35 and 65 steps, (|0> - |1>)/sqrt 46 on sites 2-24",
        sites=25,
        boundary=BoundaryKind.REFLECT1,
        initial=f"uniform:2-24:({_FINITE!r},0),({-_FINITE!r},0)",
        steps=(35, 65),
    ),
    9: FigureConfig(
        figure_id=9,
        title="Classical occupation between two partial traps after 65 steps, same start as figure 8",
        sites=25,
        boundary=BoundaryKind.REFLECT1,
        initial=f"uniform:2-24:({_FINITE!r},0),({-_FINITE!r},0)",
        steps=(65,),
        columns=("site", "classical"),
    ),
}


def figure_columns(config: FigureConfig, steps: int) -> Dict[str, np.ndarray]:
    """
    Run one configured walk and collect the columns written for it.

    Args:
        config (FigureConfig): Registered figure
        steps (int): One of config.steps

    Returns:
        Dict[str, np.ndarray]: Column name to values
    """
    state = run_lifted_walk(config.request(steps))
    columns = site_distribution(state).columns()
    if config.columns is not None:
        columns = {name: columns[name] for name in config.columns}

    if config.core_radius is not None:
        keep = np.abs(columns["site"]) <= config.core_radius
        columns = {name: values[keep] for name, values in columns.items()}
    return columns


def build_figure(
    figure_id: int,
    output_dir: str = ".",
    fmt: OutputFormat = OutputFormat.CSV,
) -> List[str]:
    """
    Write the datasets behind a figure.

    Args:
        figure_id (int): 3, 4, 5, 8 or 9
        output_dir (str): Directory to write to
        fmt (OutputFormat): csv or json

    Returns:
        List[str]: Paths of the written files
    """
    if figure_id not in FIGURES:
        raise ValueError(f"Unknown figure id {figure_id}; choose from {sorted(FIGURES)}")

    config = FIGURES[figure_id]
    logger.info(f"Building figure {figure_id}: {config.title}")
    writer = DatasetWriter(output_dir)
    return [
        writer.write(figure_columns(config, steps), config.filename(steps, fmt), fmt)
        for steps in config.steps
    ]
