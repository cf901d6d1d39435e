"""Architectural slicing for WRIGHT-style architecture specifications."""

from importlib import resources

from .aifg import Aifg, Arc, ArcKind, Vertex, VertexKind, build_aifg, to_dot, to_json
from .flow import DirectionClass, classify_element, enumerate_paths, internal_flows
from .model import Specification, validate
from .parser import ParseError, parse, render
from .slicer import (
    CriterionError,
    ReducedSpecification,
    SliceDirection,
    SlicingCriterion,
    backward_slice_graph,
    forward_slice_graph,
    reduce_specification,
    resolve_criterion,
    slice_graph,
    slice_spec,
)

__version__ = "0.1.0"


def gas_station_text() -> str:
    """Source of the bundled Gas Station example."""
    return resources.files(__package__).joinpath("data/gas_station.wrt").read_text("utf-8")
