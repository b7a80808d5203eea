"""Exact planning of translation schedules for axis-parallel rectangles."""
from .configurations import Configuration, boxed_budget, compute_configuration, morph
from .event_parallel import ParallelEvent, build_parallel_lp, solve_parallel_lp
from .event_serial import Event, Witness, build_lp, solve_serial_lp
from .geometry import Rect, Vec2, interiors_overlap, parallel_collision, serial_collision, trace_polygon
from .grid import Grid, build_grid
from .grid_search import solve_serial_grid
from .lp import LinProblem, solve_feasibility
from .model import (
    AXIS_DIRS,
    DirectionSet,
    Infeasible,
    Instance,
    Move,
    Robot,
    Schedule,
    parse_instance,
    parse_schedule,
    serialize_instance,
    serialize_schedule,
    verify_schedule,
)
from .oracle import bfs_parallel, bfs_serial

__all__ = [
    "Configuration",
    "boxed_budget",
    "compute_configuration",
    "morph",
    "ParallelEvent",
    "build_parallel_lp",
    "solve_parallel_lp",
    "Event",
    "Witness",
    "build_lp",
    "solve_serial_lp",
    "Rect",
    "Vec2",
    "interiors_overlap",
    "parallel_collision",
    "serial_collision",
    "trace_polygon",
    "Grid",
    "build_grid",
    "solve_serial_grid",
    "LinProblem",
    "solve_feasibility",
    "AXIS_DIRS",
    "DirectionSet",
    "Infeasible",
    "Instance",
    "Move",
    "Robot",
    "Schedule",
    "parse_instance",
    "parse_schedule",
    "serialize_instance",
    "serialize_schedule",
    "verify_schedule",
    "bfs_parallel",
    "bfs_serial",
]
