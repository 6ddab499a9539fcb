"""Equal-area partition of triangles by perpendiculars through a point,
plus translation-based area partition of convex polygons by a three-ray
fan.  See `tripart.partition.equal_partition` for the main entry point
and the `tripart` command line for file-based use."""

from .geometry import (
    ConvexPolygon,
    GeometryError,
    HalfPlane,
    Point,
    RegionAreas,
    Sector,
    Triangle,
    clip_halfplane,
    foot_of_perpendicular,
    min_area_f,
    outward_normal,
    polygon_area,
    region_area,
    region_areas,
    region_polygon,
    sector_at_vertex,
)
from .masspart import (
    MassPartitionError,
    SectorConfig,
    Targets,
    TranslationSolution,
    sector_areas,
    solve_translation,
    validate_config,
)
from .partition import (
    Classification,
    LabelSets,
    PartitionError,
    PartitionSolution,
    SolverConfig,
    SolverError,
    SolverReport,
    VerifyReport,
    boundary_point_closed_form,
    classify,
    cut_line_offset,
    equal_partition,
    lemma_check,
    solve_exterior,
    solve_kkm,
    solve_maximin,
    solve_newton,
    verify_partition,
)
from .problem import InputError, ProblemSpec, Report, parse_spec, run, serialize_spec
from .svg import emit_svg

__version__ = "0.1.0"

__all__ = [
    "ConvexPolygon",
    "GeometryError",
    "HalfPlane",
    "Point",
    "RegionAreas",
    "Sector",
    "Triangle",
    "clip_halfplane",
    "foot_of_perpendicular",
    "min_area_f",
    "outward_normal",
    "polygon_area",
    "region_area",
    "region_areas",
    "region_polygon",
    "sector_at_vertex",
    "MassPartitionError",
    "SectorConfig",
    "Targets",
    "TranslationSolution",
    "sector_areas",
    "solve_translation",
    "validate_config",
    "Classification",
    "LabelSets",
    "PartitionError",
    "PartitionSolution",
    "SolverConfig",
    "SolverError",
    "SolverReport",
    "VerifyReport",
    "boundary_point_closed_form",
    "classify",
    "cut_line_offset",
    "equal_partition",
    "lemma_check",
    "solve_exterior",
    "solve_kkm",
    "solve_maximin",
    "solve_newton",
    "verify_partition",
    "InputError",
    "ProblemSpec",
    "Report",
    "parse_spec",
    "run",
    "serialize_spec",
    "emit_svg",
    "__version__",
]
