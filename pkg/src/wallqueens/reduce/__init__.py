"""The reduction from planar 3-SAT to queens-with-walls boards."""
from .assemble import (
    AssemblyError,
    DecodeError,
    ReductionOutput,
    Sidecar,
    SidecarError,
    assemble,
    decode,
    load_sidecar,
    output_from_sidecar,
    reduce,
    regions_for,
    save_sidecar,
)
from .embed import NonPlanar, PlanarEmbedding, embed_graph, planar_embed, split_high_degree
from .formula import Formula, FormulaError, IncidenceGraph, brute_force_sat, incidence_graph, parse_dimacs, to_dimacs
from .ortho import LayoutError, OrthoLayout, double_coords, ortho_layout, validate_layout
from .plan import PlanError, Slot, TilePlan, check_plan, plan_tiles, tariff, tariff_from_counts
