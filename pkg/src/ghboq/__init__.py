"""Parametric cost estimation for Ghanaian residential construction.

Builds an itemised bill of quantities from a compact building
description, prices it against a regional pricebook snapshot, and
quantifies how far informal flat per-square-metre quotes fall short of
the full scope of work.
"""

from .building import (
    BuildingSpec,
    FeatureKind,
    FeatureSelection,
    Grade,
    Style,
    parse_spec,
    spec_to_dict,
)
from .errors import (
    EngineError,
    InvalidBand,
    InvalidSpec,
    MissingCalibration,
    MissingParameter,
    NonPositivePrice,
    OpeningsExceedGross,
    ParseError,
    UnknownCase,
    UnknownFormat,
    UnknownMaterial,
    UnknownRegion,
    UnresolvableMaterial,
    ValidationError,
)
from .estimator import (
    BoQLine,
    Estimate,
    EstimateFlags,
    categorize,
    contingency_on,
    estimate,
    reprice,
)
from .export import ENGINE_VERSION, estimate_to_dict, export_boq, gap_to_dict
from .fixtures import CASE_IDS, CaseResult, get_fixture, run_case
from .gap import GapReport, gap, omission_attribution
from .geometry import (
    FloorPlanLayout,
    WallModel,
    check_room_minimums,
    parse_layout,
    rectangular_approximation,
    wall_model_from_formula,
    wall_model_from_layout,
)
from .money import Money, line_cost
from .pricebook import (
    MaterialKind,
    PriceBook,
    Region,
    apply_override,
    parse_price,
    default_pricebook,
    dump_pricebook,
    labour_rate,
    load_pricebook,
    loads_pricebook,
    resolve_price,
    save_pricebook,
)
from .services import electrical_cost, electrical_takeoff, plumbing_cost, plumbing_takeoff
from .structural import structural_takeoff

__version__ = ENGINE_VERSION

__all__ = [
    "BuildingSpec",
    "FeatureKind",
    "FeatureSelection",
    "Grade",
    "Style",
    "parse_spec",
    "spec_to_dict",
    "EngineError",
    "InvalidBand",
    "InvalidSpec",
    "MissingCalibration",
    "MissingParameter",
    "NonPositivePrice",
    "OpeningsExceedGross",
    "ParseError",
    "UnknownCase",
    "UnknownFormat",
    "UnknownMaterial",
    "UnknownRegion",
    "UnresolvableMaterial",
    "ValidationError",
    "BoQLine",
    "Estimate",
    "EstimateFlags",
    "categorize",
    "contingency_on",
    "estimate",
    "reprice",
    "ENGINE_VERSION",
    "estimate_to_dict",
    "export_boq",
    "gap_to_dict",
    "CASE_IDS",
    "CaseResult",
    "get_fixture",
    "run_case",
    "GapReport",
    "gap",
    "omission_attribution",
    "FloorPlanLayout",
    "WallModel",
    "check_room_minimums",
    "parse_layout",
    "rectangular_approximation",
    "wall_model_from_formula",
    "wall_model_from_layout",
    "Money",
    "line_cost",
    "MaterialKind",
    "PriceBook",
    "Region",
    "apply_override",
    "parse_price",
    "default_pricebook",
    "dump_pricebook",
    "labour_rate",
    "load_pricebook",
    "loads_pricebook",
    "resolve_price",
    "save_pricebook",
    "electrical_cost",
    "electrical_takeoff",
    "plumbing_cost",
    "plumbing_takeoff",
    "structural_takeoff",
    "__version__",
]
