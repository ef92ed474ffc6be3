"""Exact combinatorics for tight contact structures on solid tori, Legendrian
cable framings, and ribbon-disk simplification."""

from .errors import CabletorusError
from .farey import INF, Slope, SlopeError, TorusBoundary, farthest_neighbor, is_edge, mediant, parse_slope, reduce, shear
from .paths import (
    BlockDecomposition,
    ContactClass,
    DecoratedPath,
    PathError,
    ShortenResult,
    Verdict,
    canonical_form,
    cf_blocks,
    classify,
    count_classes,
    enumerate_tight_solid_torus,
    enumerate_tight_T2xI,
    half_maximal,
    is_minimal,
    is_tight_strict,
    minimal_path,
    shorten,
    shortening_audit,
    shuffle_equivalent,
    universally_tight_thickening,
)
from .cables import (
    CableError,
    CableRecord,
    KnotProfile,
    LLCReport,
    WidthEstimate,
    YasuiParams,
    contacto_image,
    is_large,
    llc_report,
    stabilize,
    tb_from_tw,
    tw_from_tb,
    twist_from_intersection,
    uniform_thickness_test,
    yasui_family,
)
from .ribbon import (
    RibbonError,
    RibbonPresentation,
    SimplificationTrace,
    TreeCertificate,
    dual_graph_certificate,
    handlebody_summary,
    outermost_chords,
    simplify,
    validate,
)

__version__ = "0.1.0"
