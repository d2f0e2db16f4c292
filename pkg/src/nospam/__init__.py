"""Node-specific triad pattern mining for directed networks.

For every node of a directed graph, the 30 connected three-node
patterns the node can participate in are counted and scored against a
degree-signature-preserving randomized ensemble.
"""
from .catalog import (
    CATALOG,
    TriadCatalog,
    build_catalog,
    ordering_codes,
    pack_code,
    swap_yz,
    unpack_code,
    write_catalog_tsv,
)
from .counting import (
    count_patterns,
    count_patterns_oracle,
    count_patterns_with_census,
    global_census,
)
from .graph import (
    DyadState,
    Graph,
    IngestReport,
    ParseError,
    load_edge_list,
    parse_edge_list,
)
from .mining import (
    AnalysisResult,
    EnsembleResult,
    Flag,
    ZScoreTable,
    analyze,
    global_zscores,
    mine,
)
from .randomize import RngStream, SwitchStats, randomize, verify_signature

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "AnalysisResult",
    "DyadState",
    "EnsembleResult",
    "Flag",
    "Graph",
    "IngestReport",
    "ParseError",
    "RngStream",
    "SwitchStats",
    "TriadCatalog",
    "ZScoreTable",
    "analyze",
    "build_catalog",
    "count_patterns",
    "count_patterns_oracle",
    "count_patterns_with_census",
    "global_census",
    "global_zscores",
    "load_edge_list",
    "mine",
    "ordering_codes",
    "pack_code",
    "parse_edge_list",
    "randomize",
    "swap_yz",
    "unpack_code",
    "verify_signature",
    "write_catalog_tsv",
]
