"""Trust scoring of layered requirement graphs with PageRank and TrustRank."""

from ._trustgraph import (  # noqa: F401
    DomainMismatch,
    Error,
    InvalidArgument,
    ParseError,
    ScoreVector,
    TrustGraph,
    UnknownNode,
    ValidationError,
    altai_catalog,
    assess_json,
    classify_nodes,
    emit_graph_text,
    graph_digest,
    pagerank,
    parse_graph_text,
    published_columns,
    run_cli,
    scenario_graph,
    scenario_ids,
    scores_csv,
    trustrank,
    validate_graph_text,
)

__version__ = "0.1.0"
