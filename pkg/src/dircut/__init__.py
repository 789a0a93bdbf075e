"""Approximate and exact minimum rooted/global edge and vertex cuts in
weighted directed graphs, with exact rational arithmetic throughout."""

from .graph import (
    INFINITE,
    ContractionMap,
    CutCertificate,
    DiGraph,
    NoCutExistsError,
    contract_into_root,
    cut_certificate,
    in_volume,
    merge_parallel,
    reachable,
    reverse,
)
from .maxflow import MaxFlowResult, max_flow, min_cut_sink_side, verify_flow
from .steiner import (
    Below,
    Certified,
    SteinerInstance,
    build_steiner_network,
    partition_terminals,
    shrink_wrap,
)
from .edgecut import (
    ConditionedGraph,
    EdgeCutResult,
    ProbeConfig,
    approx_global_edge_cut,
    approx_rooted_edge_cut,
    exact_global_edge_cut_oracle,
    exact_rooted_edge_cut_oracle,
    exact_small_edge_cut,
    precondition_rooted,
    probe_rooted_edge,
    sample_terminals,
)
from .vertexcut import (
    SplitMaps,
    VertexCapGraph,
    VertexCutCertificate,
    VertexCutResult,
    approx_global_vertex_cut,
    approx_rooted_vertex_cut,
    exact_small_vertex_cut,
    exact_vertex_cut_oracle,
    prune_for_root,
    sample_roots,
    split_transform,
)
from .fileio import GraphFileError, parse_graph, parse_text, serialize_graph
from .generators import generate

__all__ = [
    "INFINITE",
    "ContractionMap",
    "CutCertificate",
    "DiGraph",
    "NoCutExistsError",
    "contract_into_root",
    "cut_certificate",
    "in_volume",
    "merge_parallel",
    "reachable",
    "reverse",
    "MaxFlowResult",
    "max_flow",
    "min_cut_sink_side",
    "verify_flow",
    "Below",
    "Certified",
    "SteinerInstance",
    "build_steiner_network",
    "partition_terminals",
    "shrink_wrap",
    "ConditionedGraph",
    "EdgeCutResult",
    "ProbeConfig",
    "approx_global_edge_cut",
    "approx_rooted_edge_cut",
    "exact_global_edge_cut_oracle",
    "exact_rooted_edge_cut_oracle",
    "exact_small_edge_cut",
    "precondition_rooted",
    "probe_rooted_edge",
    "sample_terminals",
    "SplitMaps",
    "VertexCapGraph",
    "VertexCutCertificate",
    "VertexCutResult",
    "approx_global_vertex_cut",
    "approx_rooted_vertex_cut",
    "exact_small_vertex_cut",
    "exact_vertex_cut_oracle",
    "prune_for_root",
    "sample_roots",
    "split_transform",
    "GraphFileError",
    "parse_graph",
    "parse_text",
    "serialize_graph",
    "generate",
]
