#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <trustgraph/assessment.hpp>
#include <trustgraph/graph.hpp>
#include <trustgraph/rank.hpp>

namespace trustgraph {

/// Version written to and accepted from graph documents.
inline constexpr int GRAPH_FORMAT_VERSION = 1;
/// Version written into report JSON.
inline constexpr int REPORT_FORMAT_VERSION = 1;

/**
 * Syntax-level parse of a graph document; throws ParseError.
 *
 *     # comment
 *     version: 1
 *     orientation: top-down | bottom-up | free
 *     title: "optional title"
 *     requirement: optional-key
 *     [nodes]
 *     TOKEN LAYER "optional label"
 *     [edges]
 *     SOURCE -> TARGET
 *
 * Duplicate node tokens and unknown layers are syntax errors. Graph invariants
 * (endpoints, loops, orientation) are left to validate_graph().
 */
GraphDraft parse_graph_document(std::string_view text);

/// parse_graph_document() followed by TrustGraph::build(); throws ParseError or ValidationError.
TrustGraph parse_graph_text(std::string_view text);

/// Canonical document: sorted nodes and edges, fixed spacing. parse_graph_text() inverts it.
std::string emit_graph_text(const TrustGraph &graph);

/// 16 hex digits of FNV-1a 64 over emit_graph_text(graph).
std::string graph_digest(const TrustGraph &graph);

/// "node,<label>,..." header and one row per node, 4-decimal scores.
/// Throws InvalidArgument when empty, DomainMismatch on mixed node sets.
std::string emit_scores_csv(std::span<const LabeledScores> vectors);

/// Scores as JSON with convergence metadata, one entry per vector.
std::string emit_scores_json(std::span<const LabeledScores> vectors);

/// Graphviz digraph with one rank per layer; labels carry scores when given.
std::string emit_dot(const TrustGraph &graph, const ScoreVector *scores = nullptr);

/// Grouped bar chart, one group per node and one bar per vector (1 to 4 vectors).
std::string emit_svg_bars(std::span<const LabeledScores> vectors);

/// Full assessment report; schema in docs/report-schema.md.
std::string emit_report_json(const AssessmentReport &report);

std::string emit_sweep_csv(const TrustGraph &graph, const SeedSweep &sweep,
                           const std::vector<EdgeImpact> &edges);
std::string emit_sweep_json(const TrustGraph &graph, const SeedSweep &sweep,
                            const std::vector<EdgeImpact> &edges, const RankParams &params);

} // namespace trustgraph
