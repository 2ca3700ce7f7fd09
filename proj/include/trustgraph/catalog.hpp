#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <trustgraph/graph.hpp>
#include <trustgraph/rank.hpp>

namespace trustgraph {

/// One of the seven EU trustworthy-AI requirements and its aspects.
struct AltaiRequirement {
    std::string key;               ///< stable token, e.g. "transparency"
    std::string title;             ///< e.g. "Transparency"
    std::string description;
    std::string aligned_principle; ///< matching principle from the literature review
    std::vector<std::string> aspects;
};

/// The seven requirements in their canonical order.
const std::vector<AltaiRequirement> &altai_catalog();

/// Lookup by key or exact title; throws InvalidArgument listing the valid keys.
const AltaiRequirement &find_requirement(std::string_view key_or_title);

/// One published score column of a scenario.
struct PublishedColumn {
    std::string label;            ///< header as printed, e.g. "TrustRank{A3 A4}"
    std::optional<SeedSet> seeds; ///< empty for the PageRank column
    ScoreVector values;           ///< 4-decimal values as printed, in graph node order
};

/// A published cell that contradicts the ranking algorithm and is excluded from checks.
struct KnownAnomaly {
    std::string column;
    std::string node;
    std::string reason;
};

struct ScenarioFixture {
    std::string id;
    TrustGraph graph;
    std::vector<PublishedColumn> columns;
    double calibrated_alpha = RankParams::DEFAULT_ALPHA;
    std::string notes;
    std::vector<KnownAnomaly> anomalies;
    std::string graph_text; ///< fixture file contents
    std::string scores_csv; ///< published column file contents
};

/// "robustness-topdown", "transparency-bottomup".
std::vector<std::string> scenario_ids();

/// Bundled scenario by id; throws InvalidArgument listing the valid ids.
const ScenarioFixture &scenario_graph(std::string_view id);

/**
 * Parses a published column file: header "node,<column>,...", one row per
 * node. Column headers are "PageRank" or "TrustRank{S1 S2 ...}", with
 * "TrustRank{*}" meaning every node is a seed. The row set must equal the
 * graph's node set. Throws ParseError.
 */
std::vector<PublishedColumn> parse_published_columns(std::string_view csv, const TrustGraph &graph);

/**
 * Consistency of published columns with a graph. For every TrustRank column
 * the exact-zero rows must be the nodes unreachable from its seeds, and every
 * column must sum to 1 within @a sum_tolerance. Cells listed in @a anomalies
 * are skipped, and a column containing one is exempt from the sum check.
 * Returns one message per problem; empty means consistent.
 */
std::vector<std::string> check_transcription(const TrustGraph &graph,
                                             const std::vector<PublishedColumn> &columns,
                                             const std::vector<KnownAnomaly> &anomalies = {},
                                             double sum_tolerance = 0.005);

inline std::vector<std::string> check_transcription(const ScenarioFixture &fixture) {
    return check_transcription(fixture.graph, fixture.columns, fixture.anomalies);
}

} // namespace trustgraph
