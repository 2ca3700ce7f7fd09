#pragma once

#include <optional>
#include <string>
#include <vector>

#include <trustgraph/graph.hpp>
#include <trustgraph/rank.hpp>

namespace trustgraph {

/**
 * Relation between a node's PageRank (importance) and TrustRank (trust) scores.
 *
 *  - A:      PR >> TR, central but poorly connected to trusted nodes
 *  - B:      PR << TR, less central but trustworthy
 *  - CLow:   PR ~ TR, both low
 *  - CHigh:  PR ~ TR, both high
 */
enum class Condition { A, B, CLow, CHigh };

std::string_view to_string(Condition condition);

enum class HighMassRule {
    AboveUniform, ///< high when max(pr, tr) >= 1 / |P|
    Cutoff,       ///< high when max(pr, tr) >= cutoff
};

struct ClassificationThresholds {
    double dominance_ratio = 0.5; ///< theta: A iff pr >= (1 + theta) * tr
    HighMassRule high_mass_rule = HighMassRule::AboveUniform;
    double cutoff = 0.0; ///< used by HighMassRule::Cutoff

    void validate() const;
};

struct NodeClassification {
    std::string node;
    Condition condition;
    double pr;
    double tr;
    std::string rationale;
};

/// One condition per node, in node order. Throws DomainMismatch on different node sets.
std::vector<NodeClassification> classify_nodes(const ScoreVector &pr, const ScoreVector &tr,
                                               const ClassificationThresholds &thresholds = {});

/// Classification rule for one node; @a node_count drives the above-uniform split.
Condition classify_pair(double pr, double tr, std::size_t node_count,
                        const ClassificationThresholds &thresholds);

std::string rationale_for(Condition condition);

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double sum = 0.0;
    double min = 0.0;
};

struct RequirementSummary {
    std::string requirement;
    std::vector<std::string> aspects;
    std::vector<std::string> components;
    std::optional<SummaryStats> aspect_stats;
    std::optional<SummaryStats> component_stats;
    std::vector<std::string> warnings;
};

/**
 * Mean, sum and min of @a scores over the requirement's aspects (one hop) and
 * their components (two hops). Hops follow the edge direction for top-down
 * graphs, run against it for bottom-up graphs, and take both directions for
 * free graphs. Throws InvalidArgument when @a requirement is not a Requirement node.
 */
RequirementSummary aggregate_requirement(const ScoreVector &scores, const TrustGraph &graph,
                                         std::string_view requirement);

enum class VariantKind { Baseline, AddSeed, RemoveSeed };

struct SeedVariant {
    VariantKind kind;
    std::string node; ///< added or removed seed; empty for the baseline
    std::string description;
    SeedSet seeds;
    ScoreVector scores;
    std::vector<double> delta; ///< scores - baseline, per node
    double max_delta = 0.0;
};

struct SeedSweep {
    std::vector<SeedVariant> rows; ///< baseline first, then additions, then removals
    std::vector<std::string> warnings;
};

/// TrustRank for the base seeds and for every single-seed addition and removal.
SeedSweep seed_sweep(const TrustGraph &graph, const SeedSet &base_seeds, const RankParams &params = {});

struct EdgeImpact {
    std::string source;
    std::string target;
    double pagerank_delta = 0.0;
    double trustrank_delta = 0.0;
    bool converged = true;
};

/// Max-norm score change caused by deleting each edge, largest TrustRank change first.
std::vector<EdgeImpact> edge_perturbation(const TrustGraph &graph, const SeedSet &seeds,
                                          const RankParams &params = {});

struct LabeledScores {
    std::string label;
    ScoreVector scores;
};

struct TrustRankRun {
    SeedSet seeds;
    ScoreVector scores;
    std::vector<NodeClassification> classifications;
};

struct RequirementAggregate {
    std::string vector_label;
    RequirementSummary summary;
};

/// Everything one assessment run produced.
struct AssessmentReport {
    std::string graph_title;
    std::string graph_digest; ///< FNV-1a 64 of the canonical graph text
    Orientation orientation = Orientation::TopDown;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    RankParams params;
    ClassificationThresholds thresholds;
    ScoreVector pagerank;
    std::vector<TrustRankRun> trustrank;
    std::vector<RequirementAggregate> aggregates;
    std::vector<std::string> warnings;
    std::optional<std::string> timestamp;
};

/// PageRank, TrustRank per seed set, classification against PageRank, and requirement aggregates.
AssessmentReport assess(const TrustGraph &graph, const std::vector<SeedSet> &seed_sets,
                        const RankParams &params = {}, const ClassificationThresholds &thresholds = {});

} // namespace trustgraph
