#include <trustgraph/io.hpp>

#include <json.hpp>

namespace trustgraph {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json score_entry(const std::string &label, const SeedSet *seeds, const ScoreVector &scores) {
    ordered_json entry;
    entry["label"] = label;
    entry["seeds"] = seeds ? ordered_json(seeds->members()) : ordered_json(nullptr);
    entry["iterations"] = scores.iterations;
    entry["converged"] = scores.converged;
    ordered_json values = ordered_json::object();
    for (NodeIndex i = 0; i < scores.size(); ++i)
        values[scores.domain()->token(i)] = scores[i];
    entry["values"] = std::move(values);
    return entry;
}

ordered_json stats(const std::optional<SummaryStats> &s) {
    if (!s)
        return nullptr;
    return {{"count", s->count}, {"mean", s->mean}, {"sum", s->sum}, {"min", s->min}};
}

} // namespace

std::string emit_report_json(const AssessmentReport &report) {
    ordered_json doc;
    doc["format"] = "trustgraph-report";
    doc["version"] = REPORT_FORMAT_VERSION;
    doc["timestamp"] = report.timestamp ? ordered_json(*report.timestamp) : ordered_json(nullptr);
    doc["graph"] = {{"title", report.graph_title},
                    {"digest", report.graph_digest},
                    {"orientation", std::string(to_string(report.orientation))},
                    {"nodes", report.node_count},
                    {"edges", report.edge_count}};
    doc["params"] = {{"alpha", report.params.alpha},
                     {"epsilon", report.params.epsilon},
                     {"max_iterations", report.params.max_iterations}};
    doc["thresholds"] = {
        {"dominance_ratio", report.thresholds.dominance_ratio},
        {"high_mass_rule",
         report.thresholds.high_mass_rule == HighMassRule::AboveUniform ? "above-uniform" : "cutoff"},
        {"cutoff", report.thresholds.high_mass_rule == HighMassRule::Cutoff
                       ? ordered_json(report.thresholds.cutoff)
                       : ordered_json(nullptr)}};

    ordered_json seed_sets = ordered_json::array();
    for (const TrustRankRun &run : report.trustrank)
        seed_sets.push_back(run.seeds.members());
    doc["seed_sets"] = std::move(seed_sets);

    ordered_json scores = ordered_json::array();
    scores.push_back(score_entry("PageRank", nullptr, report.pagerank));
    for (const TrustRankRun &run : report.trustrank)
        scores.push_back(score_entry("TrustRank" + run.seeds.label(), &run.seeds, run.scores));
    doc["scores"] = std::move(scores);

    ordered_json classifications = ordered_json::array();
    for (const TrustRankRun &run : report.trustrank) {
        ordered_json block;
        block["label"] = "TrustRank" + run.seeds.label();
        block["seeds"] = run.seeds.members();
        ordered_json entries = ordered_json::array();
        for (const NodeClassification &c : run.classifications)
            entries.push_back({{"node", c.node},
                               {"condition", std::string(to_string(c.condition))},
                               {"pr", c.pr},
                               {"tr", c.tr},
                               {"rationale", c.rationale}});
        block["entries"] = std::move(entries);
        classifications.push_back(std::move(block));
    }
    doc["classifications"] = std::move(classifications);

    ordered_json aggregates = ordered_json::array();
    for (const RequirementAggregate &agg : report.aggregates) {
        aggregates.push_back({{"requirement", agg.summary.requirement},
                              {"vector", agg.vector_label},
                              {"aspects", agg.summary.aspects},
                              {"components", agg.summary.components},
                              {"aspect_stats", stats(agg.summary.aspect_stats)},
                              {"component_stats", stats(agg.summary.component_stats)},
                              {"warnings", agg.summary.warnings}});
    }
    doc["aggregates"] = std::move(aggregates);
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
}

} // namespace trustgraph
