#include <trustgraph/assessment.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <trustgraph/io.hpp>

#include "parallel.hpp"

namespace trustgraph {

std::string_view to_string(Condition condition) {
    switch (condition) {
    case Condition::A:
        return "A";
    case Condition::B:
        return "B";
    case Condition::CLow:
        return "C_low";
    case Condition::CHigh:
        return "C_high";
    }
    return "C_low";
}

void ClassificationThresholds::validate() const {
    if (!(dominance_ratio > 0.0) || !std::isfinite(dominance_ratio))
        throw InvalidArgument("dominance ratio theta must be positive");
    if (high_mass_rule == HighMassRule::Cutoff && !(cutoff >= 0.0 && cutoff <= 1.0))
        throw InvalidArgument("high-mass cutoff must lie in [0, 1]");
}

std::string rationale_for(Condition condition) {
    switch (condition) {
    case Condition::A:
        return "important but weakly linked to trusted nodes; monitor it to confirm it behaves as "
               "relied upon";
    case Condition::B:
        return "trusted beyond its structural weight; a reference point for trust that needs no "
               "urgent monitoring";
    case Condition::CLow:
        return "low importance and weak trust; raise its trustworthiness or reconsider whether "
               "the system needs it";
    case Condition::CHigh:
        return "important and trusted; keep supervising it so its trust level holds";
    }
    return {};
}

Condition classify_pair(double pr, double tr, std::size_t node_count,
                        const ClassificationThresholds &thresholds) {
    const double factor = 1.0 + thresholds.dominance_ratio;
    if (pr > 0.0 && pr >= factor * tr)
        return Condition::A;
    if (tr > 0.0 && tr >= factor * pr)
        return Condition::B;
    const double mass = std::max(pr, tr);
    const double bar = thresholds.high_mass_rule == HighMassRule::AboveUniform
                           ? 1.0 / static_cast<double>(node_count)
                           : thresholds.cutoff;
    return mass >= bar ? Condition::CHigh : Condition::CLow;
}

std::vector<NodeClassification> classify_nodes(const ScoreVector &pr, const ScoreVector &tr,
                                               const ClassificationThresholds &thresholds) {
    thresholds.validate();
    if (!same_domain(pr.domain(), tr.domain()))
        throw DomainMismatch("PageRank and TrustRank vectors cover different node sets");
    std::vector<NodeClassification> out;
    out.reserve(pr.size());
    for (NodeIndex i = 0; i < pr.size(); ++i) {
        Condition c = classify_pair(pr[i], tr[i], pr.size(), thresholds);
        out.push_back({pr.domain()->token(i), c, pr[i], tr[i], rationale_for(c)});
    }
    return out;
}

namespace {

std::vector<NodeIndex> hop(const TrustGraph &graph, NodeIndex from, Layer wanted) {
    std::set<NodeIndex> found;
    auto take = [&](std::span<const NodeIndex> nodes) {
        for (NodeIndex v : nodes)
            if (graph.layer(v) == wanted)
                found.insert(v);
    };
    switch (graph.orientation()) {
    case Orientation::TopDown:
        take(graph.out_neighbors(from));
        break;
    case Orientation::BottomUp:
        take(graph.in_neighbors(from));
        break;
    case Orientation::Free:
        take(graph.out_neighbors(from));
        take(graph.in_neighbors(from));
        break;
    }
    return {found.begin(), found.end()};
}

std::optional<SummaryStats> summarize(const ScoreVector &scores, const std::vector<NodeIndex> &nodes) {
    if (nodes.empty())
        return std::nullopt;
    SummaryStats s;
    s.count = nodes.size();
    s.min = std::numeric_limits<double>::infinity();
    for (NodeIndex i : nodes) {
        s.sum += scores[i];
        s.min = std::min(s.min, scores[i]);
    }
    s.mean = s.sum / static_cast<double>(s.count);
    return s;
}

} // namespace

RequirementSummary aggregate_requirement(const ScoreVector &scores, const TrustGraph &graph,
                                         std::string_view requirement) {
    if (!same_domain(scores.domain(), graph.domain()))
        throw DomainMismatch("scores are not defined over this graph's nodes");
    NodeIndex r = graph.index_of(requirement);
    if (graph.layer(r) != Layer::Requirement)
        throw InvalidArgument("node " + std::string(requirement) + " is not a requirement");

    RequirementSummary summary;
    summary.requirement = std::string(requirement);
    std::vector<NodeIndex> aspects = hop(graph, r, Layer::Aspect);
    std::set<NodeIndex> component_set;
    for (NodeIndex a : aspects)
        for (NodeIndex m : hop(graph, a, Layer::Component))
            component_set.insert(m);
    std::vector<NodeIndex> components(component_set.begin(), component_set.end());

    for (NodeIndex a : aspects)
        summary.aspects.push_back(graph.token(a));
    for (NodeIndex m : components)
        summary.components.push_back(graph.token(m));
    summary.aspect_stats = summarize(scores, aspects);
    summary.component_stats = summarize(scores, components);
    if (aspects.empty())
        summary.warnings.push_back("requirement " + summary.requirement + " has no linked aspects");
    else if (components.empty())
        summary.warnings.push_back("requirement " + summary.requirement
                                   + " has no components behind its aspects");
    return summary;
}

namespace {

SeedVariant make_variant(VariantKind kind, std::string node, std::string description, SeedSet seeds,
                         ScoreVector scores, const ScoreVector &baseline) {
    SeedVariant v{kind, std::move(node), std::move(description), std::move(seeds), std::move(scores),
                  {}, 0.0};
    v.delta.resize(v.scores.size());
    for (NodeIndex i = 0; i < v.scores.size(); ++i) {
        v.delta[i] = v.scores[i] - baseline[i];
        v.max_delta = std::max(v.max_delta, std::abs(v.delta[i]));
    }
    return v;
}

} // namespace

SeedSweep seed_sweep(const TrustGraph &graph, const SeedSet &base_seeds, const RankParams &params) {
    params.validate();
    ScoreVector baseline = trustrank(graph, base_seeds, params);

    struct Plan {
        VariantKind kind;
        std::string node;
        SeedSet seeds;
    };
    std::vector<Plan> plans;
    SeedSweep sweep;
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        const std::string &token = graph.token(i);
        if (!base_seeds.contains(token)) {
            std::vector<std::string> members = base_seeds.members();
            members.push_back(token);
            plans.push_back({VariantKind::AddSeed, token, SeedSet(std::move(members))});
        }
    }
    for (const std::string &token : base_seeds.members()) {
        if (base_seeds.size() == 1) {
            sweep.warnings.push_back("skipped removing " + token + ": the seed set would be empty");
            continue;
        }
        std::vector<std::string> members;
        for (const std::string &m : base_seeds.members())
            if (m != token)
                members.push_back(m);
        plans.push_back({VariantKind::RemoveSeed, token, SeedSet(std::move(members))});
    }

    auto runs = detail::parallel_map<ScoreVector>(
        plans.size(), [&](std::size_t k) { return trustrank(graph, plans[k].seeds, params); });

    sweep.rows.reserve(plans.size() + 1);
    sweep.rows.push_back(make_variant(VariantKind::Baseline, {}, "baseline " + base_seeds.label(),
                                      base_seeds, baseline, baseline));
    for (std::size_t k = 0; k < plans.size(); ++k) {
        std::string description =
            (plans[k].kind == VariantKind::AddSeed ? "add " : "remove ") + plans[k].node;
        sweep.rows.push_back(make_variant(plans[k].kind, plans[k].node, std::move(description),
                                          std::move(plans[k].seeds), std::move(runs[k]), baseline));
    }
    for (const SeedVariant &row : sweep.rows)
        for (const std::string &w : row.scores.warnings)
            sweep.warnings.push_back(row.description + ": " + w);
    return sweep;
}

std::vector<EdgeImpact> edge_perturbation(const TrustGraph &graph, const SeedSet &seeds,
                                          const RankParams &params) {
    params.validate();
    ScoreVector base_pr = pagerank(graph, params);
    ScoreVector base_tr = trustrank(graph, seeds, params);

    auto impacts = detail::parallel_map<EdgeImpact>(graph.edge_count(), [&](std::size_t k) {
        const Edge edge = graph.edges()[k];
        TrustGraph cut = without_edge(graph, edge);
        ScoreVector pr = pagerank(cut, params);
        ScoreVector tr = trustrank(cut, seeds, params);
        return EdgeImpact{graph.token(edge.source), graph.token(edge.target),
                          max_norm_distance(base_pr, pr), max_norm_distance(base_tr, tr),
                          pr.converged && tr.converged};
    });
    std::stable_sort(impacts.begin(), impacts.end(), [](const EdgeImpact &a, const EdgeImpact &b) {
        return a.trustrank_delta > b.trustrank_delta;
    });
    return impacts;
}

AssessmentReport assess(const TrustGraph &graph, const std::vector<SeedSet> &seed_sets,
                        const RankParams &params, const ClassificationThresholds &thresholds) {
    params.validate();
    thresholds.validate();
    AssessmentReport report;
    report.graph_title = graph.title();
    report.graph_digest = graph_digest(graph);
    report.orientation = graph.orientation();
    report.node_count = graph.node_count();
    report.edge_count = graph.edge_count();
    report.params = params;
    report.thresholds = thresholds;
    report.pagerank = pagerank(graph, params);
    for (const std::string &w : report.pagerank.warnings)
        report.warnings.push_back("PageRank: " + w);

    for (const SeedSet &seeds : seed_sets) {
        TrustRankRun run{seeds, trustrank(graph, seeds, params), {}};
        run.classifications = classify_nodes(report.pagerank, run.scores, thresholds);
        for (const std::string &w : run.scores.warnings)
            report.warnings.push_back("TrustRank " + seeds.label() + ": " + w);
        report.trustrank.push_back(std::move(run));
    }

    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        if (graph.layer(i) != Layer::Requirement)
            continue;
        auto add = [&](const std::string &label, const ScoreVector &scores) {
            RequirementSummary s = aggregate_requirement(scores, graph, graph.token(i));
            for (const std::string &w : s.warnings)
                report.warnings.push_back(label + ": " + w);
            report.aggregates.push_back({label, std::move(s)});
        };
        add("PageRank", report.pagerank);
        for (const TrustRankRun &run : report.trustrank)
            add("TrustRank" + run.seeds.label(), run.scores);
    }
    return report;
}

} // namespace trustgraph
