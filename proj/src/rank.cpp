#include <trustgraph/rank.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invariant_sum.hpp"

namespace trustgraph {

void RankParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("alpha must lie strictly between 0 and 1");
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    if (max_iterations == 0)
        throw InvalidArgument("max_iterations must be positive");
}

ScoreVector::ScoreVector(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_ || domain_->size() != values_.size())
        throw DomainMismatch("score vector length differs from its node domain");
}

double ScoreVector::at(std::string_view token) const {
    if (!domain_)
        throw UnknownNode(std::string(token));
    return values_[domain_->index_of(token)];
}

SeedSet::SeedSet(std::vector<std::string> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(),
              [](const std::string &a, const std::string &b) { return token_less(a, b); });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SeedSet SeedSet::all_nodes(const TrustGraph &graph) { return SeedSet(graph.domain()->tokens()); }

bool SeedSet::contains(std::string_view token) const {
    return std::find(members_.begin(), members_.end(), token) != members_.end();
}

std::string SeedSet::label() const {
    std::string text = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i)
            text += ',';
        text += members_[i];
    }
    return text + "}";
}

std::vector<NodeIndex> SeedSet::resolve(const TrustGraph &graph) const {
    std::vector<NodeIndex> idx;
    idx.reserve(members_.size());
    for (const std::string &m : members_)
        idx.push_back(graph.index_of(m));
    return idx;
}

std::vector<double> pagerank_teleport(const TrustGraph &graph, double alpha) {
    return std::vector<double>(graph.node_count(),
                               (1.0 - alpha) / static_cast<double>(graph.node_count()));
}

std::vector<double> trustrank_teleport(const TrustGraph &graph, const SeedSet &seeds, double alpha) {
    std::vector<double> teleport(graph.node_count(), 0.0);
    for (NodeIndex s : seeds.resolve(graph))
        teleport[s] = 1.0 - alpha;
    return teleport;
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("alpha must lie strictly between 0 and 1");
}

void check_teleport(const TrustGraph &graph, std::span<const double> teleport) {
    if (teleport.size() != graph.node_count())
        throw DomainMismatch("teleport vector length differs from the node count");
    bool positive = false;
    for (double t : teleport) {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw InvalidArgument("teleport values must be finite and non-negative");
        positive = positive || t > 0.0;
    }
    if (!positive)
        throw InvalidArgument("teleport vector must not be all zero");
}

// Reusable buffers for repeated sweeps over one graph.
class Sweeper {
public:
    Sweeper(const TrustGraph &graph, std::span<const double> teleport, double alpha)
        : graph_(graph), teleport_(teleport), alpha_(alpha), share_(graph.node_count()),
          next_(graph.node_count()) {
        degree_.resize(graph.node_count());
        for (NodeIndex q = 0; q < graph.node_count(); ++q) {
            std::size_t d = graph.out_degree(q);
            degree_[q] = d ? static_cast<double>(d) : 0.0;
        }
    }

    // Writes the normalized successor of `current` into `out`.
    void sweep(const std::vector<double> &current, std::vector<double> &out) {
        const std::size_t n = graph_.node_count();
        for (NodeIndex q = 0; q < n; ++q)
            share_[q] = degree_[q] > 0.0 ? current[q] / degree_[q] : 0.0;

        for (NodeIndex p = 0; p < n; ++p) {
            auto sources = graph_.in_neighbors(p);
            double inflow = detail::order_invariant_sum(
                sources.size(), [&](std::size_t k) { return share_[sources[k]]; });
            next_[p] = teleport_[p] + alpha_ * inflow;
        }
        double total = detail::order_invariant_sum(n, [&](std::size_t k) { return next_[k]; });
        if (!(total > 0.0) || !std::isfinite(total))
            throw InternalError("score vector vanished during normalization");
        out.resize(n);
        for (NodeIndex p = 0; p < n; ++p)
            out[p] = next_[p] / total;
    }

private:
    const TrustGraph &graph_;
    std::span<const double> teleport_;
    double alpha_;
    std::vector<double> degree_;
    std::vector<double> share_;
    std::vector<double> next_;
};

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double delta = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        delta = std::max(delta, std::abs(a[i] - b[i]));
    return delta;
}

ScoreVector power_iterate(const TrustGraph &graph, std::vector<double> start,
                          std::span<const double> teleport, const RankParams &params,
                          const IterationObserver &observer) {
    Sweeper sweeper(graph, teleport, params.alpha);
    std::vector<double> current = std::move(start);
    std::vector<double> next;
    std::size_t iteration = 0;
    bool converged = false;
    double delta = 0.0;
    while (iteration < params.max_iterations) {
        sweeper.sweep(current, next);
        ++iteration;
        delta = max_abs_diff(current, next);
        current.swap(next);
        if (observer)
            observer(iteration, delta);
        if (delta < params.epsilon) {
            converged = true;
            break;
        }
    }
    ScoreVector result(graph.domain(), std::move(current));
    result.iterations = iteration;
    result.converged = converged;
    if (!converged) {
        std::ostringstream msg;
        msg << "did not converge within " << params.max_iterations
            << " iterations (last max-norm change " << delta << ", epsilon " << params.epsilon
            << ")";
        result.warnings.push_back(msg.str());
    }
    return result;
}

} // namespace

ScoreVector iterate_once(const TrustGraph &graph, const ScoreVector &current,
                         std::span<const double> teleport, double alpha) {
    check_alpha(alpha);
    check_teleport(graph, teleport);
    if (!same_domain(current.domain(), graph.domain()))
        throw DomainMismatch("current scores are not defined over this graph's nodes");
    Sweeper sweeper(graph, teleport, alpha);
    std::vector<double> next;
    sweeper.sweep(current.values(), next);
    ScoreVector result(graph.domain(), std::move(next));
    result.iterations = 1;
    result.converged = false;
    return result;
}

ScoreVector pagerank(const TrustGraph &graph, const RankParams &params,
                     const IterationObserver &observer) {
    params.validate();
    const std::size_t n = graph.node_count();
    std::vector<double> teleport = pagerank_teleport(graph, params.alpha);
    std::vector<double> start(n, 1.0 / static_cast<double>(n));
    return power_iterate(graph, std::move(start), teleport, params, observer);
}

ScoreVector trustrank(const TrustGraph &graph, const SeedSet &seeds, const RankParams &params,
                      const IterationObserver &observer) {
    params.validate();
    if (seeds.empty())
        throw InvalidArgument("TrustRank requires at least one trusted seed");
    std::vector<NodeIndex> members = seeds.resolve(graph);
    std::vector<double> teleport(graph.node_count(), 0.0);
    std::vector<double> start(graph.node_count(), 0.0);
    for (NodeIndex s : members) {
        teleport[s] = 1.0 - params.alpha;
        start[s] = 1.0 / static_cast<double>(members.size());
    }
    return power_iterate(graph, std::move(start), teleport, params, observer);
}

double max_norm_distance(const ScoreVector &a, const ScoreVector &b) {
    if (!same_domain(a.domain(), b.domain()))
        throw DomainMismatch("score vectors are defined over different node sets");
    return max_abs_diff(a.values(), b.values());
}

bool check_convergence(const ScoreVector &previous, const ScoreVector &next, double epsilon) {
    return max_norm_distance(previous, next) < epsilon;
}

} // namespace trustgraph
