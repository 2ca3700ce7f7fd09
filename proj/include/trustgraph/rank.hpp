#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <trustgraph/graph.hpp>

namespace trustgraph {

/// Damping (PageRank) or decay (TrustRank) factor, stopping threshold and iteration cap.
struct RankParams {
    static constexpr double DEFAULT_ALPHA = 0.85;
    static constexpr double DEFAULT_EPSILON = 1e-8;
    static constexpr std::size_t DEFAULT_MAX_ITERATIONS = 1000;

    double alpha = DEFAULT_ALPHA;
    double epsilon = DEFAULT_EPSILON;
    std::size_t max_iterations = DEFAULT_MAX_ITERATIONS;

    /// Throws InvalidArgument unless 0 < alpha < 1, epsilon > 0 and max_iterations > 0.
    void validate() const;
};

/**
 * Scores over the node set of one graph.
 *
 * Vectors produced by the ranking functions are probability distributions:
 * entries in [0, 1] summing to 1. iterations and converged describe the run
 * that produced the vector; warnings collects non-fatal conditions such as
 * hitting the iteration cap.
 */
class ScoreVector {
public:
    ScoreVector() = default;
    ScoreVector(DomainPtr domain, std::vector<double> values);

    const DomainPtr &domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double> &values() const noexcept { return values_; }
    double operator[](NodeIndex i) const { return values_[i]; }
    double at(std::string_view token) const;

    std::size_t iterations = 0;
    bool converged = true;
    std::vector<std::string> warnings;

private:
    DomainPtr domain_;
    std::vector<double> values_;
};

/// Trusted seeds, kept unique and in natural token order.
class SeedSet {
public:
    SeedSet() = default;
    SeedSet(std::vector<std::string> members);
    SeedSet(std::initializer_list<std::string> members)
        : SeedSet(std::vector<std::string>(members)) {}

    static SeedSet all_nodes(const TrustGraph &graph);

    const std::vector<std::string> &members() const noexcept { return members_; }
    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::string_view token) const;

    /// "{A3,A4}" style label.
    std::string label() const;

    /// Member indices in @a graph; throws UnknownNode for a member not in the graph.
    std::vector<NodeIndex> resolve(const TrustGraph &graph) const;

    friend bool operator==(const SeedSet &, const SeedSet &) = default;

private:
    std::vector<std::string> members_;
};

/// Called after every sweep with the 1-based iteration number and the max-norm change.
using IterationObserver = std::function<void(std::size_t iteration, double delta)>;

/// (1 - alpha) / |P| for every node.
std::vector<double> pagerank_teleport(const TrustGraph &graph, double alpha);

/// (1 - alpha) on seeds, 0 elsewhere.
std::vector<double> trustrank_teleport(const TrustGraph &graph, const SeedSet &seeds, double alpha);

/**
 * One synchronous sweep of the shared update
 *
 *   next(p) = teleport(p) + alpha * sum_{q in In(p)} current(q) / outdeg(q)
 *
 * followed by L1 normalization. Every new value is computed from @a current;
 * no partially updated value is ever read. All sums are order-invariant, so
 * relabeling the nodes permutes the result bit for bit.
 */
ScoreVector iterate_once(const TrustGraph &graph, const ScoreVector &current,
                         std::span<const double> teleport, double alpha);

/// PageRank from the uniform start, normalizing after every sweep.
ScoreVector pagerank(const TrustGraph &graph, const RankParams &params = {},
                     const IterationObserver &observer = {});

/**
 * TrustRank from the start vector S(p)/|T|, normalizing after every sweep.
 * Nodes not reachable from a seed score exactly 0.0.
 * Throws InvalidArgument for an empty seed set, UnknownNode for a foreign seed.
 */
ScoreVector trustrank(const TrustGraph &graph, const SeedSet &seeds, const RankParams &params = {},
                      const IterationObserver &observer = {});

/// Largest absolute per-node difference. Throws DomainMismatch on different node sets.
double max_norm_distance(const ScoreVector &a, const ScoreVector &b);

/// True iff |previous(p) - next(p)| < epsilon for every node.
bool check_convergence(const ScoreVector &previous, const ScoreVector &next, double epsilon);

/// Size bound of solve_fixed_point_dense().
inline constexpr std::size_t DENSE_ORACLE_MAX_NODES = 1000;

/**
 * Reference solution of lambda * x = teleport + alpha * M^T x with |x|_1 = 1,
 * computed on a dense matrix in extended precision until successive iterates
 * differ by less than 1e-14. Shares no code with the sparse kernel; meant for
 * cross-checking pagerank() and trustrank() on small graphs.
 */
ScoreVector solve_fixed_point_dense(const TrustGraph &graph, std::span<const double> teleport,
                                    double alpha);

} // namespace trustgraph
