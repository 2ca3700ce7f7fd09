#include <trustgraph/rank.hpp>

#include <cmath>
#include <vector>

namespace trustgraph {

ScoreVector solve_fixed_point_dense(const TrustGraph &graph, std::span<const double> teleport,
                                    double alpha) {
    const std::size_t n = graph.node_count();
    if (n > DENSE_ORACLE_MAX_NODES)
        throw InvalidArgument("dense fixed-point solver is limited to "
                              + std::to_string(DENSE_ORACLE_MAX_NODES) + " nodes");
    if (teleport.size() != n)
        throw DomainMismatch("teleport vector length differs from the node count");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("alpha must lie strictly between 0 and 1");

    using real = long double;
    // propagation[p * n + q] = alpha / outdeg(q) for every edge q -> p
    std::vector<real> propagation(n * n, 0.0L);
    std::vector<std::size_t> outdeg(n, 0);
    for (const Edge &e : graph.edges())
        ++outdeg[e.source];
    for (const Edge &e : graph.edges())
        propagation[e.target * n + e.source] = static_cast<real>(alpha) / outdeg[e.source];

    std::vector<real> jump(teleport.begin(), teleport.end());
    real jump_mass = 0.0L;
    for (real t : jump) {
        if (t < 0.0L)
            throw InvalidArgument("teleport values must be non-negative");
        jump_mass += t;
    }
    if (!(jump_mass > 0.0L))
        throw InvalidArgument("teleport vector must not be all zero");

    std::vector<real> x(n), y(n);
    for (std::size_t p = 0; p < n; ++p)
        x[p] = jump[p] / jump_mass;

    constexpr real tolerance = 1e-14L;
    constexpr std::size_t cap = 10'000'000;
    std::size_t iteration = 0;
    for (; iteration < cap; ++iteration) {
        real total = 0.0L;
        for (std::size_t p = 0; p < n; ++p) {
            real acc = jump[p];
            const real *row = &propagation[p * n];
            for (std::size_t q = 0; q < n; ++q)
                acc += row[q] * x[q];
            y[p] = acc;
            total += acc;
        }
        real delta = 0.0L;
        for (std::size_t p = 0; p < n; ++p) {
            y[p] /= total;
            delta = std::max(delta, std::fabs(y[p] - x[p]));
        }
        x.swap(y);
        if (delta < tolerance)
            break;
    }
    if (iteration == cap)
        throw InternalError("dense fixed-point iteration did not settle");

    std::vector<double> values(x.begin(), x.end());
    ScoreVector result(graph.domain(), std::move(values));
    result.iterations = iteration + 1;
    result.converged = true;
    return result;
}

} // namespace trustgraph
