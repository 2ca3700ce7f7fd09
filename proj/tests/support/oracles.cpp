#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace trustgraph;

namespace tgtest {

TwoNodeSolution two_node_pagerank(long double alpha) {
    const long double t = 1.0L - alpha;
    // lambda^2 - t lambda - alpha t / 2 = 0, positive root
    const long double lambda = (t + std::sqrt(t * t + 2.0L * alpha * t)) / 2.0L;
    const long double a = t / 2.0L / lambda;
    return {lambda, a, 1.0L - a};
}

ChainSolution chain_trustrank(long double alpha) {
    const long double t = 1.0L - alpha;
    auto f = [&](long double x) { return x * x * x - t * (x * x + alpha * x + alpha * alpha); };
    long double lo = 0.0L, hi = 1.0L;
    for (int i = 0; i < 200; ++i) {
        long double mid = (lo + hi) / 2.0L;
        (f(mid) > 0.0L ? hi : lo) = mid;
    }
    const long double lambda = (lo + hi) / 2.0L;
    const long double a = t / lambda;
    const long double b = alpha * a / lambda;
    const long double c = alpha * b / lambda;
    return {lambda, a, b, c};
}

std::vector<double> trustrank_final_normalized(const TrustGraph &g, const SeedSet &seeds, double alpha) {
    const std::size_t n = g.node_count();
    std::vector<long double> s(n, 0.0L), y(n, 0.0L), next(n);
    for (NodeIndex i : seeds.resolve(g))
        s[i] = 1.0L;
    y = s;
    for (int iter = 0; iter < 100000; ++iter) {
        long double change = 0.0L;
        for (NodeIndex p = 0; p < n; ++p) {
            long double inflow = 0.0L;
            for (NodeIndex q : g.in_neighbors(p))
                inflow += y[q] / static_cast<long double>(g.out_degree(q));
            next[p] = (1.0L - alpha) * s[p] + alpha * inflow;
            change = std::max(change, std::fabs(next[p] - y[p]));
        }
        y.swap(next);
        if (change < 1e-15L)
            break;
    }
    long double total = 0.0L;
    for (long double v : y)
        total += v;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>(y[i] / total);
    return out;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

} // namespace tgtest
