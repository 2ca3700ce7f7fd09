// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <trustgraph/assessment.hpp>
#include <trustgraph/catalog.hpp>
#include <trustgraph/io.hpp>
#include <trustgraph/rank.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace trustgraph;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes, one place.
constexpr double PUBLISHED_PR_TOLERANCE = 0.002;
constexpr double PUBLISHED_PR_RUNTIME_MS = 50.0;
constexpr double DISTRIBUTION_TOLERANCE = 1e-9;
constexpr int DISTRIBUTION_CASES = 500;
constexpr int ORACLE_CASES = 200;
constexpr double ORACLE_TOLERANCE = 1e-7;
constexpr double QUADRATIC_TOLERANCE = 1e-9;
constexpr double CUBIC_TOLERANCE = 1e-6;
constexpr double CYCLE_TOLERANCE = 1e-12;
// The closed-form tolerances sit below the default stopping threshold (1e-8),
// so those runs stop at this one instead.
constexpr double CLOSED_FORM_EPSILON = 1e-12;
constexpr int PERMUTATION_CASES = 50;
constexpr int ROUND_TRIP_CASES = 500;
constexpr int CLASSIFICATION_CASES = 2000;
constexpr std::size_t PERF_NODES = 100000;
constexpr std::size_t PERF_EDGES = 1000000;
constexpr double PERF_SECONDS = 10.0;
constexpr double PERF_EPSILON = 1e-8;
// Peak memory per edge may grow by at most this factor from a quarter-size run.
constexpr double MEMORY_LINEARITY_SLACK = 1.25;

struct Outcome {
    bool pass;
    std::string detail;
};

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

struct RandomCase {
    TrustGraph graph;
    SeedSet seeds;
};

const std::vector<RandomCase> &distribution_cases() {
    static const std::vector<RandomCase> cases = [] {
        tgtest::Rng rng(20240601);
        std::uniform_real_distribution<double> density(0.02, 0.4);
        std::vector<RandomCase> out;
        for (int i = 0; i < DISTRIBUTION_CASES; ++i) {
            tgtest::RandomGraphOptions opts;
            opts.min_nodes = 3;
            opts.max_nodes = 50;
            opts.edge_probability = density(rng);
            opts.layered = i % 3 == 0;
            TrustGraph g = tgtest::random_graph(rng, opts);
            SeedSet s = tgtest::random_seeds(rng, g);
            out.push_back({std::move(g), std::move(s)});
        }
        return out;
    }();
    return cases;
}

Outcome published_pagerank() {
    const ScenarioFixture &f = scenario_graph("robustness-topdown");
    RankParams p;
    p.alpha = f.calibrated_alpha;
    auto start = Clock::now();
    ScoreVector pr = pagerank(f.graph, p);
    double elapsed = ms_since(start);
    double worst = max_norm_distance(pr, f.columns.at(0).values);
    bool ok = worst <= PUBLISHED_PR_TOLERANCE && elapsed < PUBLISHED_PR_RUNTIME_MS && pr.converged;
    return {ok, "alpha " + fmt("%.2f", p.alpha) + ", max deviation " + fmt("%.5f", worst) + " (limit " +
                    fmt("%.3f", PUBLISHED_PR_TOLERANCE) + "), " + fmt("%.2f", elapsed) + " ms"};
}

Outcome published_zero_pattern() {
    const ScenarioFixture &f = scenario_graph("robustness-topdown");
    int columns = 0, mismatches = 0;
    std::string where;
    for (const PublishedColumn &col : f.columns) {
        if (!col.seeds)
            continue;
        ++columns;
        ScoreVector tr = trustrank(f.graph, *col.seeds);
        for (NodeIndex i = 0; i < f.graph.node_count(); ++i) {
            if ((tr[i] == 0.0) != (col.values[i] == 0.0)) {
                ++mismatches;
                where += " " + col.label + ":" + f.graph.token(i);
            }
        }
    }
    return {columns == 6 && mismatches == 0,
            std::to_string(columns) + " columns, " + std::to_string(mismatches) + " mismatched cells" + where};
}

Outcome distribution() {
    double worst = 0.0;
    bool in_range = true;
    std::size_t vectors = 0;
    for (const RandomCase &c : distribution_cases()) {
        for (const ScoreVector &v : {pagerank(c.graph), trustrank(c.graph, c.seeds)}) {
            ++vectors;
            long double total = 0.0L;
            for (double x : v.values()) {
                total += x;
                in_range = in_range && x >= 0.0 && x <= 1.0;
            }
            worst = std::max(worst, static_cast<double>(std::fabs(total - 1.0L)));
        }
    }
    return {in_range && worst <= DISTRIBUTION_TOLERANCE,
            std::to_string(vectors) + " vectors over " + std::to_string(distribution_cases().size()) +
                " graphs, max |sum - 1| " + fmt("%.2e", worst) + (in_range ? "" : ", entry outside [0,1]")};
}

Outcome oracle_equivalence() {
    tgtest::Rng rng(777);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    double worst = 0.0;
    for (int i = 0; i < ORACLE_CASES; ++i) {
        tgtest::RandomGraphOptions opts;
        opts.min_nodes = 1;
        opts.max_nodes = 8;
        opts.edge_probability = density(rng);
        opts.layered = i % 2 == 1;
        TrustGraph g = tgtest::random_graph(rng, opts);
        SeedSet seeds = tgtest::random_seeds(rng, g);
        RankParams p;
        worst = std::max(worst, max_norm_distance(pagerank(g, p),
                                                  solve_fixed_point_dense(g, pagerank_teleport(g, p.alpha), p.alpha)));
        worst = std::max(worst, max_norm_distance(trustrank(g, seeds, p),
                                                  solve_fixed_point_dense(g, trustrank_teleport(g, seeds, p.alpha), p.alpha)));
    }
    return {worst < ORACLE_TOLERANCE, std::to_string(ORACLE_CASES) + " graphs (<= 8 nodes), default epsilon, max-norm " +
                                          fmt("%.2e", worst)};
}

Outcome closed_forms() {
    TrustGraph pair = tgtest::free_graph({"A", "B"}, {{"A", "B"}});
    const double lambda = (0.15 + std::sqrt(0.2775)) / 2;
    RankParams tight;
    tight.epsilon = CLOSED_FORM_EPSILON;
    auto quad_error = [&](const ScoreVector &pr) {
        return std::max(std::fabs(pr.at("A") - 0.075 / lambda), std::fabs(pr.at("B") - (1 - 0.075 / lambda)));
    };
    double quad = quad_error(pagerank(pair, tight));
    double quad_default = quad_error(pagerank(pair));

    TrustGraph chain = tgtest::free_graph({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    auto cubic = tgtest::chain_trustrank(0.85L);
    ScoreVector tr = trustrank(chain, SeedSet{"A"}, tight);
    double cub = std::max({std::fabs(tr.at("A") - static_cast<double>(cubic.a)),
                           std::fabs(tr.at("B") - static_cast<double>(cubic.b)),
                           std::fabs(tr.at("C") - static_cast<double>(cubic.c))});

    double cyc = 0.0;
    for (std::size_t n = 2; n <= 20; ++n) {
        std::vector<std::string> nodes;
        std::vector<std::pair<std::string, std::string>> edges;
        for (std::size_t i = 0; i < n; ++i)
            nodes.push_back("N" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i)
            edges.emplace_back(nodes[i], nodes[(i + 1) % n]);
        TrustGraph g = tgtest::free_graph(nodes, edges);
        for (double alpha : {0.1, 0.5, 0.85, 0.99}) {
            RankParams p;
            p.alpha = alpha;
            for (const ScoreVector &v : {pagerank(g, p), trustrank(g, SeedSet::all_nodes(g), p)})
                for (double x : v.values())
                    cyc = std::max(cyc, std::fabs(x - 1.0 / static_cast<double>(n)));
        }
    }
    bool ok = quad <= QUADRATIC_TOLERANCE && cub <= CUBIC_TOLERANCE && cyc <= CYCLE_TOLERANCE;
    return {ok, "epsilon " + fmt("%.0e", CLOSED_FORM_EPSILON) + ": quadratic " + fmt("%.1e", quad) + " (" +
                    fmt("%.1e", quad_default) + " at default epsilon), cubic " + fmt("%.1e", cub) + ", cycles " +
                    fmt("%.1e", cyc)};
}

Outcome support() {
    std::size_t bad = 0;
    for (const RandomCase &c : distribution_cases()) {
        ScoreVector tr = trustrank(c.graph, c.seeds);
        std::vector<std::string> reach = reachable_from(c.graph, c.seeds.members());
        std::vector<std::string> positive;
        for (NodeIndex i = 0; i < c.graph.node_count(); ++i)
            if (tr[i] > 0.0)
                positive.push_back(c.graph.token(i));
        bad += positive != reach;
    }
    return {bad == 0, std::to_string(distribution_cases().size()) + " cases, " + std::to_string(bad) + " mismatches"};
}

Outcome permutation() {
    tgtest::Rng rng(4242);
    std::size_t bad = 0;
    for (int i = 0; i < PERMUTATION_CASES; ++i) {
        TrustGraph g = tgtest::random_graph(rng, {.min_nodes = 3, .max_nodes = 50, .edge_probability = 0.12});
        SeedSet seeds = tgtest::random_seeds(rng, g);
        std::map<std::string, std::string> mapping;
        TrustGraph h = tgtest::relabel(rng, g, mapping);
        std::vector<std::string> mapped;
        for (const std::string &s : seeds.members())
            mapped.push_back(mapping.at(s));
        ScoreVector pg = pagerank(g), ph = pagerank(h);
        ScoreVector tg = trustrank(g, seeds), th = trustrank(h, SeedSet(mapped));
        for (NodeIndex p = 0; p < g.node_count(); ++p) {
            const std::string &to = mapping.at(g.token(p));
            bad += pg[p] != ph.at(to);
            bad += tg[p] != th.at(to);
        }
        bad += pg.iterations != ph.iterations || tg.iterations != th.iterations;
    }
    return {bad == 0, std::to_string(PERMUTATION_CASES) + " relabelings, " + std::to_string(bad) + " differing values"};
}

std::string read_data(const std::string &name) {
    FILE *f = std::fopen((std::string(TG_DATA_DIR) + "/scenarios/" + name).c_str(), "rb");
    if (!f)
        throw std::runtime_error("cannot open " + name);
    std::string text;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, f)) > 0;)
        text.append(buf, n);
    std::fclose(f);
    return text;
}

Outcome round_trip() {
    tgtest::Rng rng(31337);
    std::size_t failures = 0;
    for (int i = 0; i < ROUND_TRIP_CASES; ++i) {
        tgtest::RandomGraphOptions opts;
        opts.min_nodes = 1;
        opts.max_nodes = 40;
        opts.layered = i % 2 == 0;
        opts.fancy_labels = i % 3 == 0;
        TrustGraph g = tgtest::random_graph(rng, opts);
        failures += !(parse_graph_text(emit_graph_text(g)) == g);
    }
    std::string fixtures;
    std::size_t problems = 0;
    for (const std::string &id : scenario_ids()) {
        TrustGraph g = parse_graph_text(read_data(id + ".graph"));
        std::vector<PublishedColumn> columns = parse_published_columns(read_data(id + ".csv"), g);
        auto issues = check_transcription(g, columns, scenario_graph(id).anomalies);
        problems += issues.size();
        for (const std::string &s : issues)
            fixtures += "; " + s;
    }
    return {failures == 0 && problems == 0, std::to_string(ROUND_TRIP_CASES) + " graphs, " + std::to_string(failures) +
                                                " round-trip failures, fixture files: " + std::to_string(problems) +
                                                " transcription issues" + fixtures};
}

Outcome classification() {
    tgtest::Rng rng(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t bad = 0, nodes = 0;
    for (double theta : {0.1, 0.5, 2.0}) {
        ClassificationThresholds th;
        th.dominance_ratio = theta;
        for (int round = 0; round < CLASSIFICATION_CASES / 20; ++round) {
            const std::size_t n = 20;
            std::vector<std::string> names;
            for (std::size_t i = 0; i < n; ++i)
                names.push_back("N" + std::to_string(i));
            TrustGraph g = tgtest::free_graph(names, {});
            std::vector<double> pr(n), tr(n);
            for (std::size_t i = 0; i < n; ++i) {
                int shape = static_cast<int>(rng() % 5);
                pr[i] = shape == 0 ? 0.0 : u(rng);
                tr[i] = shape == 1 ? 0.0 : shape == 2 ? pr[i] : shape == 3 ? pr[i] * (1.0 + theta) : u(rng);
            }
            auto result = classify_nodes(ScoreVector(g.domain(), pr), ScoreVector(g.domain(), tr), th);
            bad += result.size() != n;
            for (std::size_t i = 0; i < result.size(); ++i) {
                ++nodes;
                const double p = pr[i], t = tr[i];
                bool a = p > 0.0 && p >= (1.0 + theta) * t;
                bool b = t > 0.0 && t >= (1.0 + theta) * p;
                bool c = !a && !b;
                bool high = std::max(p, t) >= 1.0 / static_cast<double>(n);
                int holds = a + b + (c && !high) + (c && high);
                Condition expected = a ? Condition::A : b ? Condition::B : high ? Condition::CHigh : Condition::CLow;
                bad += holds != 1 || result[i].condition != expected || result[i].node != g.token(static_cast<NodeIndex>(i));
            }
        }
    }
    const ScenarioFixture &f = scenario_graph("robustness-topdown");
    auto column = [&](const std::string &label) -> const ScoreVector & {
        for (const PublishedColumn &c : f.columns)
            if (c.label == label)
                return c.values;
        throw std::runtime_error("no column " + label);
    };
    ClassificationThresholds half;
    half.dominance_ratio = 0.5;
    auto m13 = classify_nodes(column("PageRank"), column("TrustRank{A1 A2 A3 A4}"), half);
    auto m5 = classify_nodes(column("PageRank"), column("TrustRank{A1 A3 M5 M11}"), half);
    bool published = m13[f.graph.index_of("M13")].condition == Condition::A &&
                     m5[f.graph.index_of("M5")].condition == Condition::B;
    return {bad == 0 && published, std::to_string(nodes) + " random pairs, " + std::to_string(bad) +
                                       " violations; M13 -> A and M5 -> B " + (published ? "hold" : "FAIL")};
}

struct PerfResult {
    double build_s = 0, rank_s = 0;
    std::size_t iterations = 0;
    bool converged = false;
    long peak_kb = 0;
};

// Runs the benchmark in a child process so its peak RSS is measured in isolation.
PerfResult run_perf_child(std::size_t nodes, std::size_t edges) {
    int fds[2];
    if (pipe(fds) != 0)
        throw std::runtime_error("pipe failed");
    pid_t pid = fork();
    if (pid < 0)
        throw std::runtime_error("fork failed");
    if (pid == 0) {
        close(fds[0]);
        PerfResult r;
        auto start = Clock::now();
        TrustGraph g = tgtest::layered_benchmark_graph(nodes, edges, 12345);
        r.build_s = ms_since(start) / 1000.0;
        RankParams p;
        p.epsilon = PERF_EPSILON;
        start = Clock::now();
        ScoreVector pr = pagerank(g, p);
        r.rank_s = ms_since(start) / 1000.0;
        r.iterations = pr.iterations;
        r.converged = pr.converged && g.edge_count() == edges;
        ssize_t written = write(fds[1], &r, sizeof r);
        _exit(written == static_cast<ssize_t>(sizeof r) ? 0 : 1);
    }
    close(fds[1]);
    PerfResult r;
    ssize_t got = read(fds[0], &r, sizeof r);
    close(fds[0]);
    int status = 0;
    struct rusage usage {};
    wait4(pid, &status, 0, &usage);
    if (got != static_cast<ssize_t>(sizeof r) || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw std::runtime_error("benchmark child failed");
    r.peak_kb = usage.ru_maxrss;
    return r;
}

Outcome performance() {
    PerfResult quarter = run_perf_child(PERF_NODES / 4, PERF_EDGES / 4);
    PerfResult full = run_perf_child(PERF_NODES, PERF_EDGES);
    double per_edge_quarter = quarter.peak_kb * 1024.0 / static_cast<double>(PERF_EDGES / 4);
    double per_edge_full = full.peak_kb * 1024.0 / static_cast<double>(PERF_EDGES);
    bool linear = per_edge_full <= per_edge_quarter * MEMORY_LINEARITY_SLACK;
    double total = full.build_s + full.rank_s;
    bool ok = full.converged && total < PERF_SECONDS && linear;
    return {ok, std::to_string(PERF_NODES) + " nodes / " + std::to_string(PERF_EDGES) + " edges: build " +
                    fmt("%.2f", full.build_s) + " s + rank " + fmt("%.2f", full.rank_s) + " s (" +
                    std::to_string(full.iterations) + " iterations, " + (full.converged ? "converged" : "NOT converged") +
                    "), peak RSS " + fmt("%.0f", full.peak_kb / 1024.0) + " MiB = " + fmt("%.0f", per_edge_full) +
                    " B/edge vs " + fmt("%.0f", per_edge_quarter) + " B/edge at quarter size"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"published PageRank column (top-down scenario)", published_pagerank},
        {"published TrustRank zero patterns (top-down scenario)", published_zero_pattern},
        {"distribution invariant", distribution},
        {"dense oracle equivalence", oracle_equivalence},
        {"closed-form fixed points", closed_forms},
        {"TrustRank support equals reachability", support},
        {"permutation equivariance (bit-exact)", permutation},
        {"graph text round trip and fixture transcription", round_trip},
        {"classification totality", classification},
        {"performance and memory", performance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
