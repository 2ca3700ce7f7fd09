#include <trustgraph/cli.hpp>

#include <trustgraph/assessment.hpp>
#include <trustgraph/catalog.hpp>
#include <trustgraph/error.hpp>
#include <trustgraph/io.hpp>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

namespace trustgraph {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct InputError : Error {
    using Error::Error;
};

struct NotConverged : Error {
    using Error::Error;
};

struct Options {
    std::string file;
    std::string scenario;
    double alpha = RankParams::DEFAULT_ALPHA;
    double epsilon = RankParams::DEFAULT_EPSILON;
    std::size_t max_iter = RankParams::DEFAULT_MAX_ITERATIONS;
    std::string format;
    std::string output;
    bool strict = false;
    std::vector<std::string> seeds;
    double theta = ClassificationThresholds{}.dominance_ratio;
    std::optional<double> cutoff;
    std::string requirement;
};

void add_input(CLI::App *cmd, Options &o) {
    cmd->add_option("file", o.file, "Graph document");
    cmd->add_option("--scenario", o.scenario, "Bundled scenario id instead of a file");
}

void add_rank(CLI::App *cmd, Options &o) {
    cmd->add_option("--alpha", o.alpha, "Damping / decay factor")->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "Convergence threshold (max-norm)")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
    cmd->add_flag("--strict", o.strict, "Fail with exit code 3 when a run does not converge");
}

void add_output(CLI::App *cmd, Options &o, std::vector<std::string> formats) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    cmd->add_option("-o,--output", o.output, "Write to this path instead of standard output");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TrustGraph load_graph(const Options &o) {
    if (o.file.empty() == o.scenario.empty())
        throw UsageError("give exactly one input: a graph file or --scenario ID");
    if (!o.scenario.empty()) {
        try {
            return scenario_graph(o.scenario).graph;
        } catch (const InvalidArgument &e) {
            throw UsageError(e.what());
        }
    }
    std::string text = read_file(o.file);
    try {
        return parse_graph_text(text);
    } catch (const ParseError &e) {
        throw InputError(o.file + ": " + e.what());
    } catch (const ValidationError &e) {
        std::string msg = o.file + ": invalid graph";
        for (const Violation &v : e.report())
            msg += "\n  " + v.message;
        throw InputError(msg);
    }
}

RankParams rank_params(const Options &o) {
    RankParams p;
    p.alpha = o.alpha;
    p.epsilon = o.epsilon;
    p.max_iterations = o.max_iter;
    try {
        p.validate();
    } catch (const InvalidArgument &e) {
        throw UsageError(e.what());
    }
    return p;
}

SeedSet parse_seeds(const std::string &list, const TrustGraph &graph) {
    if (list == "*" || list == "all")
        return SeedSet::all_nodes(graph);
    std::vector<std::string> members;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token.empty())
            continue;
        if (!graph.find(token))
            throw UsageError("seed " + token + " is not a node of the graph");
        members.push_back(token);
    }
    if (members.empty())
        throw UsageError("--seeds needs at least one node");
    return SeedSet(std::move(members));
}

class Session {
public:
    Session(const Options &o, std::ostream &out, std::ostream &err) : o_(o), out_(out), err_(err) {}

    // Collects warnings of a run; under --strict a non-converged run aborts.
    void check(const ScoreVector &scores, const std::string &label) {
        for (const std::string &w : scores.warnings)
            err_ << "warning: " << label << ": " << w << "\n";
        if (!scores.converged && o_.strict)
            throw NotConverged(label + " did not converge within " + std::to_string(o_.max_iter) +
                               " iterations");
    }

    void emit(const std::string &text) {
        if (o_.output.empty()) {
            out_ << text;
            return;
        }
        std::ofstream file(o_.output, std::ios::binary);
        if (!file || !(file << text))
            throw UsageError("cannot write " + o_.output);
    }

private:
    const Options &o_;
    std::ostream &out_;
    std::ostream &err_;
};

std::optional<std::string> source_date() {
    const char *epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (!epoch || !*epoch)
        return std::nullopt;
    char *end = nullptr;
    long long seconds = std::strtoll(epoch, &end, 10);
    if (*end != '\0' || seconds < 0)
        return std::nullopt;
    std::time_t t = static_cast<std::time_t>(seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

std::string format_scores(const TrustGraph &graph, const std::vector<LabeledScores> &vectors,
                          const std::string &format) {
    if (format == "json")
        return emit_scores_json(vectors);
    if (format == "dot")
        return emit_dot(graph, &vectors.back().scores);
    if (format == "svg")
        return emit_svg_bars(vectors);
    return emit_scores_csv(vectors);
}

int cmd_validate(const Options &o, std::ostream &out) {
    TrustGraph g = load_graph(o);
    out << "ok: " << g.node_count() << " nodes, " << g.edge_count() << " edges, "
        << to_string(g.orientation()) << "\n";
    return EXIT_OK;
}

int cmd_pagerank(const Options &o, Session &s) {
    TrustGraph g = load_graph(o);
    ScoreVector pr = pagerank(g, rank_params(o));
    s.check(pr, "PageRank");
    s.emit(format_scores(g, {{"PageRank", pr}}, o.format));
    return EXIT_OK;
}

int cmd_trustrank(const Options &o, Session &s) {
    TrustGraph g = load_graph(o);
    RankParams params = rank_params(o);
    if (o.seeds.size() != 1)
        throw UsageError("trustrank takes one --seeds list");
    SeedSet seeds = parse_seeds(o.seeds.front(), g);
    std::string label = "TrustRank" + seeds.label();
    ScoreVector tr = trustrank(g, seeds, params);
    s.check(tr, label);
    s.emit(format_scores(g, {{label, tr}}, o.format));
    return EXIT_OK;
}

int cmd_assess(const Options &o, Session &s) {
    TrustGraph g = load_graph(o);
    RankParams params = rank_params(o);
    std::vector<SeedSet> seed_sets;
    for (const std::string &list : o.seeds)
        seed_sets.push_back(parse_seeds(list, g));
    ClassificationThresholds th;
    th.dominance_ratio = o.theta;
    if (o.cutoff) {
        th.high_mass_rule = HighMassRule::Cutoff;
        th.cutoff = *o.cutoff;
    }
    try {
        th.validate();
    } catch (const InvalidArgument &e) {
        throw UsageError(e.what());
    }
    AssessmentReport report = assess(g, seed_sets, params, th);
    report.timestamp = source_date();
    s.check(report.pagerank, "PageRank");
    for (const TrustRankRun &run : report.trustrank)
        s.check(run.scores, "TrustRank" + run.seeds.label());

    if (o.format.empty() || o.format == "json") {
        s.emit(emit_report_json(report));
        return EXIT_OK;
    }
    std::vector<LabeledScores> vectors{{"PageRank", report.pagerank}};
    for (const TrustRankRun &run : report.trustrank)
        vectors.push_back({"TrustRank" + run.seeds.label(), run.scores});
    if (o.format == "dot") {
        s.emit(emit_dot(g, &report.pagerank));
        return EXIT_OK;
    }
    if (o.format == "svg" && vectors.size() > 4)
        throw UsageError("svg charts hold at most 3 seed sets next to PageRank");
    s.emit(format_scores(g, vectors, o.format));
    return EXIT_OK;
}

int cmd_sweep(const Options &o, Session &s) {
    TrustGraph g = load_graph(o);
    RankParams params = rank_params(o);
    if (o.seeds.size() != 1)
        throw UsageError("sweep takes one --seeds list");
    SeedSet seeds = parse_seeds(o.seeds.front(), g);
    SeedSweep sweep = seed_sweep(g, seeds, params);
    for (const SeedVariant &row : sweep.rows)
        s.check(row.scores, row.description);
    std::vector<EdgeImpact> edges = edge_perturbation(g, seeds, params);
    bool all_converged = std::all_of(edges.begin(), edges.end(), [](const EdgeImpact &e) { return e.converged; });
    if (!all_converged && o.strict)
        throw NotConverged("an edge-removal run did not converge within " + std::to_string(o.max_iter) +
                           " iterations");
    s.emit(o.format == "json" ? emit_sweep_json(g, sweep, edges, params) : emit_sweep_csv(g, sweep, edges));
    return EXIT_OK;
}

int cmd_catalog(const Options &o, Session &s) {
    std::vector<const AltaiRequirement *> selected;
    if (o.requirement.empty()) {
        for (const AltaiRequirement &r : altai_catalog())
            selected.push_back(&r);
    } else {
        try {
            selected.push_back(&find_requirement(o.requirement));
        } catch (const InvalidArgument &e) {
            throw UsageError(e.what());
        }
    }
    if (o.format == "json") {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const AltaiRequirement *r : selected)
            list.push_back({{"key", r->key},
                            {"title", r->title},
                            {"description", r->description},
                            {"aligned_principle", r->aligned_principle},
                            {"aspects", r->aspects}});
        s.emit(list.dump(2) + "\n");
        return EXIT_OK;
    }
    std::string text;
    for (const AltaiRequirement *r : selected) {
        text += r->title + " [" + r->key + "]\n";
        text += "  " + r->description + "\n";
        text += "  principle: " + r->aligned_principle + "\n";
        for (const std::string &a : r->aspects)
            text += "  - " + a + "\n";
    }
    s.emit(text);
    return EXIT_OK;
}

bool use_color(const std::ostream &err) {
    const char *no_color = std::getenv("NO_COLOR");
    if (no_color && *no_color)
        return false;
    return &err == &std::cerr && isatty(STDERR_FILENO);
}

void report_error(std::ostream &err, const std::string &message) {
    if (use_color(err))
        err << "\033[1;31merror:\033[0m " << message << "\n";
    else
        err << "error: " << message << "\n";
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Trust scoring for layered requirement graphs", "trustgraph"};
    app.set_version_flag("--version", "trustgraph 0.1.0");
    app.require_subcommand(1);

    CLI::App *validate = app.add_subcommand("validate", "Check a graph document");
    add_input(validate, o);

    CLI::App *pr = app.add_subcommand("pagerank", "PageRank scores");
    add_input(pr, o);
    add_rank(pr, o);
    add_output(pr, o, {"csv", "json", "dot", "svg"});

    CLI::App *tr = app.add_subcommand("trustrank", "TrustRank scores from trusted seeds");
    add_input(tr, o);
    add_rank(tr, o);
    add_output(tr, o, {"csv", "json", "dot", "svg"});
    tr->add_option("--seeds", o.seeds, "Comma-separated seed nodes, or * for all")->required()->take_last();

    CLI::App *assess_cmd = app.add_subcommand("assess", "Rank, classify and aggregate into a report");
    add_input(assess_cmd, o);
    add_rank(assess_cmd, o);
    add_output(assess_cmd, o, {"json", "csv", "dot", "svg"});
    assess_cmd->add_option("--seeds", o.seeds, "Seed list; repeat for several TrustRank runs")
        ->required()
        ->take_all()
        ->allow_extra_args(false);
    assess_cmd->add_option("--theta", o.theta, "Dominance ratio for conditions A and B")->capture_default_str();
    assess_cmd->add_option("--cutoff", o.cutoff, "Fixed high/low split instead of 1/|P|");

    CLI::App *sweep = app.add_subcommand("sweep", "Seed-set and edge sensitivity tables");
    add_input(sweep, o);
    add_rank(sweep, o);
    add_output(sweep, o, {"csv", "json"});
    sweep->add_option("--seeds", o.seeds, "Baseline seed list")->required()->take_last();

    CLI::App *catalog = app.add_subcommand("catalog", "List the trustworthy-AI requirements and aspects");
    catalog->add_option("--requirement", o.requirement, "Requirement key or title");
    add_output(catalog, o, {"text", "json"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }

    Session session(o, out, err);
    try {
        if (validate->parsed())
            return cmd_validate(o, out);
        if (pr->parsed())
            return cmd_pagerank(o, session);
        if (tr->parsed())
            return cmd_trustrank(o, session);
        if (assess_cmd->parsed())
            return cmd_assess(o, session);
        if (sweep->parsed())
            return cmd_sweep(o, session);
        return cmd_catalog(o, session);
    } catch (const InputError &e) {
        report_error(err, e.what());
        return EXIT_INVALID_INPUT;
    } catch (const NotConverged &e) {
        report_error(err, e.what());
        return EXIT_NOT_CONVERGED;
    } catch (const UsageError &e) {
        report_error(err, e.what());
        return EXIT_USAGE;
    } catch (const UnknownNode &e) {
        report_error(err, e.what());
        return EXIT_USAGE;
    } catch (const InvalidArgument &e) {
        report_error(err, e.what());
        return EXIT_USAGE;
    }
}

} // namespace trustgraph
