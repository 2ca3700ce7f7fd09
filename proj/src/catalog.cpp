#include <trustgraph/catalog.hpp>

#include <trustgraph/error.hpp>
#include <trustgraph/io.hpp>

#include <charconv>
#include <cmath>
#include <map>

#include "invariant_sum.hpp"
#include "scenario_data.hpp"

namespace trustgraph {

namespace {

std::vector<AltaiRequirement> build_catalog() {
    return {
        {"human-agency-oversight",
         "Human Agency & Oversight",
         "People stay in charge: the system supports their decisions and rights and can be "
         "supervised and overridden.",
         "Human Control of Technology / Autonomy",
         {"Fundamental Rights", "Human Agency & Autonomy", "Human Oversight"}},
        {"technical-robustness-safety",
         "Technical Robustness & Safety",
         "The system behaves reliably, resists attacks and fails safely when something goes wrong.",
         "Safety/Security / Non-Maleficence",
         {"Resilience to Attack & Security", "Fall Back Plan & General Safety", "Accuracy",
          "Reliability & Reproducibility"}},
        {"privacy-data-governance",
         "Privacy & Data Governance",
         "Personal data is protected, and the data the system relies on is of known quality and "
         "controlled access.",
         "Privacy",
         {"Privacy & Data Protection", "Quality & Integrity of Data", "Access to Data"}},
        {"transparency",
         "Transparency",
         "Data, models and decisions can be traced, explained and communicated to the people "
         "affected.",
         "Transparency / Explainability",
         {"Traceability", "Explainability", "Communication"}},
        {"diversity-non-discrimination-fairness",
         "Diversity, Non-Discrimination & Fairness",
         "Outcomes do not disadvantage groups of people, and the system is usable by everyone.",
         "Fairness / Justice",
         {"Avoidance of Unfair Bias", "Accessibility & Universal Design", "Stakeholder Participation"}},
        {"societal-environmental-wellbeing",
         "Societal & Environmental Wellbeing",
         "Effects on society, democracy and the environment are considered and kept in check.",
         "Humanity / Beneficence / Sustainability",
         {"Sustainable & Environmentally Friendly AI", "Social Impact", "Society & Democracy"}},
        {"accountability",
         "Accountability",
         "Someone answers for the system: it can be audited, its risks are reported and harm can be "
         "redressed.",
         "Accountability / Explicability",
         {"Auditability", "Minimisation & Reporting of Negative Impacts", "Trade-offs", "Redress"}},
    };
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        parts.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::optional<SeedSet> seeds_from_header(std::string_view header, const TrustGraph &graph,
                                         std::size_t line) {
    if (header == "PageRank")
        return std::nullopt;
    constexpr std::string_view prefix = "TrustRank{";
    if (!header.starts_with(prefix) || !header.ends_with("}"))
        throw ParseError(line, 1, "unrecognized column '" + std::string(header) + "'");
    std::string_view body = header.substr(prefix.size(), header.size() - prefix.size() - 1);
    if (trim(body) == "*")
        return SeedSet::all_nodes(graph);
    std::vector<std::string> members;
    for (std::string_view part : split(body, ' ')) {
        if (part.empty())
            continue;
        if (!graph.find(part))
            throw ParseError(line, 1, "column '" + std::string(header) + "' names unknown node " +
                                          std::string(part));
        members.emplace_back(part);
    }
    if (members.empty())
        throw ParseError(line, 1, "column '" + std::string(header) + "' has no seeds");
    return SeedSet(std::move(members));
}

ScenarioFixture load_fixture(std::string id, std::string_view graph_text, std::string_view csv) {
    TrustGraph graph = parse_graph_text(graph_text);
    std::vector<PublishedColumn> columns = parse_published_columns(csv, graph);
    return ScenarioFixture{std::move(id), std::move(graph), std::move(columns), RankParams::DEFAULT_ALPHA,
                           {}, {}, std::string(graph_text), std::string(csv)};
}

ScenarioFixture robustness_fixture() {
    ScenarioFixture f =
        load_fixture("robustness-topdown", detail::robustness_graph_text(), detail::robustness_scores_csv());
    f.calibrated_alpha = 0.85;
    f.notes =
        "Top-down graph for Technical Robustness & Safety: 4 aspects, 13 components, 22 edges.\n"
        "alpha = 0.85 reproduces the published PageRank column within 1e-4 per node.\n"
        "The published TrustRank columns share their zero rows with trustrank() exactly. Their "
        "magnitudes follow the seed recursion solved without per-sweep normalization and scaled "
        "to sum 1 afterwards (within 1e-4 per cell); trustrank() normalizes every sweep and "
        "gives different nonzero values.\n"
        "Ambiguity: M1 -> M4 and M3 -> M4 yield identical columns; M1 -> M4 is used.\n";
    return f;
}

ScenarioFixture transparency_fixture() {
    ScenarioFixture f = load_fixture("transparency-bottomup", detail::transparency_graph_text(),
                                     detail::transparency_scores_csv());
    f.calibrated_alpha = 0.85;
    f.anomalies.push_back(
        {"TrustRank{A1 A2 A3}", "A3",
         "A3 is a seed, so its score is at least (1 - alpha) times its seed share; the printed 0 "
         "cannot come from the ranking. The graph gives 0.2597, which is also the amount missing "
         "from the column sum (0.7402)."});
    f.notes =
        "Bottom-up graph for Transparency: 3 aspects, 11 components, 16 edges.\n"
        "Zero rows of every TrustRank column match reachability except the anomaly below.\n"
        "Columns {M3 M4 M5}, {A3 M3 M4 M5}, {M3 M4 M5 M10 M11} and {*} are reproduced within "
        "1e-4 by the unnormalized seed recursion scaled to sum 1.\n"
        "Residual: the PageRank column matches this graph without edge M10 -> M9 (within 1e-4); "
        "with the edge, M9 is off by about 0.025. The edge is kept because M9 is nonzero under "
        "seeds {M3 M4 M5}.\n"
        "Residual: column {M3 M5 M7 M9 M11} has A1 and A2 off by about 0.037 in opposite "
        "directions; no edge set fits it together with the other columns.\n"
        "Anomaly: TrustRank{A1 A2 A3} prints A3 = 0 although A3 is a seed; excluded from checks.\n"
        "Ambiguity: M1 -> M7 with M8 -> A1 could be swapped, as could M2 -> A1 with M6 -> A2; "
        "the published columns cannot tell them apart.\n";
    return f;
}

} // namespace

const std::vector<AltaiRequirement> &altai_catalog() {
    static const std::vector<AltaiRequirement> catalog = build_catalog();
    return catalog;
}

const AltaiRequirement &find_requirement(std::string_view key_or_title) {
    for (const AltaiRequirement &r : altai_catalog())
        if (r.key == key_or_title || r.title == key_or_title)
            return r;
    std::string keys;
    for (const AltaiRequirement &r : altai_catalog())
        keys += (keys.empty() ? "" : ", ") + r.key;
    throw InvalidArgument("unknown requirement '" + std::string(key_or_title) + "' (valid keys: " + keys + ")");
}

std::vector<std::string> scenario_ids() { return {"robustness-topdown", "transparency-bottomup"}; }

const ScenarioFixture &scenario_graph(std::string_view id) {
    static const ScenarioFixture robustness = robustness_fixture();
    static const ScenarioFixture transparency = transparency_fixture();
    if (id == robustness.id)
        return robustness;
    if (id == transparency.id)
        return transparency;
    throw InvalidArgument("unknown scenario '" + std::string(id) +
                          "' (valid ids: robustness-topdown, transparency-bottomup)");
}

std::vector<PublishedColumn> parse_published_columns(std::string_view csv, const TrustGraph &graph) {
    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> line_numbers;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string_view::npos)
            end = csv.size();
        ++line_no;
        std::string_view line = trim(csv.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line.front() == '#')
            continue;
        rows.push_back(split(line, ','));
        line_numbers.push_back(line_no);
    }
    if (rows.empty())
        throw ParseError(1, 1, "empty score table");
    const auto &header = rows.front();
    if (header.size() < 2 || header.front() != "node")
        throw ParseError(line_numbers.front(), 1, "header must start with 'node' and name at least one column");

    const std::size_t n = graph.node_count();
    const std::size_t k = header.size() - 1;
    std::vector<std::vector<double>> values(k, std::vector<double>(n, 0.0));
    std::vector<bool> seen(n, false);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (row.size() != header.size())
            throw ParseError(line_numbers[r], 1,
                             "expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(row.size()));
        auto idx = graph.find(row.front());
        if (!idx)
            throw ParseError(line_numbers[r], 1, "row for unknown node " + std::string(row.front()));
        if (seen[*idx])
            throw ParseError(line_numbers[r], 1, "duplicate row for node " + std::string(row.front()));
        seen[*idx] = true;
        for (std::size_t c = 0; c < k; ++c) {
            std::string_view cell = row[c + 1];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v) || v < 0.0)
                throw ParseError(line_numbers[r], 1, "bad score '" + std::string(cell) + "'");
            values[c][*idx] = v;
        }
    }
    for (NodeIndex i = 0; i < n; ++i)
        if (!seen[i])
            throw ParseError(line_numbers.back(), 1, "no row for node " + graph.token(i));

    std::vector<PublishedColumn> columns;
    for (std::size_t c = 0; c < k; ++c)
        columns.push_back({std::string(header[c + 1]), seeds_from_header(header[c + 1], graph, line_numbers.front()),
                           ScoreVector(graph.domain(), std::move(values[c]))});
    return columns;
}

std::vector<std::string> check_transcription(const TrustGraph &graph,
                                             const std::vector<PublishedColumn> &columns,
                                             const std::vector<KnownAnomaly> &anomalies,
                                             double sum_tolerance) {
    std::vector<std::string> problems;
    for (const PublishedColumn &col : columns) {
        if (!same_domain(col.values.domain(), graph.domain())) {
            problems.push_back(col.label + ": column is not defined over the graph's nodes");
            continue;
        }
        bool has_anomaly = false;
        for (const KnownAnomaly &a : anomalies)
            has_anomaly = has_anomaly || a.column == col.label;

        if (!has_anomaly) {
            double sum = detail::order_invariant_sum(col.values.size(),
                                                     [&](std::size_t i) { return col.values.values()[i]; });
            if (std::abs(sum - 1.0) > sum_tolerance)
                problems.push_back(col.label + ": column sums to " + std::to_string(sum));
        }
        if (!col.seeds)
            continue;

        std::vector<NodeIndex> seed_idx = col.seeds->resolve(graph);
        std::vector<bool> reach = reachable_mask(graph, seed_idx);
        for (NodeIndex i = 0; i < graph.node_count(); ++i) {
            bool skip = false;
            for (const KnownAnomaly &a : anomalies)
                skip = skip || (a.column == col.label && a.node == graph.token(i));
            if (skip)
                continue;
            bool zero = col.values[i] == 0.0;
            if (reach[i] && zero)
                problems.push_back(col.label + ": " + graph.token(i) + " is reachable from the seeds but printed as 0");
            else if (!reach[i] && !zero)
                problems.push_back(col.label + ": " + graph.token(i) + " is unreachable from the seeds but printed nonzero");
        }
    }
    return problems;
}

} // namespace trustgraph
