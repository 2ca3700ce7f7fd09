#include <trustgraph/io.hpp>

#include <algorithm>
#include <array>
#include <cstdio>

#include <json.hpp>

namespace trustgraph {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string dot_id(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

const DomainPtr &shared_domain(std::span<const LabeledScores> vectors) {
    if (vectors.empty())
        throw InvalidArgument("nothing to emit");
    const DomainPtr &domain = vectors.front().scores.domain();
    for (const LabeledScores &v : vectors)
        if (!same_domain(domain, v.scores.domain()))
            throw DomainMismatch("score vectors cover different node sets");
    return domain;
}

} // namespace

std::string emit_scores_csv(std::span<const LabeledScores> vectors) {
    const DomainPtr &domain = shared_domain(vectors);
    std::string out = "node";
    for (const LabeledScores &v : vectors)
        out += "," + csv_field(v.label);
    out += '\n';
    for (NodeIndex i = 0; i < domain->size(); ++i) {
        out += csv_field(domain->token(i));
        for (const LabeledScores &v : vectors)
            out += "," + fixed(v.scores[i], 4);
        out += '\n';
    }
    return out;
}

std::string emit_scores_json(std::span<const LabeledScores> vectors) {
    const DomainPtr &domain = shared_domain(vectors);
    ordered_json doc;
    doc["format"] = "trustgraph-scores";
    doc["version"] = REPORT_FORMAT_VERSION;
    doc["nodes"] = domain->tokens();
    ordered_json list = ordered_json::array();
    for (const LabeledScores &v : vectors) {
        ordered_json entry;
        entry["label"] = v.label;
        entry["iterations"] = v.scores.iterations;
        entry["converged"] = v.scores.converged;
        entry["warnings"] = v.scores.warnings;
        ordered_json values = ordered_json::object();
        for (NodeIndex i = 0; i < domain->size(); ++i)
            values[domain->token(i)] = v.scores[i];
        entry["scores"] = std::move(values);
        list.push_back(std::move(entry));
    }
    doc["vectors"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string emit_dot(const TrustGraph &graph, const ScoreVector *scores) {
    if (scores && !same_domain(scores->domain(), graph.domain()))
        throw DomainMismatch("scores are not defined over this graph's nodes");

    std::string out = "digraph " + dot_id(graph.title().empty() ? "trustgraph" : graph.title()) + " {\n";
    out += "  rankdir=TB;\n";
    out += "  node [shape=box, fontname=\"Helvetica\"];\n";

    const bool bottom_up = graph.orientation() == Orientation::BottomUp;
    for (Layer layer : {Layer::Requirement, Layer::Aspect, Layer::Component}) {
        std::vector<NodeIndex> members;
        for (NodeIndex i = 0; i < graph.node_count(); ++i)
            if (graph.layer(i) == layer)
                members.push_back(i);
        if (members.empty())
            continue;
        std::string rank = "same";
        if (layer == Layer::Requirement && graph.orientation() != Orientation::Free)
            rank = bottom_up ? "max" : "min";
        out += "  subgraph layer_" + std::string(to_string(layer)) + " { rank=" + rank + ";";
        for (NodeIndex i : members)
            out += " " + dot_id(graph.token(i)) + ";";
        out += " }\n";
    }
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        std::string label = graph.token(i);
        if (!graph.label(i).empty())
            label += "\\n" + graph.label(i);
        if (scores)
            label += "\\n" + fixed((*scores)[i], 4);
        std::string escaped;
        for (char c : label) {
            if (c == '"')
                escaped += '\\';
            escaped += c;
        }
        out += "  " + dot_id(graph.token(i)) + " [label=\"" + escaped + "\"];\n";
    }
    for (const Edge &e : graph.edges())
        out += "  " + dot_id(graph.token(e.source)) + " -> " + dot_id(graph.token(e.target)) + ";\n";
    out += "}\n";
    return out;
}

std::string emit_svg_bars(std::span<const LabeledScores> vectors) {
    const DomainPtr &domain = shared_domain(vectors);
    if (vectors.size() > 4)
        throw InvalidArgument("at most 4 score vectors fit in one bar chart");

    static constexpr std::array<const char *, 4> palette = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759"};
    const std::size_t n = domain->size();
    const std::size_t k = vectors.size();
    const double bar_w = 12.0, gap = 10.0, left = 60.0, right = 20.0, top = 40.0, plot_h = 240.0,
                 bottom = 60.0;
    const double group_w = bar_w * static_cast<double>(k) + gap;
    const double width = left + right + group_w * static_cast<double>(n);
    const double height = top + plot_h + bottom;

    double peak = 0.0;
    for (const LabeledScores &v : vectors)
        for (double s : v.scores.values())
            peak = std::max(peak, s);
    if (!(peak > 0.0))
        peak = 1.0;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\""
           + fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(width, 0) + " " + fixed(height, 0)
           + "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"10\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double base_y = top + plot_h;
    out += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(top, 2) + "\" x2=\"" + fixed(left, 2)
           + "\" y2=\"" + fixed(base_y, 2) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(base_y, 2) + "\" x2=\""
           + fixed(width - right, 2) + "\" y2=\"" + fixed(base_y, 2) + "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        double value = peak * tick / 4.0;
        double y = base_y - plot_h * tick / 4.0;
        out += "<text x=\"" + fixed(left - 4, 2) + "\" y=\"" + fixed(y + 3, 2)
               + "\" text-anchor=\"end\">" + fixed(value, 4) + "</text>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x0 = left + gap / 2 + group_w * static_cast<double>(i);
        for (std::size_t j = 0; j < k; ++j) {
            const double value = vectors[j].scores[static_cast<NodeIndex>(i)];
            const double h = plot_h * value / peak;
            out += "<rect class=\"bar\" data-node=\"" + xml_escape(domain->token(static_cast<NodeIndex>(i)))
                   + "\" data-series=\"" + std::to_string(j) + "\" x=\""
                   + fixed(x0 + bar_w * static_cast<double>(j), 2) + "\" y=\"" + fixed(base_y - h, 2)
                   + "\" width=\"" + fixed(bar_w, 2) + "\" height=\"" + fixed(h, 2) + "\" fill=\""
                   + palette[j] + "\"><title>" + fixed(value, 4) + "</title></rect>\n";
        }
        out += "<text x=\"" + fixed(x0 + bar_w * static_cast<double>(k) / 2, 2) + "\" y=\""
               + fixed(base_y + 14, 2) + "\" text-anchor=\"middle\">"
               + xml_escape(domain->token(static_cast<NodeIndex>(i))) + "</text>\n";
    }
    for (std::size_t j = 0; j < k; ++j) {
        const double lx = left + 140.0 * static_cast<double>(j);
        out += "<rect x=\"" + fixed(lx, 2) + "\" y=\"12.00\" width=\"10.00\" height=\"10.00\" fill=\""
               + palette[j] + "\"/>\n";
        out += "<text x=\"" + fixed(lx + 14, 2) + "\" y=\"21.00\">" + xml_escape(vectors[j].label)
               + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string emit_sweep_csv(const TrustGraph &graph, const SeedSweep &sweep,
                           const std::vector<EdgeImpact> &edges) {
    std::string out = "variant,seeds,max_delta";
    for (NodeIndex i = 0; i < graph.node_count(); ++i)
        out += "," + csv_field(graph.token(i));
    out += '\n';
    for (const SeedVariant &row : sweep.rows) {
        out += csv_field(row.description) + "," + csv_field(row.seeds.label()) + ","
               + fixed(row.max_delta, 6);
        for (double d : row.delta)
            out += "," + fixed(d, 6);
        out += '\n';
    }
    out += "\nsource,target,pagerank_delta,trustrank_delta,converged\n";
    for (const EdgeImpact &e : edges) {
        out += csv_field(e.source) + "," + csv_field(e.target) + "," + fixed(e.pagerank_delta, 6) + ","
               + fixed(e.trustrank_delta, 6) + "," + (e.converged ? "true" : "false") + "\n";
    }
    return out;
}

std::string emit_sweep_json(const TrustGraph &graph, const SeedSweep &sweep,
                            const std::vector<EdgeImpact> &edges, const RankParams &params) {
    ordered_json doc;
    doc["format"] = "trustgraph-sweep";
    doc["version"] = REPORT_FORMAT_VERSION;
    doc["params"] = {{"alpha", params.alpha},
                     {"epsilon", params.epsilon},
                     {"max_iterations", params.max_iterations}};
    doc["nodes"] = graph.domain()->tokens();
    ordered_json rows = ordered_json::array();
    for (const SeedVariant &row : sweep.rows) {
        ordered_json r;
        r["variant"] = row.description;
        r["kind"] = row.kind == VariantKind::Baseline  ? "baseline"
                    : row.kind == VariantKind::AddSeed ? "add"
                                                       : "remove";
        r["node"] = row.node.empty() ? ordered_json(nullptr) : ordered_json(row.node);
        r["seeds"] = row.seeds.members();
        r["max_delta"] = row.max_delta;
        r["delta"] = row.delta;
        r["scores"] = row.scores.values();
        r["converged"] = row.scores.converged;
        rows.push_back(std::move(r));
    }
    doc["seed_sweep"] = std::move(rows);
    ordered_json impacts = ordered_json::array();
    for (const EdgeImpact &e : edges)
        impacts.push_back({{"source", e.source},
                           {"target", e.target},
                           {"pagerank_delta", e.pagerank_delta},
                           {"trustrank_delta", e.trustrank_delta},
                           {"converged", e.converged}});
    doc["edge_perturbation"] = std::move(impacts);
    doc["warnings"] = sweep.warnings;
    return doc.dump(2) + "\n";
}

} // namespace trustgraph
