#include <trustgraph/graph.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

namespace trustgraph {

std::string_view to_string(Layer layer) {
    switch (layer) {
    case Layer::Requirement:
        return "requirement";
    case Layer::Aspect:
        return "aspect";
    case Layer::Component:
        return "component";
    case Layer::Untyped:
        return "untyped";
    }
    return "untyped";
}

std::string_view to_string(Orientation orientation) {
    switch (orientation) {
    case Orientation::TopDown:
        return "top-down";
    case Orientation::BottomUp:
        return "bottom-up";
    case Orientation::Free:
        return "free";
    }
    return "free";
}

std::optional<Layer> parse_layer(std::string_view text) {
    for (Layer l : {Layer::Requirement, Layer::Aspect, Layer::Component, Layer::Untyped})
        if (text == to_string(l))
            return l;
    return std::nullopt;
}

std::optional<Orientation> parse_orientation(std::string_view text) {
    for (Orientation o : {Orientation::TopDown, Orientation::BottomUp, Orientation::Free})
        if (text == to_string(o))
            return o;
    return std::nullopt;
}

std::optional<int> layer_depth(Layer layer) {
    switch (layer) {
    case Layer::Requirement:
        return 0;
    case Layer::Aspect:
        return 1;
    case Layer::Component:
        return 2;
    case Layer::Untyped:
        break;
    }
    return std::nullopt;
}

Orientation opposite(Orientation orientation) {
    switch (orientation) {
    case Orientation::TopDown:
        return Orientation::BottomUp;
    case Orientation::BottomUp:
        return Orientation::TopDown;
    case Orientation::Free:
        break;
    }
    return Orientation::Free;
}

bool is_valid_token(std::string_view token) {
    if (token.empty())
        return false;
    return std::none_of(token.begin(), token.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isspace(u) || std::iscntrl(u) || c == '"' || c == ',' || c == '#';
    });
}

bool token_less(std::string_view lhs, std::string_view rhs) {
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::size_t i = 0, j = 0;
    while (i < lhs.size() && j < rhs.size()) {
        if (is_digit(lhs[i]) && is_digit(rhs[j])) {
            std::size_t ie = i, je = j;
            while (ie < lhs.size() && is_digit(lhs[ie]))
                ++ie;
            while (je < rhs.size() && is_digit(rhs[je]))
                ++je;
            // compare digit runs numerically, ignoring leading zeros
            std::size_t is = i, js = j;
            while (is + 1 < ie && lhs[is] == '0')
                ++is;
            while (js + 1 < je && rhs[js] == '0')
                ++js;
            if (ie - is != je - js)
                return ie - is < je - js;
            int cmp = lhs.substr(is, ie - is).compare(rhs.substr(js, je - js));
            if (cmp != 0)
                return cmp < 0;
            i = ie;
            j = je;
        } else {
            if (lhs[i] != rhs[j])
                return static_cast<unsigned char>(lhs[i]) < static_cast<unsigned char>(rhs[j]);
            ++i;
            ++j;
        }
    }
    if (lhs.size() - i != rhs.size() - j)
        return lhs.size() - i < rhs.size() - j;
    // equal under natural order (e.g. "A01" vs "A1"): fall back to bytes for a total order
    return lhs < rhs;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::EmptyGraph:
        return "empty graph";
    case ViolationKind::InvalidToken:
        return "invalid token";
    case ViolationKind::InvalidLabel:
        return "invalid label";
    case ViolationKind::DuplicateNode:
        return "duplicate node";
    case ViolationKind::UntypedNode:
        return "untyped node";
    case ViolationKind::UnknownEndpoint:
        return "unknown endpoint";
    case ViolationKind::SelfLoop:
        return "self-loop";
    case ViolationKind::DuplicateEdge:
        return "duplicate edge";
    case ViolationKind::OrientationViolation:
        return "orientation violation";
    }
    return "violation";
}

namespace {

std::string edge_text(const EdgeDecl &e) { return e.source + " -> " + e.target; }

std::string at_line(std::size_t line) {
    return line ? " (line " + std::to_string(line) + ")" : std::string();
}

bool violates_orientation(Orientation orientation, Layer source, Layer target) {
    auto ds = layer_depth(source);
    auto dt = layer_depth(target);
    if (!ds || !dt)
        return false;
    switch (orientation) {
    case Orientation::TopDown:
        return *ds > *dt;
    case Orientation::BottomUp:
        return *ds < *dt;
    case Orientation::Free:
        break;
    }
    return false;
}

} // namespace

ValidationReport validate_graph(const GraphDraft &draft) {
    ValidationReport report;
    if (draft.nodes.empty())
        report.push_back({ViolationKind::EmptyGraph, {}, {}, 0, "graph declares no nodes"});

    std::unordered_map<std::string_view, const NodeDecl *> declared;
    for (const NodeDecl &node : draft.nodes) {
        if (!is_valid_token(node.id)) {
            report.push_back({ViolationKind::InvalidToken, node.id, {}, node.line,
                              "invalid node token '" + node.id + "'" + at_line(node.line)});
            continue;
        }
        if (std::any_of(node.label.begin(), node.label.end(),
                        [](char c) { return std::iscntrl(static_cast<unsigned char>(c)); })) {
            report.push_back({ViolationKind::InvalidLabel, node.id, {}, node.line,
                              "label of node " + node.id + " contains control characters"
                                  + at_line(node.line)});
        }
        if (!declared.emplace(node.id, &node).second) {
            report.push_back({ViolationKind::DuplicateNode, node.id, {}, node.line,
                              "node " + node.id + " declared more than once" + at_line(node.line)});
            continue;
        }
        if (node.layer == Layer::Untyped && draft.orientation != Orientation::Free) {
            report.push_back({ViolationKind::UntypedNode, node.id, {}, node.line,
                              "node " + node.id + " is untyped but the graph is "
                                  + std::string(to_string(draft.orientation)) + at_line(node.line)});
        }
    }

    std::unordered_set<std::string> seen_edges;
    for (const EdgeDecl &edge : draft.edges) {
        auto where = std::make_pair(edge.source, edge.target);
        auto src = declared.find(edge.source);
        auto dst = declared.find(edge.target);
        bool known = true;
        for (const auto &[endpoint, it] : {std::pair{&edge.source, src}, std::pair{&edge.target, dst}}) {
            if (it == declared.end()) {
                known = false;
                report.push_back({ViolationKind::UnknownEndpoint, *endpoint, where, edge.line,
                                  "edge " + edge_text(edge) + " has unknown endpoint " + *endpoint
                                      + at_line(edge.line)});
            }
        }
        if (edge.source == edge.target) {
            report.push_back({ViolationKind::SelfLoop, edge.source, where, edge.line,
                              "edge " + edge_text(edge) + " is a self-loop" + at_line(edge.line)});
            continue;
        }
        if (!seen_edges.insert(edge.source + '\n' + edge.target).second) {
            report.push_back({ViolationKind::DuplicateEdge, {}, where, edge.line,
                              "edge " + edge_text(edge) + " declared more than once"
                                  + at_line(edge.line)});
            continue;
        }
        if (known && violates_orientation(draft.orientation, src->second->layer, dst->second->layer)) {
            report.push_back(
                {ViolationKind::OrientationViolation, {}, where, edge.line,
                 "edge " + edge_text(edge) + " runs from " + std::string(to_string(src->second->layer))
                     + " to " + std::string(to_string(dst->second->layer)) + ", against the "
                     + std::string(to_string(draft.orientation)) + " orientation" + at_line(edge.line)});
        }
    }
    return report;
}

namespace {

std::string summarize(const ValidationReport &report) {
    std::string text = "invalid graph: ";
    text += report.empty() ? std::string("no details") : report.front().message;
    if (report.size() > 1)
        text += " (and " + std::to_string(report.size() - 1) + " more)";
    return text;
}

} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(summarize(report)), report_(std::move(report)) {}

NodeDomain::NodeDomain(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i)
        index_.emplace(tokens_[i], static_cast<NodeIndex>(i));
}

std::optional<NodeIndex> NodeDomain::find(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

NodeIndex NodeDomain::index_of(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        throw UnknownNode(std::string(token));
    return it->second;
}

bool same_domain(const DomainPtr &a, const DomainPtr &b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

TrustGraph TrustGraph::build(const GraphDraft &draft) {
    ValidationReport report = validate_graph(draft);
    if (!report.empty())
        throw ValidationError(std::move(report));

    const std::size_t n = draft.nodes.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return token_less(draft.nodes[a].id, draft.nodes[b].id);
    });

    TrustGraph g;
    g.orientation_ = draft.orientation;
    g.title_ = draft.title;
    g.requirement_ = draft.requirement;
    std::vector<std::string> tokens;
    tokens.reserve(n);
    g.layers_.reserve(n);
    g.labels_.reserve(n);
    for (std::size_t k : order) {
        tokens.push_back(draft.nodes[k].id);
        g.layers_.push_back(draft.nodes[k].layer);
        g.labels_.push_back(draft.nodes[k].label);
    }
    g.domain_ = std::make_shared<const NodeDomain>(std::move(tokens));

    g.edges_.reserve(draft.edges.size());
    for (const EdgeDecl &e : draft.edges)
        g.edges_.push_back({g.domain_->index_of(e.source), g.domain_->index_of(e.target)});
    std::sort(g.edges_.begin(), g.edges_.end());

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const Edge &e : g.edges_) {
        ++g.out_offsets_[e.source + 1];
        ++g.in_offsets_[e.target + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_offsets_[i + 1] += g.out_offsets_[i];
        g.in_offsets_[i + 1] += g.in_offsets_[i];
    }
    g.out_targets_.resize(g.edges_.size());
    g.in_sources_.resize(g.edges_.size());
    std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // edges are sorted by source, so both fills come out in node order
    for (std::size_t k = 0; k < g.edges_.size(); ++k) {
        const Edge &e = g.edges_[k];
        g.out_targets_[k] = e.target;
        g.in_sources_[in_fill[e.target]++] = e.source;
    }
    return g;
}

std::span<const NodeIndex> TrustGraph::in_neighbors(NodeIndex i) const {
    return {in_sources_.data() + in_offsets_.at(i), in_sources_.data() + in_offsets_.at(i + 1)};
}

std::span<const NodeIndex> TrustGraph::out_neighbors(NodeIndex i) const {
    return {out_targets_.data() + out_offsets_.at(i), out_targets_.data() + out_offsets_.at(i + 1)};
}

std::size_t TrustGraph::out_degree(NodeIndex i) const {
    return out_offsets_.at(i + 1) - out_offsets_.at(i);
}

GraphDraft TrustGraph::to_draft() const {
    GraphDraft draft;
    draft.orientation = orientation_;
    draft.title = title_;
    draft.requirement = requirement_;
    draft.nodes.reserve(node_count());
    for (NodeIndex i = 0; i < node_count(); ++i)
        draft.nodes.push_back({token(i), layers_[i], labels_[i], 0});
    draft.edges.reserve(edges_.size());
    for (const Edge &e : edges_)
        draft.edges.push_back({token(e.source), token(e.target), 0});
    return draft;
}

bool TrustGraph::operator==(const TrustGraph &other) const {
    return orientation_ == other.orientation_ && title_ == other.title_
           && requirement_ == other.requirement_ && same_domain(domain_, other.domain_)
           && layers_ == other.layers_ && labels_ == other.labels_ && edges_ == other.edges_;
}

std::size_t out_degree(const TrustGraph &graph, std::string_view node) {
    return graph.out_degree(graph.index_of(node));
}

std::vector<std::string> in_neighbors(const TrustGraph &graph, std::string_view node) {
    std::vector<std::string> result;
    for (NodeIndex q : graph.in_neighbors(graph.index_of(node)))
        result.push_back(graph.token(q));
    return result;
}

std::vector<bool> reachable_mask(const TrustGraph &graph, std::span<const NodeIndex> seeds) {
    std::vector<bool> seen(graph.node_count(), false);
    std::vector<NodeIndex> stack;
    for (NodeIndex s : seeds) {
        if (s >= graph.node_count())
            throw InvalidArgument("seed index out of range");
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        NodeIndex u = stack.back();
        stack.pop_back();
        for (NodeIndex v : graph.out_neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<std::string> reachable_from(const TrustGraph &graph, std::span<const std::string> seeds) {
    std::vector<NodeIndex> idx;
    idx.reserve(seeds.size());
    for (const std::string &s : seeds)
        idx.push_back(graph.index_of(s));
    std::vector<bool> mask = reachable_mask(graph, idx);
    std::vector<std::string> result;
    for (NodeIndex i = 0; i < graph.node_count(); ++i)
        if (mask[i])
            result.push_back(graph.token(i));
    return result;
}

TrustGraph reverse(const TrustGraph &graph) {
    GraphDraft draft = graph.to_draft();
    draft.orientation = opposite(draft.orientation);
    for (EdgeDecl &e : draft.edges)
        std::swap(e.source, e.target);
    return TrustGraph::build(draft);
}

TrustGraph without_edge(const TrustGraph &graph, Edge edge) {
    GraphDraft draft = graph.to_draft();
    auto it = std::find(graph.edges().begin(), graph.edges().end(), edge);
    if (it == graph.edges().end())
        throw InvalidArgument("edge not in graph");
    draft.edges.erase(draft.edges.begin() + (it - graph.edges().begin()));
    return TrustGraph::build(draft);
}

} // namespace trustgraph
