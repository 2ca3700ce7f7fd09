#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <trustgraph/error.hpp>

namespace trustgraph {

using NodeIndex = std::uint32_t;

enum class Layer { Requirement, Aspect, Component, Untyped };

/**
 * Direction discipline of a layered graph.
 *
 * TopDown edges run from general to specific entities (Requirement -> Aspect ->
 * Component), BottomUp edges the other way. Edges inside one layer are always
 * allowed. Free graphs accept any direction and may contain Untyped nodes.
 */
enum class Orientation { TopDown, BottomUp, Free };

std::string_view to_string(Layer layer);
std::string_view to_string(Orientation orientation);
std::optional<Layer> parse_layer(std::string_view text);
std::optional<Orientation> parse_orientation(std::string_view text);

/// 0 for Requirement, 1 for Aspect, 2 for Component; Untyped has no depth.
std::optional<int> layer_depth(Layer layer);

Orientation opposite(Orientation orientation);

/// Node tokens are non-empty and contain no whitespace, quotes, commas or '#'.
bool is_valid_token(std::string_view token);

/// Natural order on tokens: digit runs compare numerically, so "M2" < "M10".
bool token_less(std::string_view lhs, std::string_view rhs);

struct NodeDecl {
    std::string id;
    Layer layer = Layer::Untyped;
    std::string label;
    std::size_t line = 0; ///< source line when parsed, 0 otherwise
};

struct EdgeDecl {
    std::string source;
    std::string target;
    std::size_t line = 0;
};

/// Graph content as declared by a user or a parser. May violate any invariant;
/// see validate_graph() and TrustGraph::build().
struct GraphDraft {
    Orientation orientation = Orientation::TopDown;
    std::vector<NodeDecl> nodes;
    std::vector<EdgeDecl> edges;
    std::string title;
    std::string requirement;
};

enum class ViolationKind {
    EmptyGraph,
    InvalidToken,
    InvalidLabel,
    DuplicateNode,
    UntypedNode,
    UnknownEndpoint,
    SelfLoop,
    DuplicateEdge,
    OrientationViolation,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string node;                                         ///< offending node, if any
    std::optional<std::pair<std::string, std::string>> edge;  ///< offending edge, if any
    std::size_t line = 0;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Every invariant violation of @a draft, in declaration order. Empty means valid.
ValidationReport validate_graph(const GraphDraft &draft);

/// Thrown by TrustGraph::build() on an invalid draft; carries the full report.
class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport &report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Ordered node set shared between a graph and the score vectors computed on it.
class NodeDomain {
public:
    explicit NodeDomain(std::vector<std::string> tokens);
    NodeDomain(const NodeDomain &) = delete;
    NodeDomain &operator=(const NodeDomain &) = delete;

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::vector<std::string> &tokens() const noexcept { return tokens_; }
    const std::string &token(NodeIndex i) const { return tokens_.at(i); }
    std::optional<NodeIndex> find(std::string_view token) const;
    NodeIndex index_of(std::string_view token) const; ///< throws UnknownNode

    bool operator==(const NodeDomain &other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string_view, NodeIndex> index_;
};

using DomainPtr = std::shared_ptr<const NodeDomain>;

/// True when both domains hold the same tokens in the same order.
bool same_domain(const DomainPtr &a, const DomainPtr &b);

struct Edge {
    NodeIndex source;
    NodeIndex target;
    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/**
 * Validated, immutable layered directed graph.
 *
 * Nodes are stored in natural token order and edges sorted by (source, target)
 * index, so every traversal is deterministic. In- and out-adjacency are kept
 * in compressed form; memory is linear in nodes plus edges.
 */
class TrustGraph {
public:
    /// Throws ValidationError when validate_graph(draft) is non-empty.
    static TrustGraph build(const GraphDraft &draft);

    std::size_t node_count() const noexcept { return layers_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    Orientation orientation() const noexcept { return orientation_; }
    const std::string &title() const noexcept { return title_; }
    const std::string &requirement() const noexcept { return requirement_; }

    const DomainPtr &domain() const noexcept { return domain_; }
    const std::string &token(NodeIndex i) const { return domain_->token(i); }
    std::optional<NodeIndex> find(std::string_view token) const { return domain_->find(token); }
    NodeIndex index_of(std::string_view token) const { return domain_->index_of(token); }

    Layer layer(NodeIndex i) const { return layers_.at(i); }
    const std::string &label(NodeIndex i) const { return labels_.at(i); }

    const std::vector<Edge> &edges() const noexcept { return edges_; }
    std::span<const NodeIndex> in_neighbors(NodeIndex i) const;
    std::span<const NodeIndex> out_neighbors(NodeIndex i) const;
    std::size_t out_degree(NodeIndex i) const;

    GraphDraft to_draft() const;

    /// Same nodes (token, layer, label), edges, orientation and metadata.
    bool operator==(const TrustGraph &other) const;

private:
    TrustGraph() = default;

    Orientation orientation_ = Orientation::TopDown;
    std::string title_;
    std::string requirement_;
    DomainPtr domain_;
    std::vector<Layer> layers_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_offsets_;
    std::vector<NodeIndex> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<NodeIndex> in_sources_;
};

std::size_t out_degree(const TrustGraph &graph, std::string_view node);

/// Sources of edges into @a node, in node order.
std::vector<std::string> in_neighbors(const TrustGraph &graph, std::string_view node);

/// Seeds plus everything reachable from them along directed edges, in node order.
std::vector<std::string> reachable_from(const TrustGraph &graph,
                                        std::span<const std::string> seeds);

/// Index form of reachable_from(): mask[i] is true iff node i is reachable.
std::vector<bool> reachable_mask(const TrustGraph &graph, std::span<const NodeIndex> seeds);

/// All edges flipped; TopDown and BottomUp swapped, Free unchanged.
TrustGraph reverse(const TrustGraph &graph);

/// Copy of @a graph without @a edge. Throws InvalidArgument if the edge is absent.
TrustGraph without_edge(const TrustGraph &graph, Edge edge);

} // namespace trustgraph
