#include <trustgraph/io.hpp>

#include <cstdint>
#include <cstdio>
#include <unordered_map>

namespace trustgraph {

namespace {

enum class Section { Header, Nodes, Edges };

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineCursor {
public:
    LineCursor(std::string_view line, std::size_t number) : line_(line), number_(number) {}

    void skip_blanks() {
        while (pos_ < line_.size() && is_blank(line_[pos_]))
            ++pos_;
    }
    bool at_end() {
        skip_blanks();
        return pos_ >= line_.size();
    }
    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(number_, pos_ + 1, message);
    }

    std::string_view word() {
        skip_blanks();
        std::size_t start = pos_;
        while (pos_ < line_.size() && !is_blank(line_[pos_]))
            ++pos_;
        return line_.substr(start, pos_ - start);
    }

    std::string quoted() {
        skip_blanks();
        if (pos_ >= line_.size() || line_[pos_] != '"')
            fail("expected a quoted string");
        ++pos_;
        std::string out;
        while (pos_ < line_.size()) {
            char c = line_[pos_++];
            if (c == '"')
                return out;
            if (c == '\\') {
                if (pos_ >= line_.size())
                    break;
                char e = line_[pos_++];
                if (e != '"' && e != '\\')
                    fail(std::string("unsupported escape \\") + e);
                out += e;
            } else {
                out += c;
            }
        }
        fail("unterminated quoted string");
    }

    void expect_end() {
        if (!at_end())
            fail("unexpected text '" + std::string(line_.substr(pos_)) + "'");
    }

private:
    std::string_view line_;
    std::size_t number_;
    std::size_t pos_ = 0;
};

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '\\' && quoted) {
            ++i;
        } else if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

void parse_header(LineCursor &cur, std::string_view key, GraphDraft &draft, bool &have_orientation) {
    if (key == "version") {
        std::string_view v = cur.word();
        if (v != std::to_string(GRAPH_FORMAT_VERSION))
            cur.fail("unsupported format version '" + std::string(v) + "'");
    } else if (key == "orientation") {
        std::string_view v = cur.word();
        auto o = parse_orientation(v);
        if (!o)
            cur.fail("unknown orientation '" + std::string(v)
                     + "' (expected top-down, bottom-up or free)");
        if (have_orientation)
            cur.fail("orientation declared twice");
        draft.orientation = *o;
        have_orientation = true;
    } else if (key == "title") {
        draft.title = cur.quoted();
    } else if (key == "requirement") {
        std::string_view v = cur.word();
        if (!is_valid_token(v))
            cur.fail("requirement key must be a single token");
        draft.requirement = std::string(v);
    } else {
        cur.fail("unknown header key '" + std::string(key) + "'");
    }
    cur.expect_end();
}

} // namespace

GraphDraft parse_graph_document(std::string_view text) {
    GraphDraft draft;
    Section section = Section::Header;
    bool have_orientation = false;
    bool seen_nodes = false, seen_edges = false;
    std::unordered_map<std::string, std::size_t> node_lines;

    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++number;

        LineCursor cur(strip_comment(raw), number);
        if (cur.at_end()) {
            if (end == text.size())
                break;
            continue;
        }
        std::size_t first_col = cur.column();
        std::string_view first = cur.word();

        if (first == "[nodes]" || first == "[edges]") {
            cur.expect_end();
            if (!have_orientation)
                throw ParseError(number, first_col, "missing 'orientation:' header before sections");
            bool nodes = first == "[nodes]";
            if ((nodes && seen_nodes) || (!nodes && seen_edges))
                throw ParseError(number, first_col, "section " + std::string(first) + " repeated");
            if (nodes ? seen_edges : !seen_nodes)
                throw ParseError(number, first_col, "[nodes] must come before [edges]");
            (nodes ? seen_nodes : seen_edges) = true;
            section = nodes ? Section::Nodes : Section::Edges;
        } else if (!first.empty() && first.front() == '[') {
            throw ParseError(number, first_col, "unknown section '" + std::string(first) + "'");
        } else if (section == Section::Header) {
            if (first.size() < 2 || first.back() != ':')
                throw ParseError(number, first_col, "expected 'key: value' header line");
            parse_header(cur, first.substr(0, first.size() - 1), draft, have_orientation);
        } else if (section == Section::Nodes) {
            if (!is_valid_token(first))
                throw ParseError(number, first_col, "invalid node token '" + std::string(first) + "'");
            cur.skip_blanks();
            std::size_t layer_col = cur.column();
            std::string_view layer_text = cur.word();
            if (layer_text.empty())
                throw ParseError(number, layer_col, "missing layer for node " + std::string(first));
            auto layer = parse_layer(layer_text);
            if (!layer)
                throw ParseError(number, layer_col,
                                 "unknown layer '" + std::string(layer_text)
                                     + "' (expected requirement, aspect, component or untyped)");
            std::string label;
            if (!cur.at_end())
                label = cur.quoted();
            cur.expect_end();
            auto [it, fresh] = node_lines.emplace(std::string(first), number);
            if (!fresh)
                throw ParseError(number, first_col,
                                 "duplicate node " + std::string(first) + " (first declared on line "
                                     + std::to_string(it->second) + ")");
            draft.nodes.push_back({std::string(first), *layer, std::move(label), number});
        } else {
            cur.skip_blanks();
            std::size_t arrow_col = cur.column();
            std::string_view arrow = cur.word();
            if (arrow != "->")
                throw ParseError(number, arrow_col,
                                 arrow.empty() ? "expected '->' after " + std::string(first)
                                               : "malformed arrow '" + std::string(arrow)
                                                     + "' (expected '->')");
            cur.skip_blanks();
            std::size_t target_col = cur.column();
            std::string_view target = cur.word();
            if (target.empty())
                throw ParseError(number, target_col, "missing edge target");
            if (!is_valid_token(first) || !is_valid_token(target))
                throw ParseError(number, first_col, "invalid node token in edge");
            cur.expect_end();
            draft.edges.push_back({std::string(first), std::string(target), number});
        }
        if (end == text.size())
            break;
    }
    if (!have_orientation)
        throw ParseError(number, 1, "missing 'orientation:' header");
    if (!seen_nodes)
        throw ParseError(number, 1, "missing [nodes] section");
    return draft;
}

TrustGraph parse_graph_text(std::string_view text) { return TrustGraph::build(parse_graph_document(text)); }

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string emit_graph_text(const TrustGraph &graph) {
    std::string out;
    out += "version: " + std::to_string(GRAPH_FORMAT_VERSION) + "\n";
    out += "orientation: " + std::string(to_string(graph.orientation())) + "\n";
    if (!graph.title().empty())
        out += "title: " + quote(graph.title()) + "\n";
    if (!graph.requirement().empty())
        out += "requirement: " + graph.requirement() + "\n";
    out += "\n[nodes]\n";
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        out += graph.token(i);
        out += ' ';
        out += to_string(graph.layer(i));
        if (!graph.label(i).empty())
            out += ' ' + quote(graph.label(i));
        out += '\n';
    }
    out += "\n[edges]\n";
    for (const Edge &e : graph.edges())
        out += graph.token(e.source) + " -> " + graph.token(e.target) + "\n";
    return out;
}

std::string graph_digest(const TrustGraph &graph) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : emit_graph_text(graph)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace trustgraph
