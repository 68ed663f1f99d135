#include "ktrees/trees.hpp"

#include <algorithm>
#include <cstddef>
#include <queue>

#include <json.hpp>

namespace ktrees {

bool tree_less(const PlaneTree& a, const PlaneTree& b) {
    if (a.label != b.label) return a.label < b.label;
    return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                        b.children.begin(), b.children.end(),
                                        tree_less);
}

bool validate_plane(const PlaneTree& tree, int k) {
    if (tree.label < 1 || tree.label > k) return false;
    for (const auto& child : tree.children) {
        if (tree.label + child.label > k + 1) return false;
        if (!validate_plane(child, k)) return false;
    }
    return true;
}

bool edges_cross(std::pair<int, int> e, std::pair<int, int> f) {
    auto [a, b] = std::minmax(e.first, e.second);
    auto [c, d] = std::minmax(f.first, f.second);
    return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

std::vector<std::pair<int, int>> rooted_orientation(const NoncrossingTree& tree) {
    const int n = tree.n;
    if (static_cast<int>(tree.edges.size()) != n - 1) return {};
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (auto [a, b] : tree.edges) {
        if (a < 1 || b < 1 || a > n || b > n || a == b) return {};
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<std::pair<int, int>> oriented;
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    std::queue<int> frontier;
    seen[1] = true;
    frontier.push(1);
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            oriented.emplace_back(v, w);
            frontier.push(w);
        }
    }
    if (static_cast<int>(oriented.size()) != n - 1) return {}; // disconnected
    return oriented;
}

bool validate_noncrossing(const NoncrossingTree& tree, int k) {
    const int n = tree.n;
    if (n < 1 || static_cast<int>(tree.labels.size()) != n) return false;
    for (int label : tree.labels) {
        if (label < 1 || label > k) return false;
    }
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        for (std::size_t j = i + 1; j < tree.edges.size(); ++j) {
            if (edges_cross(tree.edges[i], tree.edges[j])) return false;
        }
    }
    auto oriented = rooted_orientation(tree);
    if (n > 1 && oriented.empty()) return false;
    for (auto [parent, child] : oriented) {
        if (parent > child) continue; // descending in index: label rule waived
        int sum = tree.labels[static_cast<std::size_t>(parent) - 1] +
                  tree.labels[static_cast<std::size_t>(child) - 1];
        if (sum > k + 1) return false;
    }
    return true;
}

namespace {

void tally_labels(const PlaneTree& tree, std::vector<long>& counts) {
    counts[static_cast<std::size_t>(tree.label) - 1] += 1;
    for (const auto& child : tree.children) tally_labels(child, counts);
}

} // namespace

LabelComposition histogram(const PlaneTree& tree, int k) {
    LabelComposition comp(k, std::vector<long>(static_cast<std::size_t>(k), 0));
    tally_labels(tree, comp.counts);
    return comp;
}

LabelComposition histogram(const NoncrossingTree& tree, int k) {
    LabelComposition comp(k, std::vector<long>(static_cast<std::size_t>(k), 0));
    for (int label : tree.labels) comp.counts[static_cast<std::size_t>(label) - 1] += 1;
    return comp;
}

namespace {

struct PlaneParser {
    std::string_view text;
    std::size_t pos = 0;

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    PlaneTree parse_tree() {
        PlaneTree node;
        node.label = parse_label();
        if (peek() == '(') {
            ++pos;
            node.children.push_back(parse_tree());
            while (peek() == ',') {
                ++pos;
                node.children.push_back(parse_tree());
            }
            if (peek() != ')') throw ParseError("expected ')' or ','", pos);
            ++pos;
        }
        return node;
    }

    int parse_label() {
        if (peek() < '0' || peek() > '9') throw ParseError("expected label digit", pos);
        long value = 0;
        while (peek() >= '0' && peek() <= '9') {
            value = value * 10 + (text[pos] - '0');
            if (value > 1000000) throw ParseError("label too large", pos);
            ++pos;
        }
        if (value < 1) throw ParseError("label must be positive", pos);
        return static_cast<int>(value);
    }
};

} // namespace

PlaneTree parse_plane(std::string_view text) {
    PlaneParser parser{text};
    PlaneTree tree = parser.parse_tree();
    if (parser.pos != text.size()) throw ParseError("trailing input", parser.pos);
    return tree;
}

std::string render_plane(const PlaneTree& tree) {
    std::string out = std::to_string(tree.label);
    if (!tree.children.empty()) {
        out += '(';
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
            if (i > 0) out += ',';
            out += render_plane(tree.children[i]);
        }
        out += ')';
    }
    return out;
}

NoncrossingTree noncrossing_from_json(const std::string& text, int* k_out) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("k") || !doc.contains("labels") || !doc.contains("edges"))
        throw ParseError("expected object with keys k, labels, edges", 0);
    NoncrossingTree tree;
    try {
        if (k_out) *k_out = doc.at("k").get<int>();
        tree.labels = doc.at("labels").get<std::vector<int>>();
        tree.n = static_cast<int>(tree.labels.size());
        for (const auto& edge : doc.at("edges")) {
            auto pair = edge.get<std::vector<int>>();
            if (pair.size() != 2) throw ParseError("edge must be a pair", 0);
            tree.edges.emplace_back(pair[0], pair[1]);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0);
    }
    return tree;
}

std::string noncrossing_to_json(const NoncrossingTree& tree, int k) {
    nlohmann::json doc;
    doc["k"] = k;
    doc["labels"] = tree.labels;
    auto edges = nlohmann::json::array();
    for (auto [a, b] : tree.edges) edges.push_back({std::min(a, b), std::max(a, b)});
    doc["edges"] = edges;
    return doc.dump();
}

} // namespace ktrees
