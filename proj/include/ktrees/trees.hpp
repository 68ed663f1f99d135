#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ktrees/exact.hpp"

namespace ktrees {

enum class Family { plane, noncrossing };

// Label multiplicities (l_1, ..., l_k); n is always the sum of the counts.
struct LabelComposition {
    int k = 1;
    std::vector<long> counts; // counts[i-1] = number of vertices labelled i

    LabelComposition() = default;
    LabelComposition(int k_, std::vector<long> counts_) : k(k_), counts(std::move(counts_)) {}

    long n() const {
        long s = 0;
        for (long c : counts) s += c;
        return s;
    }
    long at(int label) const { return counts[static_cast<std::size_t>(label) - 1]; }

    bool operator==(const LabelComposition&) const = default;
    auto operator<=>(const LabelComposition&) const = default;
};

// Rooted ordered tree with vertex labels in [k].  Valid when every edge's two
// labels sum to at most k+1.
struct PlaneTree {
    int label = 1;
    std::vector<PlaneTree> children;

    bool operator==(const PlaneTree&) const = default;

    long size() const {
        long s = 1;
        for (const auto& c : children) s += c.size();
        return s;
    }
};

// Root label ascending, then child sequences compared lexicographically.
// This is the canonical enumeration order.
bool tree_less(const PlaneTree& a, const PlaneTree& b);

// Tree on vertices v_1..v_n in circular order, edges as straight chords.
// Rooted at v_1.  The label-sum rule applies only to edges whose rooted
// orientation goes from a smaller circular index to a larger one.
struct NoncrossingTree {
    int n = 1;
    std::vector<int> labels;                  // labels[i] is the label of v_{i+1}
    std::vector<std::pair<int, int>> edges;   // 1-based, first < second

    bool operator==(const NoncrossingTree&) const = default;
    auto operator<=>(const NoncrossingTree&) const = default;
};

bool validate_plane(const PlaneTree& tree, int k);
bool validate_noncrossing(const NoncrossingTree& tree, int k);

// Rooted orientation of a noncrossing tree: BFS from v_1; returns (parent,
// child) index pairs, one per edge.  Empty result if the edge set is not a
// tree on n vertices.
std::vector<std::pair<int, int>> rooted_orientation(const NoncrossingTree& tree);

// Chords {a,b}, {c,d} cross iff a < c < b < d (after sorting endpoints).
bool edges_cross(std::pair<int, int> e, std::pair<int, int> f);

LabelComposition histogram(const PlaneTree& tree, int k);
LabelComposition histogram(const NoncrossingTree& tree, int k);

// Text grammar: tree := LABEL [ '(' tree {',' tree} ')' ], no whitespace.
PlaneTree parse_plane(std::string_view text);
std::string render_plane(const PlaneTree& tree);

// File format: {"k": int, "labels": [int...], "edges": [[a,b]...]}, 1-based,
// a < b.  Takes/produces the serialized JSON text.
NoncrossingTree noncrossing_from_json(const std::string& text, int* k_out = nullptr);
std::string noncrossing_to_json(const NoncrossingTree& tree, int k);

} // namespace ktrees
