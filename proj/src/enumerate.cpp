#include "ktrees/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace ktrees {

namespace {

long env_cap(long fallback) {
    const char* raw = std::getenv("KTREES_ORACLE_CAP");
    if (!raw) return fallback;
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0') return fallback;
    return std::max(fallback, value);
}

void check_plane_args(int k, int n) {
    if (k < 1 || n < 1) throw InvalidParams("enumerate: need k >= 1 and n >= 1");
    if (n > plane_enumeration_cap())
        throw LimitExceeded("enumerate_kplane: n = " + std::to_string(n) + " exceeds cap " +
                            std::to_string(plane_enumeration_cap()));
}

void check_noncrossing_args(int k, int n) {
    if (k < 1 || n < 1) throw InvalidParams("enumerate: need k >= 1 and n >= 1");
    if (n > noncrossing_enumeration_cap())
        throw LimitExceeded("enumerate_knoncrossing: n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(noncrossing_enumeration_cap()));
}

// Emits every ordered forest with `size` total vertices and root labels in
// [1..cap] by appending subtrees to `acc`; calls `emit` once per complete
// forest.  Branch order: first-subtree size ascending, then its root label
// ascending, then recursion — the total order the sampler unranks.
void gen_forest(int k, int size, int cap, std::vector<PlaneTree>& acc,
                const std::function<void()>& emit);

// Emits every tree with `size` vertices and root label `root` by appending
// it to `acc`.
void gen_tree(int k, int size, int root, std::vector<PlaneTree>& acc,
              const std::function<void()>& emit) {
    std::vector<PlaneTree> kids;
    gen_forest(k, size - 1, k + 1 - root, kids, [&] {
        acc.push_back(PlaneTree{root, kids});
        emit();
        acc.pop_back();
    });
}

void gen_forest(int k, int size, int cap, std::vector<PlaneTree>& acc,
                const std::function<void()>& emit) {
    if (size == 0) {
        emit();
        return;
    }
    for (int first_size = 1; first_size <= size; ++first_size) {
        for (int root = 1; root <= cap; ++root) {
            gen_tree(k, first_size, root, acc,
                     [&] { gen_forest(k, size - first_size, cap, acc, emit); });
        }
    }
}

// Decodes a Prüfer sequence over [1..n] into the sorted edge list of the
// corresponding labelled tree.
std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
    for (int v : seq) degree[static_cast<std::size_t>(v)] += 1;
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (int v : seq) {
        int leaf = 0;
        for (int u = 1; u <= n; ++u) {
            if (degree[static_cast<std::size_t>(u)] == 1 && !used[static_cast<std::size_t>(u)]) {
                leaf = u;
                break;
            }
        }
        used[static_cast<std::size_t>(leaf)] = true;
        degree[static_cast<std::size_t>(v)] -= 1;
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    }
    int a = 0, b = 0;
    for (int u = 1; u <= n; ++u) {
        if (!used[static_cast<std::size_t>(u)] && degree[static_cast<std::size_t>(u)] == 1) {
            if (a == 0)
                a = u;
            else
                b = u;
        }
    }
    edges.emplace_back(a, b);
    std::sort(edges.begin(), edges.end());
    return edges;
}

bool pairwise_noncrossing(const std::vector<std::pair<int, int>>& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (edges_cross(edges[i], edges[j])) return false;
    return true;
}

// All noncrossing spanning-tree edge sets on n circle points, sorted.
std::vector<std::vector<std::pair<int, int>>> noncrossing_shapes(int n) {
    std::vector<std::vector<std::pair<int, int>>> shapes;
    if (n == 1) {
        shapes.push_back({});
        return shapes;
    }
    std::vector<int> seq(static_cast<std::size_t>(n) - 2, 1);
    while (true) {
        auto edges = prufer_decode(seq, n);
        if (pairwise_noncrossing(edges)) shapes.push_back(std::move(edges));
        // odometer over [1..n]^(n-2)
        std::size_t pos = seq.size();
        while (pos > 0 && seq[pos - 1] == n) {
            seq[pos - 1] = 1;
            --pos;
        }
        if (pos == 0) break;
        seq[pos - 1] += 1;
    }
    std::sort(shapes.begin(), shapes.end());
    return shapes;
}

} // namespace

long plane_enumeration_cap() {
    static const long cap = env_cap(8);
    return cap;
}

long noncrossing_enumeration_cap() {
    static const long cap = env_cap(7);
    return cap;
}

void for_each_kplane(int k, int n, const std::function<void(const PlaneTree&)>& visit) {
    check_plane_args(k, n);
    std::vector<PlaneTree> acc;
    for (int root = 1; root <= k; ++root) {
        gen_tree(k, n, root, acc, [&] { visit(acc.back()); });
    }
}

std::vector<PlaneTree> enumerate_kplane(int k, int n) {
    std::vector<PlaneTree> out;
    for_each_kplane(k, n, [&](const PlaneTree& t) { out.push_back(t); });
    std::sort(out.begin(), out.end(), tree_less);
    return out;
}

void for_each_knoncrossing(int k, int n,
                           const std::function<void(const NoncrossingTree&)>& visit) {
    check_noncrossing_args(k, n);
    for (const auto& edges : noncrossing_shapes(n)) {
        NoncrossingTree tree;
        tree.n = n;
        tree.edges = edges;
        // The crossing test and orientation depend only on the shape, so the
        // per-labelling check reduces to the sum rule on ascending edges.
        auto oriented = rooted_orientation(tree);
        std::vector<std::pair<int, int>> checked;
        for (auto [parent, child] : oriented)
            if (parent < child) checked.emplace_back(parent, child);
        tree.labels.assign(static_cast<std::size_t>(n), 1);
        while (true) {
            bool ok = true;
            for (auto [a, b] : checked) {
                if (tree.labels[static_cast<std::size_t>(a) - 1] +
                        tree.labels[static_cast<std::size_t>(b) - 1] >
                    k + 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) visit(tree);
            std::size_t pos = tree.labels.size();
            while (pos > 0 && tree.labels[pos - 1] == k) {
                tree.labels[pos - 1] = 1;
                --pos;
            }
            if (pos == 0) break;
            tree.labels[pos - 1] += 1;
        }
    }
}

std::vector<NoncrossingTree> enumerate_knoncrossing(int k, int n) {
    std::vector<NoncrossingTree> out;
    for_each_knoncrossing(k, n, [&](const NoncrossingTree& t) { out.push_back(t); });
    return out;
}

RefinedCounts count_refined(const std::vector<PlaneTree>& trees, int k) {
    RefinedCounts counts;
    for (const auto& t : trees) counts[{t.label, histogram(t, k)}] += 1;
    return counts;
}

RefinedCounts count_refined(const std::vector<NoncrossingTree>& trees, int k) {
    RefinedCounts counts;
    for (const auto& t : trees) counts[{t.labels.at(0), histogram(t, k)}] += 1;
    return counts;
}

RefinedCounts count_refined_plane(int k, int n) {
    RefinedCounts counts;
    for_each_kplane(k, n, [&](const PlaneTree& t) { counts[{t.label, histogram(t, k)}] += 1; });
    return counts;
}

RefinedCounts count_refined_noncrossing(int k, int n) {
    RefinedCounts counts;
    for_each_knoncrossing(
        k, n, [&](const NoncrossingTree& t) { counts[{t.labels.at(0), histogram(t, k)}] += 1; });
    return counts;
}

namespace {

// Independence polynomial of a rooted subtree, as coefficient vectors by
// subset size: first = root excluded, second = root included.
std::pair<std::vector<Integer>, std::vector<Integer>> independence_split(const PlaneTree& tree) {
    std::vector<Integer> excluded{1};
    std::vector<Integer> included{0, 1};
    for (const auto& child : tree.children) {
        auto [cex, cin] = independence_split(child);
        std::vector<Integer> cany(std::max(cex.size(), cin.size()), 0);
        for (std::size_t i = 0; i < cex.size(); ++i) cany[i] += cex[i];
        for (std::size_t i = 0; i < cin.size(); ++i) cany[i] += cin[i];
        auto convolve = [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
            std::vector<Integer> out(a.size() + b.size() - 1, 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
            return out;
        };
        excluded = convolve(excluded, cany);
        included = convolve(included, cex);
    }
    return {excluded, included};
}

} // namespace

std::map<long, Integer> independent_set_profile(int n) {
    check_plane_args(1, n);
    std::map<long, Integer> profile;
    for_each_kplane(1, n, [&](const PlaneTree& t) {
        auto [excluded, included] = independence_split(t);
        for (std::size_t j = 0; j < excluded.size() || j < included.size(); ++j) {
            Integer total = 0;
            if (j < excluded.size()) total += excluded[j];
            if (j < included.size()) total += included[j];
            if (total != 0) profile[static_cast<long>(j)] += total;
        }
    });
    return profile;
}

} // namespace ktrees
