#include "ktrees/sampler.hpp"

#include <random>
#include <span>
#include <string>

#include "ktrees/formulas.hpp"

namespace ktrees {

CountCache::CountCache(int k) : k_(k) {
    if (k < 1) throw InvalidParams("CountCache: k must be >= 1");
    forests_.assign(static_cast<std::size_t>(k), {});
    for (auto& row : forests_) row.push_back(1); // forests(r, 0) = 1
    filled_ = 0;
}

void CountCache::fill_to(long m) {
    for (long size = filled_ + 1; size <= m; ++size) {
        for (int r = 1; r <= k_; ++r) {
            Integer total = 0;
            for (long j = 1; j <= size; ++j) {
                for (int t = 1; t <= k_ + 1 - r; ++t) {
                    // trees(t, j) = forests(t, j-1)
                    total += forests_[static_cast<std::size_t>(t) - 1]
                                     [static_cast<std::size_t>(j) - 1] *
                             forests_[static_cast<std::size_t>(r) - 1]
                                     [static_cast<std::size_t>(size - j)];
                }
            }
            forests_[static_cast<std::size_t>(r) - 1].push_back(std::move(total));
        }
        filled_ = size;
    }
}

const Integer& CountCache::forests(int root, long m) {
    if (root < 1 || root > k_ || m < 0) throw InvalidParams("CountCache: bad query");
    if (m > filled_) fill_to(m);
    return forests_[static_cast<std::size_t>(root) - 1][static_cast<std::size_t>(m)];
}

const Integer& CountCache::trees(int root, long m) {
    if (m < 1) throw InvalidParams("CountCache: tree size must be >= 1");
    return forests(root, m - 1);
}

Integer rank_space(int k, long n) { return total_plane(k, n); }

namespace {

std::vector<PlaneTree> unrank_forest(CountCache& cache, int parent, long m, Integer index) {
    if (m == 0) {
        if (index != 0) throw IndexOutOfRange("unrank: forest index out of range");
        return {};
    }
    const int k = cache.k();
    for (long j = 1; j <= m; ++j) {
        for (int t = 1; t <= k + 1 - parent; ++t) {
            const Integer rest_count = cache.forests(parent, m - j);
            Integer block = cache.trees(t, j) * rest_count;
            if (index < block) {
                Integer first_rank = index / rest_count;
                Integer rest_rank = index % rest_count;
                std::vector<PlaneTree> forest;
                forest.push_back(
                    PlaneTree{t, unrank_forest(cache, t, j - 1, std::move(first_rank))});
                for (auto& tree : unrank_forest(cache, parent, m - j, std::move(rest_rank)))
                    forest.push_back(std::move(tree));
                return forest;
            }
            index -= block;
        }
    }
    throw IndexOutOfRange("unrank: forest index out of range");
}

Integer rank_forest(CountCache& cache, int parent, std::span<const PlaneTree> forest, long m) {
    if (forest.empty()) {
        if (m != 0) throw InvalidParams("rank: branch sizes disagree with total");
        return 0;
    }
    const int k = cache.k();
    const PlaneTree& first = forest.front();
    const long j = first.size();
    Integer index = 0;
    for (long jj = 1; jj < j; ++jj)
        for (int t = 1; t <= k + 1 - parent; ++t)
            index += cache.trees(t, jj) * cache.forests(parent, m - jj);
    for (int t = 1; t < first.label; ++t) index += cache.trees(t, j) * cache.forests(parent, m - j);
    Integer first_rank =
        rank_forest(cache, first.label, std::span<const PlaneTree>(first.children), j - 1);
    index += first_rank * cache.forests(parent, m - j);
    index += rank_forest(cache, parent, forest.subspan(1), m - j);
    return index;
}

} // namespace

PlaneTree unrank(CountCache& cache, long n, const Integer& index) {
    if (n < 1) throw InvalidParams("unrank: n must be >= 1");
    if (index < 0) throw IndexOutOfRange("unrank: negative index");
    Integer rest = index;
    for (int r = 1; r <= cache.k(); ++r) {
        const Integer& count = cache.trees(r, n);
        if (rest < count) return PlaneTree{r, unrank_forest(cache, r, n - 1, std::move(rest))};
        rest -= count;
    }
    throw IndexOutOfRange("unrank: index " + index.str() + " out of range");
}

PlaneTree unrank(int k, long n, const Integer& index) {
    CountCache cache(k);
    return unrank(cache, n, index);
}

Integer rank(CountCache& cache, const PlaneTree& tree) {
    if (!validate_plane(tree, cache.k())) throw InvalidParams("rank: invalid tree");
    const long n = tree.size();
    Integer index = 0;
    for (int r = 1; r < tree.label; ++r) index += cache.trees(r, n);
    index += rank_forest(cache, tree.label, std::span<const PlaneTree>(tree.children), n - 1);
    return index;
}

Integer rank(int k, const PlaneTree& tree) {
    CountCache cache(k);
    return rank(cache, tree);
}

namespace {

// Uniform draw from [0, bound) by rejection on fixed-width bit blocks.
Integer draw_below(std::mt19937_64& engine, const Integer& bound) {
    if (bound <= 0) throw InvalidParams("draw_below: empty range");
    if (bound == 1) return 0;
    const unsigned bits = boost::multiprecision::msb(bound - 1) + 1;
    const unsigned words = (bits + 63) / 64;
    while (true) {
        Integer value = 0;
        for (unsigned w = 0; w < words; ++w) value = (value << 64) | Integer(engine());
        value >>= words * 64 - bits;
        if (value < bound) return value;
    }
}

} // namespace

PlaneTree sample_uniform(int k, long n, std::uint64_t seed) {
    return sample_many(k, n, seed, 1).front();
}

std::vector<PlaneTree> sample_many(int k, long n, std::uint64_t seed, long count) {
    if (count < 0) throw InvalidParams("sample: count must be >= 0");
    CountCache cache(k);
    Integer span = 0;
    for (int r = 1; r <= k; ++r) span += cache.trees(r, n);
    std::mt19937_64 engine(seed);
    std::vector<PlaneTree> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(unrank(cache, n, draw_below(engine, span)));
    return out;
}

} // namespace ktrees
