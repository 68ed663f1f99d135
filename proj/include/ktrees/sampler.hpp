#pragma once

#include <cstdint>
#include <vector>

#include "ktrees/exact.hpp"
#include "ktrees/trees.hpp"

namespace ktrees {

// Memoized counts for the root-label decomposition of k-plane trees:
// trees(r, m) counts trees with m vertices and root label r; forests(r, m)
// counts branch sequences with total size m whose root labels lie in
// [k+1-r].  trees(r, m) = forests(r, m-1), and trees(r, m) equals
// root_plane(k, m, r).
class CountCache {
public:
    explicit CountCache(int k);
    int k() const { return k_; }
    const Integer& trees(int root, long m);
    const Integer& forests(int root, long m);

private:
    void fill_to(long m);
    int k_;
    long filled_ = 0;
    // forests_[r-1][m] = forests(r, m); trees derive from it
    std::vector<std::vector<Integer>> forests_;
};

// Size of the unranking index range: total_plane(k, n).
Integer rank_space(int k, long n);

// Bijection between [0, rank_space) and the k-plane trees with n vertices.
// Order: root label ascending; then first-branch size ascending; then
// first-branch root label ascending; then recursive rank of the first
// branch; then rank of the remaining branch sequence.
PlaneTree unrank(int k, long n, const Integer& index);
PlaneTree unrank(CountCache& cache, long n, const Integer& index);

// Inverse traversal of the same order.
Integer rank(int k, const PlaneTree& tree);
Integer rank(CountCache& cache, const PlaneTree& tree);

// Exactly uniform: a seeded 64-bit PRNG feeds fixed-width blocks into a
// rejection loop for the index draw, then unrank maps it to the tree.
PlaneTree sample_uniform(int k, long n, std::uint64_t seed);
// `count` successive draws from one seeded stream.
std::vector<PlaneTree> sample_many(int k, long n, std::uint64_t seed, long count);

} // namespace ktrees
