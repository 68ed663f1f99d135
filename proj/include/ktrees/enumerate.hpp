#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ktrees/exact.hpp"
#include "ktrees/trees.hpp"

namespace ktrees {

// Brute-force generation of both tree families at small n.  These are the
// independent oracles: every closed form and series coefficient is tested
// against them.

// Soft caps on n, raised (never lowered) by the KTREES_ORACLE_CAP env var.
long plane_enumeration_cap();
long noncrossing_enumeration_cap();

// Streams every k-plane tree with n vertices exactly once.  Visit order:
// root label ascending, then first-branch size ascending, then first-branch
// root label ascending, then recursively — the same total order the sampler
// ranks against.
void for_each_kplane(int k, int n, const std::function<void(const PlaneTree&)>& visit);

// Materialized enumeration, sorted root-label-ascending then
// child-sequence-lexicographic (tree_less).  Intended for small n.
std::vector<PlaneTree> enumerate_kplane(int k, int n);

// Streams every valid k-noncrossing tree on v_1..v_n exactly once: all
// labelled trees via Prüfer sequences, filtered to noncrossing edge sets
// (sorted lexicographically), then filtered label assignments in
// lexicographic order.
void for_each_knoncrossing(int k, int n,
                           const std::function<void(const NoncrossingTree&)>& visit);
std::vector<NoncrossingTree> enumerate_knoncrossing(int k, int n);

// Exact occurrence counts keyed by (root label, label histogram).
using RefinedKey = std::pair<int, LabelComposition>;
using RefinedCounts = std::map<RefinedKey, Integer>;

RefinedCounts count_refined(const std::vector<PlaneTree>& trees, int k);
RefinedCounts count_refined(const std::vector<NoncrossingTree>& trees, int k);

// Streaming tallies that never materialize the enumeration.
RefinedCounts count_refined_plane(int k, int n);
RefinedCounts count_refined_noncrossing(int k, int n);

// Over all plane trees with n vertices, counts pairs (tree, independent
// vertex subset of size j).  Matches the number of 2-plane trees with
// exactly j vertices labelled 2.
std::map<long, Integer> independent_set_profile(int n);

} // namespace ktrees
