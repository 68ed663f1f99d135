#pragma once

#include <functional>
#include <map>
#include <utility>

#include "ktrees/exact.hpp"
#include "ktrees/trees.hpp"

namespace ktrees {

// Closed-form refined counts.  The n = 1 case is handled directly (the
// single-vertex tree with label h exists for every h): the product formulas
// below require n >= 2.

// Number of k-plane trees with root label h and label histogram comp.
Integer thm1_root(int h, const LabelComposition& comp);
// Total over all root labels.
Integer thm1_total(const LabelComposition& comp);

// Same pair for k-noncrossing trees.  Intermediate values are rational (the
// two parts of the difference are individually non-integral); the final
// count is asserted integral.
Integer thm2_root(int h, const LabelComposition& comp);
Integer thm2_total(const LabelComposition& comp);

// Counts aggregated over all histograms.
Integer total_plane(int k, long n);
Integer root_plane(int k, long n, int h);
Integer total_nc(int k, long n);
Integer root_nc(int k, long n, int h);

// Number of trees with n vertices of which exactly ell carry label h.
Integer single_label_plane(int k, long n, int h, long ell);
// The printed closed form covers h <= ceil(k/2); the other branch is
// computed by summation over thm2_total (see single_label_nc_formula).
Integer single_label_nc(int k, long n, int h, long ell);
// Direct evaluation of the printed displays; throws UnsupportedBranch for
// h > ceil(k/2), where the printed binomial top is self-cancelling as
// published and cannot be trusted.
Integer single_label_nc_formula(int k, long n, int h, long ell);

// Mean number of vertices labelled h.
Rational avg_plane(int k, long n, int h);
Rational avg_nc(int k, long n, int h);

// Means, (co)variances and root-conditioned means of the label counts.
// covariances[(i,i)] is a variance; means_by_root[(h,i)] is the mean count
// of label i among trees whose root is labelled h.
struct MomentTable {
    int k = 0;
    long n = 0;
    std::map<int, Rational> means;
    std::map<std::pair<int, int>, Rational> covariances;
    std::map<std::pair<int, int>, Rational> means_by_root;
};

// The printed k=3 plane and k=2 noncrossing tables.
MomentTable moment_table_plane_k3(long n);
MomentTable moment_table_nc_k2(long n);

// Cross-check partner: the same moments computed by exact summation of the
// refined counts over every label composition of n.
MomentTable moments_by_summation(Family family, int k, long n);

// Visits every tuple (l_1..l_k) of nonnegative integers summing to n, in
// lexicographic order.
void for_each_composition(int k, long n,
                          const std::function<void(const LabelComposition&)>& visit);

} // namespace ktrees
