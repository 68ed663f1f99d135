#include "ktrees/formulas.hpp"

#include <string>
#include <vector>

namespace ktrees {

namespace {

void check_composition(const LabelComposition& comp) {
    if (comp.k < 1) throw InvalidParams("composition: k must be >= 1");
    if (static_cast<int>(comp.counts.size()) != comp.k)
        throw InvalidParams("composition: expected " + std::to_string(comp.k) + " counts");
    for (long c : comp.counts)
        if (c < 0) throw InvalidParams("composition: counts must be nonnegative");
    if (comp.n() < 1) throw InvalidParams("composition: n must be >= 1");
}

void check_root(int h, int k) {
    if (h < 1 || h > k) throw InvalidParams("root label must lie in [1, k]");
}

// head(r) = l_1 + ... + l_r and tail(r) = l_{k+1-r} + ... + l_k, the running
// sums the product formulas are phrased in.  head(0) = tail(0) = 0.
struct EdgeSums {
    std::vector<long> head, tail;

    explicit EdgeSums(const LabelComposition& comp) {
        const int k = comp.k;
        head.assign(static_cast<std::size_t>(k) + 1, 0);
        tail.assign(static_cast<std::size_t>(k) + 1, 0);
        for (int r = 1; r <= k; ++r) {
            head[static_cast<std::size_t>(r)] =
                head[static_cast<std::size_t>(r) - 1] + comp.at(r);
            tail[static_cast<std::size_t>(r)] =
                tail[static_cast<std::size_t>(r) - 1] + comp.at(k + 1 - r);
        }
    }

    long ht(int r) const {
        return head[static_cast<std::size_t>(r)] + tail[static_cast<std::size_t>(r)];
    }
};

} // namespace

Integer thm1_root(int h, const LabelComposition& comp) {
    check_composition(comp);
    check_root(h, comp.k);
    const int k = comp.k;
    const long n = comp.n();
    if (n == 1) return comp.at(h) == 1 ? 1 : 0;
    if (comp.at(h) == 0) return 0;

    const int half_up = (k + 1) / 2;
    const int half_down = k / 2;
    const EdgeSums s(comp);
    Integer product = 1;
    Integer denominator;
    if (h <= half_up) {
        denominator = Integer(n) * (2 * n - 1);
        for (int r = 1; r <= half_up; ++r)
            product *= binom(2 * n - 1 - s.ht(r - 1), comp.at(r));
        for (int r = 1; r <= h - 1; ++r) product *= binom(s.ht(r) - 1, comp.at(k + 1 - r));
        for (int r = h; r <= half_down; ++r) product *= binom(s.ht(r), comp.at(k + 1 - r));
    } else {
        denominator = Integer(n - 1) * (2 * n - 1);
        for (int r = 1; r <= k + 1 - h; ++r)
            product *= binom(2 * n - 1 - s.ht(r - 1), comp.at(r));
        for (int r = k + 2 - h; r <= half_up; ++r)
            product *= binom(2 * n - 2 - s.ht(r - 1), comp.at(r));
        for (int r = 1; r <= half_down; ++r) product *= binom(s.ht(r) - 1, comp.at(k + 1 - r));
    }
    return exact_div(comp.at(h) * product, denominator);
}

Integer thm1_total(const LabelComposition& comp) {
    check_composition(comp);
    const int k = comp.k;
    const long n = comp.n();
    if (n == 1) return 1;

    const EdgeSums s(comp);
    Integer product = 1;
    for (int r = 1; r <= (k + 1) / 2; ++r)
        product *= binom(2 * n - 2 - s.ht(r - 1), comp.at(r));
    for (int r = 1; r <= k / 2; ++r) product *= binom(s.ht(r) - 1, comp.at(k + 1 - r));
    return exact_div(product, n - 1);
}

Integer thm2_root(int h, const LabelComposition& comp) {
    check_composition(comp);
    check_root(h, comp.k);
    const int k = comp.k;
    const long n = comp.n();
    if (n == 1) return comp.at(h) == 1 ? 1 : 0;
    if (comp.at(h) == 0) return 0;

    const int half_up = (k + 1) / 2;
    const int half_down = k / 2;
    const EdgeSums s(comp);
    Rational part1, part2;
    if (h <= half_up) {
        Integer p1 = 2 * comp.at(h);
        for (int r = 1; r <= half_up; ++r) p1 *= binom(3 * n - 2 - s.ht(r - 1), comp.at(r));
        for (int r = 1; r <= h - 1; ++r) p1 *= binom(n - 2 + s.ht(r), comp.at(k + 1 - r));
        for (int r = h; r <= half_down; ++r) p1 *= binom(n - 1 + s.ht(r), comp.at(k + 1 - r));
        part1 = Rational(p1, Integer(2 * n - 1) * (4 * n - 3));

        Integer p2 = comp.at(h);
        for (int r = 1; r <= half_down; ++r) p2 *= binom(n - 1 + s.ht(r), comp.at(k + 1 - r));
        for (int r = 1; r <= h - 1; ++r) p2 *= binom(3 * n - 3 - s.ht(r - 1), comp.at(r));
        for (int r = h; r <= half_up; ++r) p2 *= binom(3 * n - 2 - s.ht(r - 1), comp.at(r));
        part2 = Rational(p2, Integer(4 * n - 3) * (3 * n - 2 - s.ht(h - 1)));
    } else {
        Integer p1 = comp.at(h);
        for (int r = 1; r <= half_down; ++r) p1 *= binom(n - 2 + s.ht(r), comp.at(k + 1 - r));
        for (int r = 1; r <= k + 1 - h; ++r) p1 *= binom(3 * n - 2 - s.ht(r - 1), comp.at(r));
        for (int r = k + 2 - h; r <= half_up; ++r)
            p1 *= binom(3 * n - 3 - s.ht(r - 1), comp.at(r));
        part1 = Rational(p1, Integer(n - 1) * (4 * n - 3));

        Integer p2 = comp.at(h);
        for (int r = 1; r <= half_up; ++r) p2 *= binom(3 * n - 3 - s.ht(r - 1), comp.at(r));
        for (int r = 1; r <= k + 1 - h; ++r) p2 *= binom(n - 1 + s.ht(r), comp.at(k + 1 - r));
        for (int r = k + 2 - h; r <= half_down; ++r)
            p2 *= binom(n - 2 + s.ht(r), comp.at(k + 1 - r));
        part2 = Rational(p2, Integer(4 * n - 3) * (n - 1 + s.ht(k + 1 - h)));
    }
    return to_integer(part1 - part2);
}

Integer thm2_total(const LabelComposition& comp) {
    check_composition(comp);
    const int k = comp.k;
    const long n = comp.n();
    if (n == 1) return 1;

    const EdgeSums s(comp);
    Integer p1 = 1, p2 = 1;
    for (int r = 1; r <= (k + 1) / 2; ++r) {
        p1 *= binom(3 * n - 3 - s.ht(r - 1), comp.at(r));
        p2 *= binom(3 * n - 2 - s.ht(r - 1), comp.at(r));
    }
    for (int r = 1; r <= k / 2; ++r) {
        p1 *= binom(n - 2 + s.ht(r), comp.at(k + 1 - r));
        p2 *= binom(n - 1 + s.ht(r), comp.at(k + 1 - r));
    }
    return to_integer(Rational(p1, n - 1) - Rational(p2, 2 * n - 1));
}

namespace {

void check_kn(int k, long n) {
    if (k < 1) throw InvalidParams("k must be >= 1");
    if (n < 1) throw InvalidParams("n must be >= 1");
}

} // namespace

Integer total_plane(int k, long n) {
    check_kn(k, n);
    if (n == 1) return k;
    return exact_div(Integer(k) * binom(Integer(k + 1) * (n - 1), n - 1), n);
}

Integer root_plane(int k, long n, int h) {
    check_kn(k, n);
    check_root(h, k);
    if (n == 1) return 1;
    return exact_div(Integer(k + 1 - h) * binom(Integer(k + 1) * n - h - 1, n - 1),
                     Integer(k) * n - h + 1);
}

Integer total_nc(int k, long n) {
    check_kn(k, n);
    if (n == 1) return k;
    Rational value = Rational(binom(Integer(2 * k + 1) * (n - 1), n), n - 1) -
                     Rational(binom(Integer(2 * k + 1) * n - k - 1, n), 2 * n - 1);
    return to_integer(value);
}

Integer root_nc(int k, long n, int h) {
    check_kn(k, n);
    check_root(h, k);
    if (n == 1) return 1;
    return exact_div(Integer(k + 1 - h) * binom(Integer(2 * k + 1) * n - k - h - 1, n - 1),
                     Integer(2 * k) * n - k - h + 1);
}

Integer single_label_plane(int k, long n, int h, long ell) {
    check_kn(k, n);
    check_root(h, k);
    if (ell < 0 || ell > n) throw InvalidParams("label count must lie in [0, n]");
    if (n == 1) return ell == 1 ? 1 : (ell == 0 ? Integer(k - 1) : 0);
    Integer sum = 0;
    if (h <= (k + 1) / 2) {
        for (long r = 0; r <= n - ell; ++r)
            sum += binom(Integer(2) * (h - 1) * (n - 1) + r - 1, r) *
                   binom(2 * (n - 1) - r, ell) *
                   binom(Integer(k + 1 - 2 * h) * (n - 1), n - r - ell);
    } else {
        for (long r = 0; r <= n - ell; ++r)
            sum += binom(Integer(2) * (k + 1 - h) * (n - 1), r) * binom(r + ell - 1, ell) *
                   binom(Integer(2 * h - k - 1) * (n - 1) - r - ell, n - r - ell);
    }
    return exact_div(sum, n - 1);
}

Integer single_label_nc_formula(int k, long n, int h, long ell) {
    check_kn(k, n);
    check_root(h, k);
    if (ell < 0 || ell > n) throw InvalidParams("label count must lie in [0, n]");
    if (h > (k + 1) / 2)
        throw UnsupportedBranch("single-label noncrossing closed form is only "
                                "trusted for h <= ceil(k/2)");
    if (n == 1) return ell == 1 ? 1 : (ell == 0 ? Integer(k - 1) : 0);
    Rational sum1 = 0, sum2 = 0;
    for (long r = 0; r <= n - ell; ++r) {
        sum1 += Rational(binom(Integer(4) * (h - 1) * (n - 1) + r - 1, r) *
                             binom(3 * n - 3 - r, ell) *
                             binom(Integer(2) * (k + 1 - 2 * h) * (n - 1), n - r - ell),
                         n - 1);
        sum2 += Rational(binom(Integer(2) * (h - 1) * (2 * n - 1) + r - 1, r) *
                             binom(3 * n - 2 - r, ell) *
                             binom(Integer(k + 1 - 2 * h) * (2 * n - 1), n - r - ell),
                         2 * n - 1);
    }
    return to_integer(sum1 - sum2);
}

Integer single_label_nc(int k, long n, int h, long ell) {
    check_kn(k, n);
    check_root(h, k);
    if (ell < 0 || ell > n) throw InvalidParams("label count must lie in [0, n]");
    if (h <= (k + 1) / 2) return single_label_nc_formula(k, n, h, ell);
    // No trusted closed form on this branch: sum the refined counts instead.
    Integer sum = 0;
    for_each_composition(k, n, [&](const LabelComposition& comp) {
        if (comp.at(h) == ell) sum += thm2_total(comp);
    });
    return sum;
}

Rational avg_plane(int k, long n, int h) {
    check_kn(k, n);
    check_root(h, k);
    if (n < 2) throw InvalidParams("averages require n >= 2");
    return Rational(Integer(2) * (k + 1 - h) * n, Integer(k) * (k + 1));
}

Rational avg_nc(int k, long n, int h) {
    check_kn(k, n);
    check_root(h, k);
    if (n < 2) throw InvalidParams("averages require n >= 2");
    Rational ratio(rising_factorial(2 * k * n + n - 2 * k, k),
                   rising_factorial(2 * k * n + 1 - 2 * k, k));
    Rational inner = Rational(3 * n - 2) - Rational(Integer(2) * (h - 1) * (n - 1), k) +
                     Rational(2 * (k + 1 - 2 * h)) / (Rational(2 * k + 1) * (2 - ratio));
    return Rational(n, Integer(2 * k + 1) * n - (k + 1)) * inner;
}

void for_each_composition(int k, long n,
                          const std::function<void(const LabelComposition&)>& visit) {
    if (k < 1 || n < 0) throw InvalidParams("compositions require k >= 1 and n >= 0");
    LabelComposition comp(k, std::vector<long>(static_cast<std::size_t>(k), 0));
    std::function<void(int, long)> recurse = [&](int index, long remaining) {
        if (index == k) {
            comp.counts[static_cast<std::size_t>(k) - 1] = remaining;
            visit(comp);
            return;
        }
        for (long c = 0; c <= remaining; ++c) {
            comp.counts[static_cast<std::size_t>(index) - 1] = c;
            recurse(index + 1, remaining - c);
        }
    };
    recurse(1, n);
}

MomentTable moment_table_plane_k3(long n) {
    if (n < 2) throw InvalidParams("moment table requires n >= 2");
    MomentTable table;
    table.k = 3;
    table.n = n;
    for (int h = 1; h <= 3; ++h) table.means[h] = avg_plane(3, n, h);

    const Integer N = n;
    auto set_cov = [&](int i, int j, Rational v) {
        table.covariances[{i, j}] = v;
        table.covariances[{j, i}] = v;
    };
    set_cov(1, 1, Rational(N * (3 * N - 4), 4 * (4 * N - 5)));
    set_cov(1, 2, Rational(-N, 6));
    set_cov(1, 3, Rational(-N * (N - 2), 12 * (4 * N - 5)));
    set_cov(2, 2, Rational(2 * N * (4 * N - 3), 9 * (3 * N - 2)));
    set_cov(2, 3, Rational(-N * (7 * N - 6), 18 * (3 * N - 2)));
    set_cov(3, 3, Rational(N * (5 * N - 4) * (13 * N - 18), 36 * (3 * N - 2) * (4 * N - 5)));

    table.means_by_root[{1, 1}] = Rational(N * N, 2 * N - 1);
    table.means_by_root[{1, 2}] = Rational(N - 1, 3);
    table.means_by_root[{1, 3}] = Rational((N - 1) * (N + 1), 3 * (2 * N - 1));
    table.means_by_root[{2, 1}] = Rational(N - 1, 2);
    table.means_by_root[{2, 2}] = Rational(N * N + 3 * N - 1, 3 * N);
    table.means_by_root[{2, 3}] = Rational((N - 2) * (N - 1), 6 * N);
    table.means_by_root[{3, 1}] = Rational(N, 2);
    table.means_by_root[{3, 2}] = Rational((N - 2) * (N - 1), 3 * N - 1);
    table.means_by_root[{3, 3}] = Rational(N * N + 5 * N - 4, 2 * (3 * N - 1));
    return table;
}

MomentTable moment_table_nc_k2(long n) {
    if (n < 2) throw InvalidParams("moment table requires n >= 2");
    MomentTable table;
    table.k = 2;
    table.n = n;
    for (int h = 1; h <= 2; ++h) table.means[h] = avg_nc(2, n, h);

    const Integer N = n;
    const Rational v(3 * (2 * N - 1) * (4 * N - 3) * (49 * N * N - 100 * N + 44),
                     25 * (5 * N - 6) * (7 * N - 5) * (7 * N - 5));
    table.covariances[{1, 1}] = v;
    table.covariances[{2, 2}] = v;
    table.covariances[{1, 2}] = -v;
    table.covariances[{2, 1}] = -v;

    table.means_by_root[{1, 1}] = Rational(3 * N * N - N - 1, 5 * N - 4);
    table.means_by_root[{1, 2}] = Rational(2 * N * N - 3 * N + 1, 5 * N - 4);
    table.means_by_root[{2, 1}] = Rational(3 * N - 1, 5);
    table.means_by_root[{2, 2}] = Rational(2 * N + 1, 5);
    return table;
}

MomentTable moments_by_summation(Family family, int k, long n) {
    check_kn(k, n);
    if (n < 2) throw InvalidParams("moments require n >= 2");
    auto refined_root = family == Family::plane ? thm1_root : thm2_root;

    MomentTable table;
    table.k = k;
    table.n = n;

    Integer total = 0;
    std::vector<Integer> root_total(static_cast<std::size_t>(k) + 1, 0);
    std::vector<Integer> label_sum(static_cast<std::size_t>(k) + 1, 0);
    std::vector<std::vector<Integer>> pair_sum(
        static_cast<std::size_t>(k) + 1,
        std::vector<Integer>(static_cast<std::size_t>(k) + 1, 0));
    std::vector<std::vector<Integer>> root_label_sum = pair_sum;

    for_each_composition(k, n, [&](const LabelComposition& comp) {
        for (int h = 1; h <= k; ++h) {
            Integer by_root = refined_root(h, comp);
            if (by_root == 0) continue;
            total += by_root;
            root_total[static_cast<std::size_t>(h)] += by_root;
            for (int i = 1; i <= k; ++i)
                root_label_sum[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)] +=
                    by_root * comp.at(i);
            for (int i = 1; i <= k; ++i) {
                label_sum[static_cast<std::size_t>(i)] += by_root * comp.at(i);
                for (int j = i; j <= k; ++j)
                    pair_sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        by_root * comp.at(i) * comp.at(j);
            }
        }
    });
    if (total == 0) throw InconsistencyError("moments: empty family");

    for (int i = 1; i <= k; ++i)
        table.means[i] = Rational(label_sum[static_cast<std::size_t>(i)], total);
    for (int i = 1; i <= k; ++i) {
        for (int j = i; j <= k; ++j) {
            Rational mixed(pair_sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                           total);
            Rational cov = mixed - table.means[i] * table.means[j];
            table.covariances[{i, j}] = cov;
            table.covariances[{j, i}] = cov;
        }
    }
    for (int h = 1; h <= k; ++h) {
        if (root_total[static_cast<std::size_t>(h)] == 0) continue;
        for (int i = 1; i <= k; ++i)
            table.means_by_root[{h, i}] =
                Rational(root_label_sum[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)],
                         root_total[static_cast<std::size_t>(h)]);
    }
    return table;
}

} // namespace ktrees
