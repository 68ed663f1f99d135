#include "ktrees/series.hpp"

#include <algorithm>
#include <string>

namespace ktrees {

Poly Poly::constant(int vars, const Integer& c) {
    Poly p(vars);
    p.add_term(std::vector<int>(static_cast<std::size_t>(vars), 0), c);
    return p;
}

Poly Poly::variable(int vars, int index) {
    if (index < 1 || index > vars) throw InvalidParams("variable index out of range");
    Poly p(vars);
    std::vector<int> expo(static_cast<std::size_t>(vars), 0);
    expo[static_cast<std::size_t>(index) - 1] = 1;
    p.add_term(expo, 1);
    return p;
}

Integer Poly::coeff(const std::vector<int>& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Integer(0) : it->second;
}

void Poly::add_term(const std::vector<int>& exponents, const Integer& c) {
    if (static_cast<int>(exponents.size()) != vars_)
        throw InvalidParams("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exponents, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(vars_);
    for (const auto& [expo, c] : terms_) out.terms_.emplace(expo, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& other) {
    for (const auto& [expo, c] : other.terms_) add_term(expo, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    for (const auto& [expo, c] : other.terms_) add_term(expo, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.vars_);
    if (a.vars_ != b.vars_) throw InvalidParams("polynomial variable count mismatch");
    std::vector<int> expo(static_cast<std::size_t>(a.vars_), 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < expo.size(); ++i) expo[i] = ea[i] + eb[i];
            out.add_term(expo, ca * cb);
        }
    }
    return out;
}

Poly Poly::divided_by_variable(int index) const {
    if (index < 1 || index > vars_) throw InvalidParams("variable index out of range");
    Poly out(vars_);
    for (const auto& [expo, c] : terms_) {
        if (expo[static_cast<std::size_t>(index) - 1] < 1)
            throw NonExactDivision("polynomial term lacks variable x" + std::to_string(index));
        std::vector<int> reduced = expo;
        reduced[static_cast<std::size_t>(index) - 1] -= 1;
        out.terms_.emplace(std::move(reduced), c);
    }
    return out;
}

Integer Poly::eval_ones() const {
    Integer sum = 0;
    for (const auto& [expo, c] : terms_) sum += c;
    return sum;
}

MultiSeries::MultiSeries(int vars, int order) : vars_(vars), order_(order) {
    if (vars < 1 || order < 0) throw InvalidParams("series needs vars >= 1 and order >= 0");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, Poly(vars));
}

MultiSeries MultiSeries::constant(int vars, int order, const Integer& c) {
    MultiSeries s(vars, order);
    s.coeffs_[0] = Poly::constant(vars, c);
    return s;
}

MultiSeries MultiSeries::z(int vars, int order) {
    MultiSeries s(vars, order);
    if (order >= 1) s.coeffs_[1] = Poly::constant(vars, 1);
    return s;
}

MultiSeries MultiSeries::monomial(const Poly& c, int power, int order) {
    MultiSeries s(c.vars(), order);
    if (power < 0) throw InvalidParams("monomial power must be >= 0");
    if (power <= order) s.coeffs_[static_cast<std::size_t>(power)] = c;
    return s;
}

const Poly& MultiSeries::at(int n) const {
    if (n < 0 || n > order_) throw IndexOutOfRange("series coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(n)];
}

void MultiSeries::set(int n, Poly p) {
    if (n < 0 || n > order_) throw IndexOutOfRange("series coefficient index out of range");
    if (p.vars() != vars_) throw InvalidParams("coefficient variable count mismatch");
    coeffs_[static_cast<std::size_t>(n)] = std::move(p);
}

MultiSeries MultiSeries::operator-() const {
    MultiSeries out(vars_, order_);
    for (int n = 0; n <= order_; ++n) out.coeffs_[static_cast<std::size_t>(n)] = -at(n);
    return out;
}

namespace {

void align_orders(MultiSeries& a, const MultiSeries& b) {
    if (a.vars() != b.vars()) throw InvalidParams("series variable count mismatch");
    if (b.order() < a.order()) a = a.truncated(b.order());
}

} // namespace

MultiSeries& MultiSeries::operator+=(const MultiSeries& other) {
    align_orders(*this, other);
    for (int n = 0; n <= order_; ++n) coeffs_[static_cast<std::size_t>(n)] += other.at(n);
    return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& other) {
    align_orders(*this, other);
    for (int n = 0; n <= order_; ++n) coeffs_[static_cast<std::size_t>(n)] -= other.at(n);
    return *this;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    if (a.vars() != b.vars()) throw InvalidParams("series variable count mismatch");
    MultiSeries out(a.vars(), std::min(a.order(), b.order()));
    for (int n = 0; n <= out.order(); ++n) {
        Poly acc(a.vars());
        for (int i = 0; i <= n; ++i) {
            if (a.at(i).is_zero() || b.at(n - i).is_zero()) continue;
            acc += a.at(i) * b.at(n - i);
        }
        out.set(n, std::move(acc));
    }
    return out;
}

MultiSeries MultiSeries::operator*(const Poly& c) const {
    MultiSeries out(vars_, order_);
    for (int n = 0; n <= order_; ++n) {
        if (!at(n).is_zero()) out.set(n, at(n) * c);
    }
    return out;
}

MultiSeries MultiSeries::times_z(int power) const {
    if (power < 0) throw InvalidParams("times_z power must be >= 0");
    MultiSeries out(vars_, order_ + power);
    for (int n = 0; n <= order_; ++n) out.set(n + power, at(n));
    return out;
}

MultiSeries MultiSeries::truncated(int new_order) const {
    MultiSeries out(vars_, new_order);
    for (int n = 0; n <= std::min(order_, new_order); ++n) out.set(n, at(n));
    return out;
}

MultiSeries MultiSeries::inverse() const {
    const Poly one = Poly::constant(vars_, 1);
    const Poly minus_one = Poly::constant(vars_, -1);
    if (at(0) != one && at(0) != minus_one)
        throw InvalidParams("series inverse requires constant term 1 or -1");
    MultiSeries out(vars_, order_);
    out.set(0, at(0));
    for (int n = 1; n <= order_; ++n) {
        Poly acc(vars_);
        for (int i = 1; i <= n; ++i) {
            if (at(i).is_zero() || out.at(n - i).is_zero()) continue;
            acc += at(i) * out.at(n - i);
        }
        // b_n = -(1/a_0) sum a_i b_{n-i}; 1/a_0 = a_0 for a_0 = +/-1
        out.set(n, -(at(0) * acc));
    }
    return out;
}

MultiSeries MultiSeries::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    MultiSeries out = MultiSeries::constant(vars_, order_, 1);
    for (int i = 0; i < exponent; ++i) out = out * *this;
    return out;
}

MultiSeries MultiSeries::derivative() const {
    MultiSeries out(vars_, std::max(order_ - 1, 0));
    for (int n = 0; n < order_; ++n)
        out.set(n, at(n + 1) * Poly::constant(vars_, n + 1));
    return out;
}

MultiSeries MultiSeries::divided_by_monomial(int index, int var_power) const {
    if (var_power < 0 || var_power > order_)
        throw InvalidParams("divided_by_monomial: bad power");
    for (int n = 0; n < var_power; ++n)
        if (!at(n).is_zero())
            throw NonExactDivision("series valuation too small for monomial division");
    MultiSeries out(vars_, order_ - var_power);
    for (int n = var_power; n <= order_; ++n) {
        if (at(n).is_zero()) continue;
        out.set(n - var_power, at(n).divided_by_variable(index));
    }
    return out;
}

MultiSeries FGPoly::apply(const MultiSeries& s) const {
    return MultiSeries::constant(s.vars(), s.order(), 1) + s * linear;
}

MultiSeries FGPoly::to_series(int order) const {
    MultiSeries s = MultiSeries::constant(k, order, 1);
    if (order >= 1) s.set(1, linear);
    return s;
}

FGPoly fg_poly(int k, int i, FGKind kind) {
    if (k < 1) throw InvalidParams("fg_poly: k must be >= 1");
    const int max_i = kind == FGKind::F ? k + 1 : k;
    if (i < 1 || i > max_i)
        throw InvalidParams("fg_poly: index out of range for this polynomial family");
    const int half_up = (k + 1) / 2;
    const int half_down = k / 2;
    Poly lin(k);
    if (i <= half_up) {
        const int lo = kind == FGKind::F ? i : i + 1;
        for (int j = lo; j <= half_up; ++j) lin += Poly::variable(k, j);
        for (int j = i; j <= half_down; ++j) lin -= Poly::variable(k, k + 1 - j);
    } else {
        // extension beyond the explicit definitions, per the stated recursions
        lin = fg_poly(k, 1, kind).linear;
        for (int j = 1; j <= i - 1; ++j) {
            lin += Poly::variable(k, k + 1 - j);
            lin -= Poly::variable(k, kind == FGKind::F ? j : j + 1);
        }
    }
    return FGPoly{k, std::move(lin)};
}

namespace {

using Step = std::function<std::vector<MultiSeries>(const std::vector<MultiSeries>&)>;

// Runs `order` fixed-point iterations from the zero system (each iteration
// fixes one more z-order), then asserts one extra step changes nothing.
std::vector<MultiSeries> iterate_system(int k, int order, const Step& step) {
    std::vector<MultiSeries> cur(static_cast<std::size_t>(k), MultiSeries(k, order));
    for (int i = 0; i < order; ++i) cur = step(cur);
    if (step(cur) != cur)
        throw InconsistencyError("functional system failed to stabilize after full iteration");
    return cur;
}

} // namespace

std::vector<MultiSeries> solve_plane_system(int k, int order) {
    if (k < 1 || order < 1) throw InvalidParams("solve_plane_system: need k >= 1, order >= 1");
    Step step = [k, order](const std::vector<MultiSeries>& cur) {
        std::vector<MultiSeries> next;
        next.reserve(static_cast<std::size_t>(k));
        for (int r = 1; r <= k; ++r) {
            MultiSeries denom = MultiSeries::constant(k, order, 1);
            for (int t = 1; t <= k + 1 - r; ++t) denom -= cur[static_cast<std::size_t>(t) - 1];
            next.push_back((denom.inverse() * Poly::variable(k, r)).times_z(1).truncated(order));
        }
        return next;
    };
    return iterate_system(k, order, step);
}

std::vector<MultiSeries> solve_nc_system(int k, int order) {
    if (k < 1 || order < 1) throw InvalidParams("solve_nc_system: need k >= 1, order >= 1");
    Step step = [k, order](const std::vector<MultiSeries>& cur) {
        std::vector<MultiSeries> next;
        next.reserve(static_cast<std::size_t>(k));
        for (int r = 1; r <= k; ++r) {
            MultiSeries sum(k, order);
            for (int t = 1; t <= k + 1 - r; ++t) sum += cur[static_cast<std::size_t>(t) - 1];
            // Divide the product, not N_1 alone: the product has valuation 2,
            // so dividing it by x_1 z keeps one extra exact order per pass.
            MultiSeries butterfly = (cur[0] * sum).divided_by_monomial(1, 1);
            MultiSeries denom =
                MultiSeries::constant(k, butterfly.order(), 1) - butterfly;
            next.push_back((denom.inverse() * Poly::variable(k, r)).times_z(1).truncated(order));
        }
        return next;
    };
    return iterate_system(k, order, step);
}

namespace {

std::vector<FGPoly> fg_row(int k, FGKind kind, int upto) {
    std::vector<FGPoly> row;
    for (int i = 1; i <= upto; ++i) row.push_back(fg_poly(k, i, kind));
    return row;
}

} // namespace

MultiSeries solve_A(int k, int order) {
    if (k < 1 || order < 1) throw InvalidParams("solve_A: need k >= 1, order >= 1");
    const auto fs = fg_row(k, FGKind::F, (k + 1) / 2);
    const auto gs = fg_row(k, FGKind::G, k / 2);
    auto step = [&](const MultiSeries& a) {
        MultiSeries prod = MultiSeries::constant(k, order, 1);
        for (const auto& f : fs) prod = prod * f.apply(a).pow(2);
        for (const auto& g : gs) prod = prod * g.apply(a).pow(-2);
        return prod.times_z(1).truncated(order);
    };
    MultiSeries a(k, order);
    for (int i = 0; i < order; ++i) a = step(a);
    if (step(a) != a) throw InconsistencyError("solve_A failed to stabilize");
    return a;
}

MultiSeries solve_B(int k, int order) {
    if (k < 1 || order < 1) throw InvalidParams("solve_B: need k >= 1, order >= 1");
    const auto fs = fg_row(k, FGKind::F, (k + 1) / 2);
    const auto gs = fg_row(k, FGKind::G, k / 2);
    auto step = [&](const MultiSeries& b) {
        MultiSeries prod = fs[0].apply(b).pow(3);
        for (std::size_t i = 1; i < fs.size(); ++i) prod = prod * fs[i].apply(b).pow(4);
        for (const auto& g : gs) prod = prod * g.apply(b).pow(-4);
        return prod.times_z(1).truncated(order);
    };
    MultiSeries b(k, order);
    for (int i = 0; i < order; ++i) b = step(b);
    if (step(b) != b) throw InconsistencyError("solve_B failed to stabilize");
    return b;
}

Poly lagrange_coeff(const MultiSeries& f, const MultiSeries& phi, int n) {
    if (n < 1) throw InvalidParams("lagrange_coeff: n must be >= 1");
    if (f.order() < n || phi.order() < n - 1)
        throw InvalidParams("lagrange_coeff: input series truncated below order n");
    MultiSeries weighted = f.derivative().truncated(n - 1) * phi.truncated(n - 1).pow(n);
    Poly extracted = weighted.at(n - 1);
    Poly out(extracted.vars());
    for (const auto& [expo, c] : extracted.terms()) out.add_term(expo, exact_div(c, n));
    return out;
}

CheckReport check_prop21(int k, int order) {
    const MultiSeries a = solve_A(k, order);
    const auto p = solve_plane_system(k, order);
    const MultiSeries z = MultiSeries::z(k, order);
    for (int h = 1; h <= (k + 1) / 2; ++h) {
        MultiSeries expect = a * Poly::variable(k, h);
        for (int i = 1; i <= h; ++i) expect = expect * fg_poly(k, i, FGKind::F).apply(a).inverse();
        for (int i = 1; i <= h - 1; ++i) expect = expect * fg_poly(k, i, FGKind::G).apply(a);
        if (expect != p[static_cast<std::size_t>(h) - 1])
            return {false, "P_" + std::to_string(h) + " mismatch at k=" + std::to_string(k)};

        const int high = k + 1 - h;
        MultiSeries expect2 = z * Poly::variable(k, high);
        for (int i = 1; i <= h; ++i) expect2 = expect2 * fg_poly(k, i, FGKind::F).apply(a);
        for (int i = 1; i <= h; ++i) expect2 = expect2 * fg_poly(k, i, FGKind::G).apply(a).inverse();
        if (expect2 != p[static_cast<std::size_t>(high) - 1])
            return {false, "P_" + std::to_string(high) + " mismatch at k=" + std::to_string(k)};
    }
    return {};
}

CheckReport check_prop31_squared(int k, int order) {
    const MultiSeries b = solve_B(k, order);
    const auto ns = solve_nc_system(k, order);
    const MultiSeries f1b = fg_poly(k, 1, FGKind::F).apply(b);
    const MultiSeries zb = b.times_z(1).truncated(order);
    for (int h = 1; h <= (k + 1) / 2; ++h) {
        // N_h^2 F_1(B) prod_{i=2..h} F_i(B)^2 = x_h^2 z B prod_{i<h} G_i(B)^2
        const MultiSeries& nh = ns[static_cast<std::size_t>(h) - 1];
        MultiSeries lhs = nh * nh * f1b;
        for (int i = 2; i <= h; ++i) lhs = lhs * fg_poly(k, i, FGKind::F).apply(b).pow(2);
        MultiSeries rhs = zb * (Poly::variable(k, h) * Poly::variable(k, h));
        for (int i = 1; i <= h - 1; ++i) rhs = rhs * fg_poly(k, i, FGKind::G).apply(b).pow(2);
        if (lhs != rhs)
            return {false, "squared N_" + std::to_string(h) + " mismatch at k=" + std::to_string(k)};

        // N_{k+1-h} prod_{i=1..h} G_i(B) = x_{k+1-h} z prod_{i=1..h} F_i(B)
        const int high = k + 1 - h;
        MultiSeries lhs2 = ns[static_cast<std::size_t>(high) - 1];
        for (int i = 1; i <= h; ++i) lhs2 = lhs2 * fg_poly(k, i, FGKind::G).apply(b);
        MultiSeries rhs2 = MultiSeries::constant(k, order, 1);
        for (int i = 1; i <= h; ++i) rhs2 = rhs2 * fg_poly(k, i, FGKind::F).apply(b);
        rhs2 = (rhs2 * Poly::variable(k, high)).times_z(1).truncated(order);
        if (lhs2 != rhs2)
            return {false, "N_" + std::to_string(high) + " mismatch at k=" + std::to_string(k)};
    }
    return {};
}

CheckReport check_fg_identities(int k) {
    auto f = [k](int i) { return fg_poly(k, i, FGKind::F); };
    auto g = [k](int i) { return fg_poly(k, i, FGKind::G); };
    auto x = [k](int i) { return Poly::variable(k, i); };
    for (int i = 1; i <= k; ++i) {
        if (f(i + 1).linear != g(i).linear + x(k + 1 - i))
            return {false, "F recursion via G fails at i=" + std::to_string(i)};
        if (g(i).linear != f(i).linear - x(i))
            return {false, "G recursion via F fails at i=" + std::to_string(i)};
        if (f(i + 1).linear != f(i).linear + x(k + 1 - i) - x(i))
            return {false, "F additive recursion fails at i=" + std::to_string(i)};
    }
    for (int i = 1; i <= k - 1; ++i) {
        if (g(i + 1).linear != g(i).linear + x(k + 1 - i) - x(i + 1))
            return {false, "G additive recursion fails at i=" + std::to_string(i)};
    }
    for (int i = 1; i <= k + 1; ++i) {
        if (!(f(i) == f(k + 2 - i)))
            return {false, "F symmetry fails at i=" + std::to_string(i)};
    }
    for (int i = 1; i <= k; ++i) {
        if (!(g(i) == g(k + 1 - i)))
            return {false, "G symmetry fails at i=" + std::to_string(i)};
    }
    if (k % 2 == 0 && !f(k / 2 + 1).linear.is_zero())
        return {false, "even-k midpoint F is not 1"};
    if (k % 2 == 1 && !g((k + 1) / 2).linear.is_zero())
        return {false, "odd-k midpoint G is not 1"};
    return {};
}

CheckReport check_plane_totals_identity(int k, int order) {
    const auto p = solve_plane_system(k, order);
    MultiSeries sum(k, order);
    for (const auto& s : p) sum += s;
    MultiSeries lhs = (MultiSeries::constant(k, order, 1) - sum) * p[0];
    MultiSeries rhs = MultiSeries::monomial(Poly::variable(k, 1), 1, order);
    if (lhs != rhs) return {false, "totals identity fails at k=" + std::to_string(k)};
    return {};
}

std::vector<SeriesTerm> dump_series(const std::string& name, const MultiSeries& series) {
    std::vector<SeriesTerm> rows;
    for (int n = 0; n <= series.order(); ++n) {
        for (const auto& [expo, c] : series.at(n).terms())
            rows.push_back({name, n, expo, c});
    }
    return rows;
}

} // namespace ktrees
