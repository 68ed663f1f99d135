#pragma once

#include <map>
#include <string>
#include <vector>

#include "ktrees/exact.hpp"

namespace ktrees {

// Sparse integer-coefficient polynomial in x_1..x_k, keyed by exponent
// vector.  Zero coefficients are never stored.
class Poly {
public:
    explicit Poly(int vars) : vars_(vars) {}
    static Poly constant(int vars, const Integer& c);
    static Poly variable(int vars, int index); // x_index, 1-based

    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Integer>& terms() const { return terms_; }
    Integer coeff(const std::vector<int>& exponents) const;
    void add_term(const std::vector<int>& exponents, const Integer& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    bool operator==(const Poly&) const = default;

    // Exact division by x_index; every term must contain the variable.
    Poly divided_by_variable(int index) const;
    // Substitutes x_i := 1 for all i.
    Integer eval_ones() const;

private:
    int vars_;
    std::map<std::vector<int>, Integer> terms_;
};

// Power series in one formal variable (z in the tree systems, t inside
// Lagrange inversion) truncated at `order`, with Poly coefficients.
class MultiSeries {
public:
    MultiSeries(int vars, int order);
    static MultiSeries constant(int vars, int order, const Integer& c);
    // The series consisting of the single term z^1.
    static MultiSeries z(int vars, int order);
    // c * z^power for a polynomial c.
    static MultiSeries monomial(const Poly& c, int power, int order);

    int vars() const { return vars_; }
    int order() const { return order_; }
    const Poly& at(int n) const;
    void set(int n, Poly p);

    MultiSeries operator-() const;
    MultiSeries& operator+=(const MultiSeries& other);
    MultiSeries& operator-=(const MultiSeries& other);
    friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
    friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
    MultiSeries operator*(const Poly& c) const;
    bool operator==(const MultiSeries&) const = default;

    // Multiplication by the exact monomial variable^power: every coefficient
    // shifts up and the truncation order grows by `power` (no information is
    // lost, unlike multiplying by a truncated series).
    MultiSeries times_z(int power) const;
    MultiSeries truncated(int new_order) const;

    // Multiplicative inverse; requires constant term 1 or -1.
    MultiSeries inverse() const;
    MultiSeries pow(int exponent) const; // negative exponents via inverse
    // Formal derivative with respect to the series variable.
    MultiSeries derivative() const;
    // Exact division by x_index * variable^var_power (the butterfly factor
    // N_1/(x_1 z)); throws NonExactDivision if any term lacks the factor.
    MultiSeries divided_by_monomial(int index, int var_power) const;

private:
    int vars_;
    int order_;
    std::vector<Poly> coeffs_; // coeffs_[n] multiplies variable^n
};

// An affine polynomial 1 + linear * t used as a factor in the functional
// systems; `linear` carries the label variables x_1..x_k.
struct FGPoly {
    int k = 1;
    Poly linear{1};

    // 1 + linear * s for a series s (the substitution t := s).
    MultiSeries apply(const MultiSeries& s) const;
    // As a truncated series in t.
    MultiSeries to_series(int order) const;
    bool operator==(const FGPoly&) const = default;
};

enum class FGKind { F, G };

// F_{k,i} is defined for 1 <= i <= k+1 and G_{k,i} for 1 <= i <= k.
FGPoly fg_poly(int k, int i, FGKind kind);

// Solutions of the functional-equation systems, truncated at `order`.
// Index r-1 holds the series for root label r.
std::vector<MultiSeries> solve_plane_system(int k, int order);
std::vector<MultiSeries> solve_nc_system(int k, int order);
MultiSeries solve_A(int k, int order);
MultiSeries solve_B(int k, int order);

// [z^n] f(A) = (1/n) [t^(n-1)] f'(t) phi(t)^n for A = z phi(A); f and phi
// are series in t.
Poly lagrange_coeff(const MultiSeries& f, const MultiSeries& phi, int n);

struct CheckReport {
    bool ok = true;
    std::string detail; // empty when ok; first mismatch otherwise
};

// Substitutes A into the closed forms for P_h / P_{k+1-h} and compares with
// the solved system.
CheckReport check_prop21(int k, int order);
// The square-root-free (cross-multiplied) forms of the N_h closed forms.
CheckReport check_prop31_squared(int k, int order);
// Recursions, symmetries and midpoint values of the F/G polynomials.
CheckReport check_fg_identities(int k);
// (1 - (P_1+...+P_k)) * P_1 = x_1 z, the totals identity, through `order`.
CheckReport check_plane_totals_identity(int k, int order);

// One dump row per nonzero coefficient: series name, z-power, exponent
// vector, coefficient — sorted by (name, n, exponents).
struct SeriesTerm {
    std::string name;
    int n = 0;
    std::vector<int> exponents;
    Integer coeff;
};

std::vector<SeriesTerm> dump_series(const std::string& name, const MultiSeries& series);

} // namespace ktrees
