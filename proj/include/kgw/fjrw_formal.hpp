#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgw/contributions.hpp"
#include "kgw/cyclotomic.hpp"
#include "kgw/rational.hpp"

namespace kgw {

/// Formal Chern roots x_r with integer multiplicities (negative = dual part
/// of a virtual bundle).
struct FormalRoot {
    std::string label;
    int multiplicity = 1;
};

struct FormalBundle {
    std::vector<FormalRoot> roots;

    /// Throws InvalidConfig on a zero multiplicity, a repeated label or more
    /// than kMaxRoots roots.
    void validate() const;
    static constexpr std::size_t kMaxRoots = 7;
};

/// Parses "a:1,b:-2" (empty string = empty bundle).
FormalBundle parse_bundle(const std::string& text);

/// Rational function in t: a Laurent polynomial over prod_m (1 - t^m)^{e_m}, m > 0.
class TRational {
public:
    using Laurent = std::map<long, Rational>;  // exponent -> nonzero coefficient

    TRational() = default;
    explicit TRational(const Rational& c);
    static TRational monomial(const Rational& c, long exponent);
    /// 1 - t^a (any integer a).
    static TRational one_minus_t_pow(long a);
    /// 1/(1 - t^a), a != 0. Negative a is rewritten as -t^{|a|}/(1 - t^{|a|}).
    static TRational inverse_one_minus_t_pow(long a);

    const Laurent& numerator() const noexcept { return num_; }
    const std::map<long, int>& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.empty(); }
    bool is_polynomial() const noexcept { return den_.empty(); }

    friend TRational operator+(const TRational& a, const TRational& b);
    friend TRational operator-(const TRational& a, const TRational& b);
    friend TRational operator*(const TRational& a, const TRational& b);
    TRational scaled(const Rational& c) const;
    /// Sum over the least common denominator, cancelled once.
    static TRational sum(const std::vector<TRational>& terms);

    /// Equality as rational functions.
    bool equivalent_to(const TRational& other) const;

    std::string to_string() const;

private:
    void cancel();

    Laurent num_;
    std::map<long, int> den_;
};

/// Behaviour of a rational function at a root of unity: f = Phi^order * g,
/// g(point) = leading (nonzero) with Phi the cyclotomic polynomial of the
/// point. A zero function has zero = true.
template <class Value>
struct LocalExpansion {
    bool zero = false;
    long order = 0;
    Value leading;
    std::vector<long> vanishing_factors;  // m with (1 - t^m) vanishing at the point
};

LocalExpansion<CyclotomicNumber> expand_at_root(const TRational& f, unsigned p, unsigned k);
LocalExpansion<Rational> expand_at_one(const TRational& f);

/// Product over roots of univariate series in x_r with TRational
/// coefficients, each truncated at degree trunc_x in its own variable.
class TSeries {
public:
    explicit TSeries(int trunc_x);

    int trunc_x() const noexcept { return trunc_x_; }
    /// Root labels in sorted order.
    std::vector<std::string> labels() const;
    const std::map<std::string, std::vector<TRational>>& factors() const noexcept { return factors_; }

    /// Multiply the factor of `label` by the univariate series `series`.
    void multiply_root(const std::string& label, const std::vector<TRational>& series);

    friend TSeries operator*(const TSeries& a, const TSeries& b);

    /// Coefficient of prod_r x_r^{degrees[r]} (degrees in labels() order).
    TRational coefficient(const std::vector<int>& degrees) const;

    /// Every exponent profile with each degree <= trunc_x, in lexicographic order.
    std::vector<std::vector<int>> monomials() const;

    bool equivalent_to(const TSeries& other) const;

private:
    int trunc_x_;
    std::map<std::string, std::vector<TRational>> factors_;
};

/// Per-root series x (e^x - t^a)/(e^x - 1) raised to the multiplicity.
/// Throws DegenerateInput for a = 0 with a negative multiplicity (x^{-1}).
std::vector<TRational> cclass_root_series(long a, int multiplicity, int trunc_x);

/// prod_r (x_r (e^{x_r} - t^a)/(e^{x_r} - 1))^{mult_r}.
TSeries cclass(const FormalBundle& bundle, long a, int trunc_x);

/// prod_j cclass(bundle, a_j).
TSeries cclass_product(const FormalBundle& bundle, const std::vector<long>& weights, int trunc_x);

struct PoleReport {
    std::vector<int> monomial;  // exponent profile
    long order = 0;             // pole order (> 0)
    std::string factors;        // vanishing denominator factors
    std::string point;
};

/// First coefficient with a pole at t = z_p^k, or nothing.
std::optional<PoleReport> find_pole_at_root(const TSeries& series, unsigned p, unsigned k);
/// One scan covering every primitive p-th root at once (the order is Galois invariant).
std::optional<PoleReport> find_pole_at_primitive_roots(const TSeries& series, unsigned p);
std::optional<PoleReport> find_pole_at_one(const TSeries& series);

struct EvaluatedSeries {
    std::vector<std::string> labels;
    std::map<std::vector<int>, CyclotomicNumber> coefficients;
};

/// Substitutes t = z_p^k (limit value where the singularities cancel).
/// Throws PoleAtEvaluationPoint naming the offending factor.
EvaluatedSeries evaluate_t(const TSeries& series, unsigned p, unsigned k);

/// Substitutes t = 1; same pole semantics.
std::map<std::vector<int>, Rational> evaluate_at_one(const TSeries& series);

struct InvarianceCheck {
    std::vector<std::int64_t> reduced;  // weights mod p
    bool pass = false;                  // (d-1) a_j + a_{j+1} = 0 mod p for all j, cyclically
};

InvarianceCheck loop_invariance_check(const std::vector<long>& weights, unsigned p, int d);

struct B41Report {
    unsigned p = 41;
    std::vector<long> weights;
    InvarianceCheck invariance;
    std::vector<std::string> labels;
    std::map<std::vector<int>, Rational> coefficients;
};

/// -sum_{k=1}^{p-1} evaluate_t(prod_j cclass(bundle, a_j), p, k). Weights are
/// reduced mod p and must be coprime to p (WeightNotCoprime). Throws
/// NonRationalCoefficient if a summed coefficient is irrational.
B41Report b41_combination(const FormalBundle& bundle, const std::vector<long>& weights, int trunc_x,
                          unsigned p = 41, Execution exec = Execution::parallel);

struct IdentityReport {
    bool equal = false;
    std::size_t coefficients_compared = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;
};

/// prod_r (1 - t e^{-x_r})^{m_r} against exp(-sum_{m=1}^{T} t^m/m sum_r m_r e^{-m x_r}),
/// both truncated at t-degree trunc_t and degree trunc_x in every x_r.
IdentityReport lambda_vs_adams_identity(const FormalBundle& bundle, int trunc_t, int trunc_x);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);

}  // namespace kgw
