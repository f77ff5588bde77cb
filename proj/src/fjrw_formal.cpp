#include "kgw/fjrw_formal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <sstream>

#include "kgw/errors.hpp"
#include "kgw/number_theory.hpp"

namespace kgw {

// ---------------------------------------------------------------------------
// Laurent polynomial helpers

namespace {

using Laurent = TRational::Laurent;

void add_term(Laurent& p, long e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// sum_i c[i] t^{lo+i} / den with integer c and den > 0. The hot loops run
// here instead of on mpq, which pays a gcd per operation.
struct IntPoly {
    long lo = 0;
    std::vector<Integer> c;
    Integer den = 1;

    bool is_zero() const { return c.empty(); }

    void trim() {
        std::size_t first = 0;
        while (first < c.size() && c[first] == 0) ++first;
        if (first == c.size()) {
            c.clear();
            lo = 0;
            return;
        }
        std::size_t last = c.size();
        while (c[last - 1] == 0) --last;
        c = std::vector<Integer>(std::make_move_iterator(c.begin() + static_cast<std::ptrdiff_t>(first)),
                                 std::make_move_iterator(c.begin() + static_cast<std::ptrdiff_t>(last)));
        lo += static_cast<long>(first);
    }

    bool vanishes_at_one() const {
        Integer s = 0;
        for (const auto& v : c) s += v;
        return s == 0;
    }
};

IntPoly to_int(const Laurent& p) {
    IntPoly out;
    if (p.empty()) return out;
    out.lo = p.begin()->first;
    for (const auto& [e, v] : p) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), v.get_den_mpz_t());
    out.c.assign(static_cast<std::size_t>(p.rbegin()->first - out.lo + 1), Integer(0));
    for (const auto& [e, v] : p) {
        Integer& slot = out.c[static_cast<std::size_t>(e - out.lo)];
        mpz_divexact(slot.get_mpz_t(), out.den.get_mpz_t(), v.get_den_mpz_t());
        slot *= v.get_num();
    }
    return out;
}

Laurent to_laurent(const IntPoly& p) {
    Laurent out;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        out.emplace_hint(out.end(), p.lo + static_cast<long>(i), make_rational(p.c[i], p.den));
    }
    return out;
}

IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    out.lo = a.lo + b.lo;
    out.den = a.den * b.den;
    out.c.assign(a.c.size() + b.c.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            mpz_addmul(out.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
        }
    }
    return out;
}

// p *= (1 - t^m)^e, m > 0.
void times_factor_power(IntPoly& p, long m, int e) {
    if (p.is_zero()) return;
    const auto step = static_cast<std::size_t>(m);
    for (int pass = 0; pass < e; ++pass) {
        p.c.resize(p.c.size() + step, Integer(0));
        for (std::size_t i = p.c.size(); i-- > step;) p.c[i] -= p.c[i - step];
    }
}

// p /= (1 - t^m) when exact; p must be trimmed.
bool try_divide_one_minus_tm(IntPoly& p, long m) {
    const auto n = p.c.size();
    const auto step = static_cast<std::size_t>(m);
    if (n <= step) return false;
    std::vector<Integer> r(n - step);
    for (std::size_t i = 0; i < n - step; ++i) r[i] = i >= step ? p.c[i] + r[i - step] : p.c[i];
    for (std::size_t i = n - step; i < n; ++i) {
        // q_i = -r_{i-m} beyond the quotient's top.
        const Integer expected = i >= step ? Integer(-r[i - step]) : Integer(0);
        if (p.c[i] != expected) return false;
    }
    p.c = std::move(r);
    return true;
}

void int_add(IntPoly& into, IntPoly x) {
    if (x.is_zero()) return;
    if (into.is_zero()) {
        into = std::move(x);
        return;
    }
    if (into.den != x.den) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), into.den.get_mpz_t(), x.den.get_mpz_t());
        const Integer fa = l / into.den;
        const Integer fb = l / x.den;
        if (fa != 1) for (auto& v : into.c) v *= fa;
        if (fb != 1) for (auto& v : x.c) v *= fb;
        into.den = l;
    }
    const long lo = std::min(into.lo, x.lo);
    const long hi = std::max(into.lo + static_cast<long>(into.c.size()), x.lo + static_cast<long>(x.c.size()));
    if (lo < into.lo) into.c.insert(into.c.begin(), static_cast<std::size_t>(into.lo - lo), Integer(0));
    into.lo = lo;
    into.c.resize(static_cast<std::size_t>(hi - lo), Integer(0));
    for (std::size_t i = 0; i < x.c.size(); ++i) into.c[static_cast<std::size_t>(x.lo - lo) + i] += x.c[i];
}

Laurent mul(const Laurent& a, const Laurent& b) { return to_laurent(int_mul(to_int(a), to_int(b))); }

// (1 - t^m)^e
Laurent factor_power(long m, int e) {
    Laurent out{{0, Rational(1)}};
    const Laurent f{{0, Rational(1)}, {m, Rational(-1)}};
    for (int i = 0; i < e; ++i) out = mul(out, f);
    return out;
}

// Dense coefficients of t^{-lo} p, with lo the lowest exponent.
std::pair<long, std::vector<Rational>> to_dense(const Laurent& p) {
    if (p.empty()) return {0, {}};
    const long lo = p.begin()->first;
    const long hi = p.rbegin()->first;
    std::vector<Rational> dense(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (const auto& [e, c] : p) dense[static_cast<std::size_t>(e - lo)] = c;
    return {lo, dense};
}

// q / (1 - t^m) when exact.
std::optional<std::vector<Rational>> divide_one_minus_tm(const std::vector<Rational>& q, long m) {
    const long n = static_cast<long>(q.size());
    if (n <= m) return std::nullopt;
    std::vector<Rational> r(static_cast<std::size_t>(n - m), Rational(0));
    for (long i = 0; i < n - m; ++i) r[i] = q[i] + (i >= m ? r[i - m] : Rational(0));
    for (long i = n - m; i < n; ++i) {
        // q_i = r_i - r_{i-m} with r_i = 0 beyond the quotient.
        const Rational expected = -(i - m >= 0 && i - m < n - m ? r[i - m] : Rational(0));
        if (q[i] != expected) return std::nullopt;
    }
    return r;
}

std::vector<Rational> divide_one_minus_t(const std::vector<Rational>& q) {
    auto r = divide_one_minus_tm(q, 1);
    if (!r) throw Error(ErrorCode::PreconditionFailure, "(1 - t) division was not exact");
    while (!r->empty() && r->back() == 0) r->pop_back();
    return *r;
}

std::string laurent_to_string(const Laurent& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p) {
        if (!first) os << " + ";
        first = false;
        os << to_fraction_string(c);
        if (e != 0) os << "*t^" << e;
    }
    return os.str();
}

std::string factors_to_string(const std::map<long, int>& den, const std::vector<long>& only) {
    std::ostringstream os;
    bool first = true;
    for (long m : only) {
        auto it = den.find(m);
        if (it == den.end()) continue;
        if (!first) os << " ";
        first = false;
        os << "(1 - t^" << m << ")";
        if (it->second != 1) os << "^" << it->second;
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// TRational

TRational::TRational(const Rational& c) {
    if (c != 0) num_.emplace(0, c);
}

TRational TRational::monomial(const Rational& c, long exponent) {
    TRational r;
    if (c != 0) r.num_.emplace(exponent, c);
    return r;
}

TRational TRational::one_minus_t_pow(long a) {
    TRational r;
    add_term(r.num_, 0, 1);
    add_term(r.num_, a, -1);
    return r;
}

TRational TRational::inverse_one_minus_t_pow(long a) {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "1/(1 - t^0)");
    TRational r;
    if (a > 0) {
        r.num_.emplace(0, Rational(1));
        r.den_[a] = 1;
    } else {
        r.num_.emplace(-a, Rational(-1));
        r.den_[-a] = 1;
    }
    return r;
}

void TRational::cancel() {
    if (num_.empty()) {
        den_.clear();
        return;
    }
    // Every 1 - t^m vanishes at t = 1, so nothing cancels unless the numerator does.
    Rational at_one(0);
    for (const auto& [e, c] : num_) at_one += c;
    if (at_one != 0) return;
    IntPoly q = to_int(num_);
    q.trim();
    bool changed = false;
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0 && q.vanishes_at_one() && try_divide_one_minus_tm(q, it->first)) {
            --it->second;
            changed = true;
            q.trim();
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    if (changed) num_ = to_laurent(q);
}

TRational operator+(const TRational& a, const TRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return TRational::sum({a, b});
}

TRational operator-(const TRational& a, const TRational& b) { return a + b.scaled(-1); }

TRational TRational::sum(const std::vector<TRational>& terms) {
    TRational out;
    for (const auto& t : terms) {
        for (const auto& [m, e] : t.den_) out.den_[m] = std::max(out.den_[m], e);
    }
    IntPoly acc;
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        IntPoly n = to_int(t.num_);
        for (const auto& [m, e] : out.den_) {
            auto it = t.den_.find(m);
            const int have = it == t.den_.end() ? 0 : it->second;
            if (e > have) times_factor_power(n, m, e - have);
        }
        int_add(acc, std::move(n));
    }
    out.num_ = to_laurent(acc);
    out.cancel();
    return out;
}

TRational operator*(const TRational& a, const TRational& b) {
    TRational out;
    if (a.is_zero() || b.is_zero()) return out;
    out.num_ = mul(a.num_, b.num_);
    out.den_ = a.den_;
    for (const auto& [m, e] : b.den_) out.den_[m] += e;
    out.cancel();
    return out;
}

TRational TRational::scaled(const Rational& c) const {
    TRational out;
    if (c == 0) return out;
    out = *this;
    for (auto& [e, v] : out.num_) v *= c;
    return out;
}

bool TRational::equivalent_to(const TRational& other) const {
    Laurent lhs = num_;
    for (const auto& [m, e] : other.den_) lhs = mul(lhs, factor_power(m, e));
    Laurent rhs = other.num_;
    for (const auto& [m, e] : den_) rhs = mul(rhs, factor_power(m, e));
    return lhs == rhs;
}

std::string TRational::to_string() const {
    std::vector<long> all;
    for (const auto& [m, e] : den_) all.push_back(m);
    if (den_.empty()) return laurent_to_string(num_);
    return "(" + laurent_to_string(num_) + ")/(" + factors_to_string(den_, all) + ")";
}

namespace {

// Order of f at a primitive p-th root of unity (the same for every k), the
// numerator with the Phi_p factors removed, and the vanishing factors.
struct PhiOrder {
    long order = 0;
    IntPoly reduced;
    std::vector<long> vanishing;
};

// Phi_p | q  iff  q mod (t^p - 1) has all p coefficients equal.
bool divisible_by_phi(const IntPoly& q, unsigned p) {
    std::vector<Integer> folded(p, Integer(0));
    for (std::size_t i = 0; i < q.c.size(); ++i) folded[i % p] += q.c[i];
    return std::all_of(folded.begin(), folded.end(), [&](const Integer& c) { return c == folded[0]; });
}

PhiOrder phi_order(const TRational& f, unsigned p) {
    PhiOrder out;
    IntPoly q = to_int(f.numerator());
    q.trim();
    while (!q.is_zero() && divisible_by_phi(q, p)) {
        // q / Phi_p = q (1 - t) / (1 - t^p)
        times_factor_power(q, 1, 1);
        q.trim();
        if (!try_divide_one_minus_tm(q, p)) {
            throw Error(ErrorCode::PreconditionFailure, "cyclotomic factor division was not exact");
        }
        q.trim();
        ++out.order;
    }
    out.reduced = std::move(q);
    for (const auto& [m, e] : f.denominator()) {
        if (m % static_cast<long>(p) == 0) {
            out.order -= e;
            out.vanishing.push_back(m);
        }
    }
    return out;
}

}  // namespace

LocalExpansion<CyclotomicNumber> expand_at_root(const TRational& f, unsigned p, unsigned k) {
    if (k < 1 || k >= p) throw Error(ErrorCode::IndexOutOfRange, "k outside 1..p-1");
    LocalExpansion<CyclotomicNumber> out{false, 0, CyclotomicNumber(p), {}};
    if (f.is_zero()) {
        out.zero = true;
        return out;
    }
    PhiOrder local = phi_order(f, p);
    out.order = local.order;
    out.vanishing_factors = local.vanishing;
    std::vector<Integer> folded(p, Integer(0));
    for (std::size_t i = 0; i < local.reduced.c.size(); ++i) {
        const long e = (local.reduced.lo + static_cast<long>(i)) * static_cast<long>(k);
        folded[static_cast<std::size_t>(mod_floor(e, p))] += local.reduced.c[i];
    }
    std::vector<Rational> scaled;
    scaled.reserve(p);
    for (const auto& v : folded) scaled.push_back(make_rational(v, local.reduced.den));
    CyclotomicNumber value = CyclotomicNumber::from_coefficients(p, scaled);
    for (const auto& [m, e] : f.denominator()) {
        // (1 - t^m)/Phi_p = (1 - t)(1 + t^p + ... + t^{m-p}) -> (1 - z^k) m/p when p | m.
        const bool vanishing = m % static_cast<long>(p) == 0;
        const CyclotomicNumber inv = CyclotomicNumber::inverse_one_minus_zeta_power(
            p, vanishing ? static_cast<std::int64_t>(k) : static_cast<std::int64_t>(k) * m);
        for (int i = 0; i < e; ++i) {
            value *= inv;
            if (vanishing) value = value.scaled(make_rational(p, m));
        }
    }
    out.leading = value;
    return out;
}

LocalExpansion<Rational> expand_at_one(const TRational& f) {
    LocalExpansion<Rational> out{false, 0, Rational(0), {}};
    if (f.is_zero()) {
        out.zero = true;
        return out;
    }
    auto [lo, q] = to_dense(f.numerator());
    (void)lo;
    auto value_at_one = [](const std::vector<Rational>& v) {
        Rational s(0);
        for (const auto& c : v) s += c;
        return s;
    };
    while (value_at_one(q) == 0) {
        q = divide_one_minus_t(q);
        ++out.order;
    }
    Rational den(1);
    for (const auto& [m, e] : f.denominator()) {
        // (1 - t^m)/(1 - t) -> m
        for (int i = 0; i < e; ++i) den *= Rational(m);
        out.order -= e;
        out.vanishing_factors.push_back(m);
    }
    out.leading = value_at_one(q) / den;
    return out;
}

// ---------------------------------------------------------------------------
// Bundles and series

void FormalBundle::validate() const {
    if (roots.size() > kMaxRoots) {
        throw Error(ErrorCode::InvalidConfig, "at most " + std::to_string(kMaxRoots) + " roots are supported");
    }
    std::set<std::string> seen;
    for (const auto& r : roots) {
        if (r.label.empty()) throw Error(ErrorCode::InvalidConfig, "empty root label");
        if (r.multiplicity == 0) throw Error(ErrorCode::InvalidConfig, "root '" + r.label + "' has multiplicity 0");
        if (!seen.insert(r.label).second) throw Error(ErrorCode::InvalidConfig, "repeated root '" + r.label + "'");
    }
}

FormalBundle parse_bundle(const std::string& text) {
    FormalBundle bundle;
    std::stringstream ss(text);
    std::string item;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::InvalidConfig, "bundle entry '" + item + "' lacks ':'");
        FormalRoot root;
        root.label = trim(item.substr(0, colon));
        const std::string mult = trim(item.substr(colon + 1));
        try {
            std::size_t used = 0;
            root.multiplicity = std::stoi(mult, &used);
            if (used != mult.size()) throw std::invalid_argument(mult);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidConfig, "bad multiplicity '" + mult + "'");
        }
        bundle.roots.push_back(root);
    }
    bundle.validate();
    return bundle;
}

std::vector<Rational> bernoulli_numbers(int n) {
    std::vector<Rational> b(static_cast<std::size_t>(std::max(n, 0)) + 1, Rational(0));
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s(0);
        Integer binom(1);  // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            s += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -s / Rational(m + 1);
    }
    return b;
}

namespace {

std::vector<TRational> series_mul(const std::vector<TRational>& a, const std::vector<TRational>& b, int trunc) {
    std::vector<std::vector<TRational>> terms(static_cast<std::size_t>(trunc) + 1);
    for (int i = 0; i <= trunc && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= trunc && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero()) continue;
            terms[static_cast<std::size_t>(i + j)].push_back(a[i] * b[j]);
        }
    }
    std::vector<TRational> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(TRational::sum(t));
    return out;
}

std::vector<TRational> series_pow(const std::vector<TRational>& base, int e, int trunc) {
    std::vector<TRational> out(static_cast<std::size_t>(trunc) + 1);
    out[0] = TRational(Rational(1));
    for (int i = 0; i < e; ++i) out = series_mul(out, base, trunc);
    return out;
}

}  // namespace

std::vector<TRational> cclass_root_series(long a, int multiplicity, int trunc_x) {
    if (trunc_x < 0) throw Error(ErrorCode::InvalidConfig, "negative x truncation");
    const auto bern = bernoulli_numbers(trunc_x);
    const TRational one_minus_s = TRational::one_minus_t_pow(a);
    std::vector<TRational> c(static_cast<std::size_t>(trunc_x) + 1);
    Integer factorial(1);
    for (int n = 0; n <= trunc_x; ++n) {
        if (n > 0) factorial *= n;
        if (n == 1) {
            // 1 + (1 - s)(-1/2) = (1 + s)/2
            c[1] = (TRational(Rational(1)) + TRational::monomial(1, a)).scaled(make_rational(1, 2));
        } else {
            c[n] = one_minus_s.scaled(bern[n] / Rational(factorial));
        }
    }
    if (multiplicity >= 0) return series_pow(c, multiplicity, trunc_x);

    if (one_minus_s.is_zero()) {
        throw Error(ErrorCode::DegenerateInput, "weight 0 with negative multiplicity inverts the series x");
    }
    const TRational inv0 = TRational::inverse_one_minus_t_pow(a);
    std::vector<TRational> g(static_cast<std::size_t>(trunc_x) + 1);
    g[0] = inv0;
    for (int n = 1; n <= trunc_x; ++n) {
        TRational s;
        for (int i = 1; i <= n; ++i) s = s + c[i] * g[n - i];
        g[n] = (inv0 * s).scaled(-1);
    }
    return series_pow(g, -multiplicity, trunc_x);
}

TSeries::TSeries(int trunc_x) : trunc_x_(trunc_x) {
    if (trunc_x < 0) throw Error(ErrorCode::InvalidConfig, "negative x truncation");
}

std::vector<std::string> TSeries::labels() const {
    std::vector<std::string> out;
    for (const auto& [label, _] : factors_) out.push_back(label);
    return out;
}

void TSeries::multiply_root(const std::string& label, const std::vector<TRational>& series) {
    auto it = factors_.find(label);
    if (it == factors_.end()) {
        std::vector<TRational> padded(series.begin(),
                                      series.begin() + std::min<std::ptrdiff_t>(series.size(), trunc_x_ + 1));
        padded.resize(static_cast<std::size_t>(trunc_x_) + 1);
        factors_.emplace(label, std::move(padded));
    } else {
        it->second = series_mul(it->second, series, trunc_x_);
    }
}

TSeries operator*(const TSeries& a, const TSeries& b) {
    if (a.trunc_x_ != b.trunc_x_) throw Error(ErrorCode::InvalidConfig, "series truncations differ");
    TSeries out = a;
    for (const auto& [label, series] : b.factors_) out.multiply_root(label, series);
    return out;
}

TRational TSeries::coefficient(const std::vector<int>& degrees) const {
    if (degrees.size() != factors_.size()) throw Error(ErrorCode::IndexOutOfRange, "monomial has wrong arity");
    TRational out(Rational(1));
    std::size_t r = 0;
    for (const auto& [label, series] : factors_) {
        const int deg = degrees[r++];
        if (deg < 0 || deg > trunc_x_) throw Error(ErrorCode::IndexOutOfRange, "degree beyond truncation");
        out = out * series[static_cast<std::size_t>(deg)];
    }
    return out;
}

std::vector<std::vector<int>> TSeries::monomials() const {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t r = 0; r < factors_.size(); ++r) {
        std::vector<std::vector<int>> next;
        for (const auto& m : out) {
            for (int d = 0; d <= trunc_x_; ++d) {
                auto extended = m;
                extended.push_back(d);
                next.push_back(std::move(extended));
            }
        }
        out = std::move(next);
    }
    return out;
}

bool TSeries::equivalent_to(const TSeries& other) const {
    if (trunc_x_ != other.trunc_x_ || labels() != other.labels()) return false;
    for (const auto& m : monomials()) {
        if (!coefficient(m).equivalent_to(other.coefficient(m))) return false;
    }
    return true;
}

TSeries cclass(const FormalBundle& bundle, long a, int trunc_x) {
    bundle.validate();
    TSeries out(trunc_x);
    for (const auto& root : bundle.roots) {
        out.multiply_root(root.label, cclass_root_series(a, root.multiplicity, trunc_x));
    }
    return out;
}

namespace {

// prod_j (per-root series at weight a_j)^mult. Depends on the root only
// through its multiplicity, and sweeps over many bundles keep asking for the
// same handful, so finished products are kept.
std::vector<TRational> weighted_root_series(const std::vector<long>& weights, int multiplicity, int trunc_x) {
    using Key = std::tuple<std::vector<long>, int, int>;
    static std::mutex mutex;
    static std::map<Key, std::vector<TRational>> cache;
    Key key{weights, multiplicity, trunc_x};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    TSeries acc(trunc_x);
    for (long a : weights) acc.multiply_root("x", cclass_root_series(a, multiplicity, trunc_x));
    std::vector<TRational> out = weights.empty() ? std::vector<TRational>{} : acc.factors().at("x");
    std::lock_guard lock(mutex);
    if (cache.size() >= 64) cache.clear();
    cache.emplace(std::move(key), out);
    return out;
}

}  // namespace

TSeries cclass_product(const FormalBundle& bundle, const std::vector<long>& weights, int trunc_x) {
    bundle.validate();
    TSeries out(trunc_x);
    if (weights.empty()) return out;
    for (const auto& root : bundle.roots) {
        out.multiply_root(root.label, weighted_root_series(weights, root.multiplicity, trunc_x));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pole analysis and evaluation

namespace {

template <class Expand>
std::optional<PoleReport> find_pole(const TSeries& series, Expand expand, const std::string& point) {
    // Coefficients of distinct roots multiply, so orders add: the minimal
    // combined order is the sum of per-root minima.
    long total = 0;
    PoleReport report;
    report.point = point;
    std::ostringstream factors;
    for (const auto& [label, coeffs] : series.factors()) {
        long best = 0;
        int best_deg = -1;
        std::vector<long> vanishing;
        const TRational* best_coeff = nullptr;
        for (int d = 0; d < static_cast<int>(coeffs.size()); ++d) {
            const auto local = expand(coeffs[d]);
            if (local.zero) continue;
            if (best_deg < 0 || local.order < best) {
                best = local.order;
                best_deg = d;
                vanishing = local.vanishing_factors;
                best_coeff = &coeffs[d];
            }
        }
        if (best_deg < 0) return std::nullopt;  // identically zero factor
        total += best;
        report.monomial.push_back(best_deg);
        if (best < 0 && best_coeff != nullptr) {
            factors << label << ": " << factors_to_string(best_coeff->denominator(), vanishing) << "; ";
        }
    }
    if (total >= 0) return std::nullopt;
    report.order = -total;
    report.factors = factors.str();
    return report;
}

std::string pole_message(const PoleReport& pole) {
    std::ostringstream os;
    os << "pole of order " << pole.order << " at t = " << pole.point << " in monomial (";
    for (std::size_t i = 0; i < pole.monomial.size(); ++i) os << (i ? "," : "") << pole.monomial[i];
    os << "); vanishing factors " << pole.factors;
    return os.str();
}

}  // namespace

namespace {

std::optional<PoleReport> find_phi_pole(const TSeries& series, unsigned p, const std::string& point) {
    auto orders = [&](const TRational& f) {
        LocalExpansion<int> local{f.is_zero(), 0, 0, {}};
        if (!local.zero) {
            const PhiOrder o = phi_order(f, p);
            local.order = o.order;
            local.vanishing_factors = o.vanishing;
        }
        return local;
    };
    return find_pole(series, orders, point);
}

}  // namespace

std::optional<PoleReport> find_pole_at_root(const TSeries& series, unsigned p, unsigned k) {
    if (k < 1 || k >= p) throw Error(ErrorCode::IndexOutOfRange, "k outside 1..p-1");
    return find_phi_pole(series, p, "z_" + std::to_string(p) + "^" + std::to_string(k));
}

std::optional<PoleReport> find_pole_at_primitive_roots(const TSeries& series, unsigned p) {
    // Phi_p is irreducible over Q, so the order of a rational function is the
    // same at every primitive p-th root.
    return find_phi_pole(series, p, "z_" + std::to_string(p) + "^k");
}

std::optional<PoleReport> find_pole_at_one(const TSeries& series) {
    return find_pole(series, [](const TRational& f) { return expand_at_one(f); }, "1");
}

namespace {

template <class Value, class Expand>
std::map<std::vector<int>, Value> evaluate_series(const TSeries& series, Expand expand, Value zero, Value one) {
    std::vector<std::vector<LocalExpansion<Value>>> local;
    for (const auto& [label, coeffs] : series.factors()) {
        std::vector<LocalExpansion<Value>> row;
        for (const auto& c : coeffs) row.push_back(expand(c));
        local.push_back(std::move(row));
    }
    std::map<std::vector<int>, Value> out;
    for (const auto& m : series.monomials()) {
        long order = 0;
        bool zero_coeff = false;
        for (std::size_t r = 0; r < m.size(); ++r) {
            const auto& l = local[r][static_cast<std::size_t>(m[r])];
            if (l.zero) zero_coeff = true;
            order += l.order;
        }
        if (zero_coeff || order > 0) {
            out.emplace(m, zero);
            continue;
        }
        Value v = one;
        for (std::size_t r = 0; r < m.size(); ++r) v *= local[r][static_cast<std::size_t>(m[r])].leading;
        out.emplace(m, v);
    }
    return out;
}

}  // namespace

EvaluatedSeries evaluate_t(const TSeries& series, unsigned p, unsigned k) {
    if (auto pole = find_pole_at_root(series, p, k)) throw Error(ErrorCode::PoleAtEvaluationPoint, pole_message(*pole));
    EvaluatedSeries out;
    out.labels = series.labels();
    out.coefficients = evaluate_series<CyclotomicNumber>(
        series, [&](const TRational& f) { return expand_at_root(f, p, k); }, CyclotomicNumber(p),
        CyclotomicNumber(p, 1L));
    return out;
}

std::map<std::vector<int>, Rational> evaluate_at_one(const TSeries& series) {
    if (auto pole = find_pole_at_one(series)) throw Error(ErrorCode::PoleAtEvaluationPoint, pole_message(*pole));
    return evaluate_series<Rational>(
        series, [](const TRational& f) { return expand_at_one(f); }, Rational(0), Rational(1));
}

InvarianceCheck loop_invariance_check(const std::vector<long>& weights, unsigned p, int d) {
    InvarianceCheck check;
    for (long a : weights) check.reduced.push_back(mod_floor(a, p));
    check.pass = !weights.empty();
    const std::size_t n = check.reduced.size();
    for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t v = (d - 1) * check.reduced[j] + check.reduced[(j + 1) % n];
        if (mod_floor(v, p) != 0) check.pass = false;
    }
    return check;
}

B41Report b41_combination(const FormalBundle& bundle, const std::vector<long>& weights, int trunc_x, unsigned p,
                          Execution exec) {
    if (!is_prime(p) || p == 2) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
    bundle.validate();
    B41Report report;
    report.p = p;
    report.weights = weights;
    report.invariance = loop_invariance_check(weights, p, 5);
    std::vector<long> reduced;
    for (long a : weights) {
        const long r = static_cast<long>(mod_floor(a, p));
        if (r == 0) throw Error(ErrorCode::WeightNotCoprime, "weight " + std::to_string(a) + " is divisible by " + std::to_string(p));
        reduced.push_back(r);
    }
    const TSeries series = cclass_product(bundle, reduced, trunc_x);
    report.labels = series.labels();

    const long count = static_cast<long>(p) - 1;
    std::vector<std::optional<EvaluatedSeries>> slots(static_cast<std::size_t>(count));
    if (exec == Execution::serial) {
        for (long i = 0; i < count; ++i) slots[i] = evaluate_t(series, p, static_cast<unsigned>(i + 1));
    } else {
        std::vector<std::exception_ptr> errors(slots.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) {
            try {
                slots[i] = evaluate_t(series, p, static_cast<unsigned>(i + 1));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    std::map<std::vector<int>, CyclotomicNumber> sums;
    for (const auto& slot : slots) {
        for (const auto& [m, v] : slot->coefficients) {
            auto [it, inserted] = sums.emplace(m, v);
            if (!inserted) it->second += v;
        }
    }
    for (const auto& [m, v] : sums) {
        if (!v.is_rational()) {
            throw Error(ErrorCode::NonRationalCoefficient, "conjugate sum is irrational: " + v.to_string());
        }
        report.coefficients.emplace(m, -v.to_rational());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Lambda / Adams identity on truncated bivariate series

namespace {

// Packed exponent vector: 8 bits per root variable.
using XKey = std::uint64_t;
using XSeries = std::map<XKey, Rational>;

int field(XKey key, std::size_t r) { return static_cast<int>((key >> (8 * r)) & 0xFF); }

XSeries x_mul(const XSeries& a, const XSeries& b, std::size_t roots, int trunc_x) {
    XSeries out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            const XKey k = ka + kb;  // fields stay below 256 for trunc_x <= 127
            bool ok = true;
            for (std::size_t r = 0; r < roots && ok; ++r) ok = field(k, r) <= trunc_x;
            if (!ok) continue;
            auto [it, inserted] = out.emplace(k, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

void x_add(XSeries& into, const XSeries& other, const Rational& scale) {
    for (const auto& [k, c] : other) {
        auto [it, inserted] = into.emplace(k, c * scale);
        if (!inserted) {
            it->second += c * scale;
            if (it->second == 0) into.erase(it);
        }
    }
}

// e^{c x_r}, truncated.
XSeries exp_linear(std::size_t r, long c, int trunc_x) {
    XSeries out;
    Rational term(1);
    for (int n = 0; n <= trunc_x; ++n) {
        if (term != 0) out.emplace(static_cast<XKey>(n) << (8 * r), term);
        term *= Rational(c) / Rational(n + 1);
    }
    return out;
}

std::string key_string(int t_degree, XKey key, std::size_t roots) {
    std::ostringstream os;
    os << "t^" << t_degree;
    for (std::size_t r = 0; r < roots; ++r) os << " x" << r << "^" << field(key, r);
    return os.str();
}

}  // namespace

IdentityReport lambda_vs_adams_identity(const FormalBundle& bundle, int trunc_t, int trunc_x) {
    bundle.validate();
    if (trunc_t < 1 || trunc_x < 1 || trunc_t > 127 || trunc_x > 127) {
        throw Error(ErrorCode::InvalidConfig, "truncations must lie in 1..127");
    }
    const std::size_t roots = bundle.roots.size();
    using TX = std::vector<XSeries>;  // indexed by t-degree

    // Left side: prod_r sum_j C(m_r, j) (-t)^j e^{-j x_r}.
    TX lhs(static_cast<std::size_t>(trunc_t) + 1);
    lhs[0].emplace(0, Rational(1));
    for (std::size_t r = 0; r < roots; ++r) {
        const long m = bundle.roots[r].multiplicity;
        TX factor(static_cast<std::size_t>(trunc_t) + 1);
        Rational binom(1);
        for (int j = 0; j <= trunc_t; ++j) {
            const Rational c = (j % 2 == 0 ? binom : Rational(-binom));
            if (c != 0) x_add(factor[j], exp_linear(r, -j, trunc_x), c);
            binom = binom * Rational(m - j) / Rational(j + 1);
        }
        TX next(static_cast<std::size_t>(trunc_t) + 1);
        for (int i = 0; i <= trunc_t; ++i) {
            for (int j = 0; i + j <= trunc_t; ++j) x_add(next[i + j], x_mul(lhs[i], factor[j], roots, trunc_x), 1);
        }
        lhs = std::move(next);
    }

    // Right side: exp(S), S_n = -(1/n) sum_r m_r e^{-n x_r}; n E_n = sum_j j S_j E_{n-j}.
    TX s(static_cast<std::size_t>(trunc_t) + 1);
    for (int n = 1; n <= trunc_t; ++n) {
        for (std::size_t r = 0; r < roots; ++r) {
            x_add(s[n], exp_linear(r, -n, trunc_x), make_rational(-bundle.roots[r].multiplicity, n));
        }
    }
    TX rhs(static_cast<std::size_t>(trunc_t) + 1);
    rhs[0].emplace(0, Rational(1));
    for (int n = 1; n <= trunc_t; ++n) {
        for (int j = 1; j <= n; ++j) x_add(rhs[n], x_mul(s[j], rhs[n - j], roots, trunc_x), make_rational(j, n));
    }

    IdentityReport report;
    for (int n = 0; n <= trunc_t; ++n) {
        std::set<XKey> keys;
        for (const auto& [k, _] : lhs[n]) keys.insert(k);
        for (const auto& [k, _] : rhs[n]) keys.insert(k);
        for (XKey k : keys) {
            ++report.coefficients_compared;
            auto a = lhs[n].find(k);
            auto b = rhs[n].find(k);
            const Rational va = a == lhs[n].end() ? Rational(0) : a->second;
            const Rational vb = b == rhs[n].end() ? Rational(0) : b->second;
            if (va != vb) {
                if (report.mismatches == 0) {
                    report.first_mismatch = key_string(n, k, roots) + ": " + to_fraction_string(va) + " vs " +
                                            to_fraction_string(vb);
                }
                ++report.mismatches;
            }
        }
    }
    report.equal = report.mismatches == 0;
    return report;
}

}  // namespace kgw
