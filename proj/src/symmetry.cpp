#include "kgw/symmetry.hpp"

#include <numeric>
#include <sstream>

#include "kgw/errors.hpp"
#include "kgw/number_theory.hpp"

namespace kgw {

bool is_registered_prefactor(std::string_view descriptor) noexcept {
    return descriptor == kCanonicalPrefactor || descriptor == kUnitPrefactor;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "loop weights exceed 64 bits");
    return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "loop weights exceed 64 bits");
    return out;
}

std::int64_t abs_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

LoopData compute_loop_data(int N, int d) {
    if (N < 2 || d < 3) {
        throw Error(ErrorCode::DegenerateInput,
                    "loop hypersurface needs N >= 2 and d >= 3, got N=" + std::to_string(N) + " d=" + std::to_string(d));
    }
    LoopData ld;
    ld.N = N;
    ld.d = d;
    ld.u.assign(static_cast<std::size_t>(N) + 1, 0);
    for (int j = 0; j < N; ++j) {
        ld.u[j + 1] = checked_sub(1, checked_mul(d - 1, ld.u[j]));
    }
    std::int64_t power = 1;  // (1-d)^{N+1}
    for (int j = 0; j <= N; ++j) power = checked_mul(power, 1 - d);
    std::int64_t numerator = checked_sub(1, power);
    if (numerator < 0) numerator = -numerator;
    ld.Mbar = numerator / d;

    // Mbar_1 = Mbar, Mbar_{j+1} = Mbar_j / gcd(u_{j+1}, Mbar_j), M = Mbar_N. The
    // division repeats until the gcd is 1 so that every u_j is coprime to M even
    // when a prime divides Mbar to a higher power than it divides u_j.
    std::int64_t m = ld.Mbar;
    for (int j = 1; j < N; ++j) {
        for (std::int64_t g = abs_gcd(ld.u[j + 1], m); g > 1; g = abs_gcd(ld.u[j + 1], m)) m /= g;
    }
    ld.M = m;
    return ld;
}

SubgroupAction subgroup_weights(const LoopData& ld, unsigned p, unsigned k) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (ld.M % static_cast<std::int64_t>(p) != 0) {
        throw Error(ErrorCode::PrimeDoesNotDivideM,
                    std::to_string(p) + " does not divide M = " + std::to_string(ld.M));
    }
    if (k < 1 || k >= p) {
        throw Error(ErrorCode::IndexOutOfRange, "conjugate index " + std::to_string(k) + " outside 1.." +
                                                    std::to_string(p - 1));
    }
    SubgroupAction action;
    action.p = p;
    action.k = k;
    for (std::int64_t uj : ld.u) {
        action.exponents.push_back(mod_floor(mod_floor(uj, p) * static_cast<std::int64_t>(k), p));
    }
    action.isolated = true;
    for (std::size_t i = 0; i < action.exponents.size(); ++i) {
        for (std::size_t j = i + 1; j < action.exponents.size(); ++j) {
            if (action.exponents[i] == action.exponents[j]) action.isolated = false;
        }
    }
    return action;
}

bool isolated_for_all_k(const LoopData& ld, unsigned p) {
    for (unsigned k = 1; k < p; ++k) {
        if (!subgroup_weights(ld, p, k).isolated) return false;
    }
    return true;
}

BoundCertificate bounds_for_prime(unsigned p) {
    if (p == 2) throw Error(ErrorCode::EvenPrime, "order-2 actions are not supported");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    return {p, static_cast<int>((p - 3) / 2), static_cast<int>(p - 1)};
}

std::vector<int> fermat_coordinate_points_on_hypersurface(int N, int d) {
    std::vector<int> on_x;
    for (int i = 0; i <= N; ++i) {
        Integer value(0);
        for (int j = 0; j <= N; ++j) {
            Integer term;
            mpz_ui_pow_ui(term.get_mpz_t(), i == j ? 1 : 0, static_cast<unsigned long>(d));
            value += term;
        }
        if (value == 0) on_x.push_back(i);
    }
    return on_x;
}

CongruenceResult vanishing_by_empty_fixed_locus(int N, int d, unsigned p, int g, int beta, VanishingOptions options) {
    if (N < 1 || d < 3) throw Error(ErrorCode::DegenerateInput, "Fermat hypersurface needs N >= 1, d >= 3");
    if (static_cast<int>(p) != d) {
        throw Error(ErrorCode::NotFermatRealization,
                    "the Fermat route uses the order-d action; got p=" + std::to_string(p) + " d=" + std::to_string(d));
    }
    const BoundCertificate bounds = bounds_for_prime(p);
    if (static_cast<int>(p) <= N) {
        throw Error(ErrorCode::WeightCollision, "weights 0..N collide mod " + std::to_string(p));
    }
    if (g > bounds.g_max || beta > bounds.beta_max || g < 0 || beta < 0) {
        throw Error(ErrorCode::BoundViolation, "(g, beta) = (" + std::to_string(g) + ", " + std::to_string(beta) +
                                                   ") outside g <= " + std::to_string(bounds.g_max) +
                                                   ", beta <= " + std::to_string(bounds.beta_max));
    }
    // Fixed points of z -> (1, z, ..., z^N) with distinct weights are the
    // coordinate points; none of them lies on the Fermat hypersurface.
    if (!fermat_coordinate_points_on_hypersurface(N, d).empty()) {
        throw Error(ErrorCode::PreconditionFailure, "coordinate point on the Fermat hypersurface");
    }
    CongruenceResult result;
    result.modulus = p;
    result.residues.assign(std::max<std::size_t>(options.residue_count, 1), 0);
    result.prefactor = std::string(options.hodge_insertion ? kCanonicalPrefactor : kUnitPrefactor);
    result.meta = CaseMeta{g, 0, beta, N, d, "fermat"};
    return result;
}

bool QlReport::all_pass() const noexcept {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string QlReport::failures() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        if (!c.pass) os << "(" << c.id << ") " << c.name << ": " << c.detail << "; ";
    }
    return os.str();
}

QlReport validate_ql_preconditions(const LoopData& ld, unsigned p, int g, int beta,
                                   bool assert_no_large_automorphisms) {
    QlReport report;
    const bool prime = is_prime(p) && p != 2;

    QlCheck a{"a", "isolated fixed points", false, ""};
    if (!prime) {
        a.detail = std::to_string(p) + " is not an odd prime";
    } else if (ld.M % static_cast<std::int64_t>(p) != 0) {
        a.detail = std::to_string(p) + " does not divide M = " + std::to_string(ld.M);
    } else if (!isolated_for_all_k(ld, p)) {
        a.detail = "some k in 1.." + std::to_string(p - 1) + " has colliding weights";
    } else {
        a.pass = true;
        a.detail = std::to_string(p) + " | M and weights distinct for every k";
    }
    report.checks.push_back(a);

    QlCheck b{"b", "genus bound g < (p-1)/2", false, ""};
    if (assert_no_large_automorphisms) {
        b.pass = true;
        b.detail = "replaced by caller assertion: no automorphism of order " + std::to_string(p) +
                   " on stable curves of genus <= " + std::to_string(g);
    } else {
        b.pass = g >= 0 && 2 * static_cast<long>(g) < static_cast<long>(p) - 1;
        b.detail = "g = " + std::to_string(g) + ", p = " + std::to_string(p);
    }
    report.checks.push_back(b);

    QlCheck c{"c", "degree bound beta < p", beta >= 0 && beta < static_cast<int>(p),
              "beta = " + std::to_string(beta) + ", p = " + std::to_string(p)};
    report.checks.push_back(c);

    report.checks.push_back({"d", "twisting bundle O(d) convex", ld.d >= 1,
                             "O(" + std::to_string(ld.d) + ") is nonnegative; convex up to two markings in genus 0"});
    report.checks.push_back({"e", "normal bundle is a pullback", true,
                             "hypersurface normal bundle O(d) restricted from P^N"});
    return report;
}

}  // namespace kgw
