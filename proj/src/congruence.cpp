#include "kgw/congruence.hpp"

#include <algorithm>
#include <set>

#include "kgw/errors.hpp"
#include "kgw/float_pipeline.hpp"
#include "kgw/hodge_oracle.hpp"
#include "kgw/number_theory.hpp"

namespace kgw {

namespace {

// Polynomial dumps get long; keep error messages readable.
std::string abbreviated(const std::string& text, std::size_t limit = 160) {
    return text.size() <= limit ? text : text.substr(0, limit) + " ... (" + std::to_string(text.size()) + " chars)";
}

}  // namespace

PrefactorSplit split_prefactor(const HodgeRationalFunction& f) {
    const unsigned p = f.prime();
    if (!f.has_rational_denominator()) {
        throw Error(ErrorCode::NonRationalDenominator, "denominator " + abbreviated(f.denominator().to_string()));
    }
    if (f.denominator() == canonical_denominator(p)) {
        const auto dm = f.numerator().divmod(canonical_prefactor_numerator(p));
        if (!dm.remainder.is_zero()) {
            throw Error(ErrorCode::UnregisteredPrefactor,
                        "1 - q^4 - q^6 does not divide " + abbreviated(f.numerator().to_string()));
        }
        return {std::string(kCanonicalPrefactor), dm.quotient};
    }
    if (f.denominator().degree() == 0) {
        const CyclotomicNumber c = f.denominator().coeff(0);
        return {std::string(kUnitPrefactor), f.numerator().scaled(c.inverse())};
    }
    throw Error(ErrorCode::UnregisteredPrefactor, "denominator " + abbreviated(f.denominator().to_string()));
}

namespace {

CongruenceResult from_traces(const std::vector<Rational>& traces, unsigned p, std::string prefactor, CaseMeta meta) {
    CongruenceResult result;
    result.modulus = p;
    result.prefactor = std::move(prefactor);
    result.meta = std::move(meta);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        if (!is_integer(traces[i])) {
            throw Error(ErrorCode::NonIntegralTrace,
                        "trace of q^" + std::to_string(i) + " coefficient is " + to_fraction_string(traces[i]));
        }
        const Integer lifted = -traces[i].get_num();
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), lifted.get_mpz_t(), p);
        result.exact_traces.push_back(lifted);
        result.residues.push_back(r.get_si());
    }
    if (result.residues.empty()) {
        result.residues.push_back(0);
        result.exact_traces.emplace_back(0);
    }
    return result;
}

}  // namespace

CongruenceResult invariant_mod_p(const HodgeRationalFunction& b1, unsigned p, CaseMeta meta) {
    if (b1.prime() != p) throw Error(ErrorCode::ConductorMismatch, "B_1 does not live in Q(z_" + std::to_string(p) + ")");
    // Over a denominator with integer coefficients and constant term 1, an
    // integral invariant forces integral numerator traces. Checked before the
    // prefactor is split off so a broken specialization reports as such.
    const HodgePolynomial& den = b1.denominator();
    if (den == canonical_denominator(p) || den == HodgePolynomial::rational(p, {1})) {
        const auto& num = b1.numerator().coefficients();
        for (std::size_t i = 0; i < num.size(); ++i) {
            const Rational t = trace_to_rational(num[i]);
            if (!is_integer(t)) {
                throw Error(ErrorCode::NonIntegralTrace, "trace of the q^" + std::to_string(i) +
                                                             " numerator coefficient is " + to_fraction_string(t));
            }
        }
    }
    const PrefactorSplit split = split_prefactor(b1);
    std::vector<Rational> traces;
    for (const auto& c : split.reduced.coefficients()) traces.push_back(trace_to_rational(c));
    return from_traces(traces, p, split.descriptor, std::move(meta));
}

CongruenceResult invariant_from_orbit(const std::vector<HodgeRationalFunction>& orbit, unsigned p, CaseMeta meta) {
    if (orbit.size() + 1 != p) {
        throw Error(ErrorCode::InvalidConfig, "orbit has " + std::to_string(orbit.size()) + " members, expected " +
                                                  std::to_string(p - 1));
    }
    std::vector<CyclotomicNumber> sums;
    std::string descriptor;
    for (const auto& b : orbit) {
        const PrefactorSplit split = split_prefactor(b);
        if (descriptor.empty()) descriptor = split.descriptor;
        if (descriptor != split.descriptor) throw Error(ErrorCode::PrefactorMismatch, "orbit prefactors differ");
        const auto& cs = split.reduced.coefficients();
        if (sums.size() < cs.size()) sums.resize(cs.size(), CyclotomicNumber(p));
        for (std::size_t i = 0; i < cs.size(); ++i) sums[i] += cs[i];
    }
    std::vector<Rational> traces;
    for (const auto& s : sums) traces.push_back(s.to_rational());
    return from_traces(traces, p, descriptor, std::move(meta));
}

CongruenceResult crt_combine(const std::vector<CongruenceResult>& parts) {
    if (parts.empty()) throw Error(ErrorCode::InvalidConfig, "nothing to combine");
    if (parts.size() == 1) return parts.front();

    std::size_t length = 0;
    std::set<std::string> realizations;
    for (const auto& part : parts) {
        if (part.modulus < 1) throw Error(ErrorCode::InvalidConfig, "modulus must be positive");
        if (!is_registered_prefactor(part.prefactor)) {
            throw Error(ErrorCode::UnregisteredPrefactor, "prefactor '" + part.prefactor + "'");
        }
        if (part.prefactor != parts.front().prefactor) {
            throw Error(ErrorCode::PrefactorMismatch, "'" + part.prefactor + "' vs '" + parts.front().prefactor + "'");
        }
        const CaseMeta& a = part.meta;
        const CaseMeta& b = parts.front().meta;
        if (a.g != b.g || a.n != b.n || a.beta != b.beta || a.N != b.N || a.d != b.d) {
            throw Error(ErrorCode::MetaMismatch, "results describe different invariants");
        }
        for (std::size_t rpos = 0, start = 0; rpos <= part.meta.realization.size(); ++rpos) {
            if (rpos == part.meta.realization.size() || part.meta.realization[rpos] == '+') {
                if (rpos > start) realizations.insert(part.meta.realization.substr(start, rpos - start));
                start = rpos + 1;
            }
        }
        length = std::max(length, part.residues.size());
    }

    CongruenceResult out;
    out.prefactor = parts.front().prefactor;
    out.meta = parts.front().meta;
    out.meta.realization.clear();
    for (const auto& r : realizations) {
        if (!out.meta.realization.empty()) out.meta.realization += '+';
        out.meta.realization += r;
    }
    out.modulus = parts.front().modulus;
    out.residues.assign(length, 0);
    for (std::size_t i = 0; i < parts.front().residues.size(); ++i) {
        out.residues[i] = mod_floor(parts.front().residues[i], out.modulus);
    }
    for (std::size_t idx = 1; idx < parts.size(); ++idx) {
        const auto& part = parts[idx];
        std::vector<std::int64_t> combined(length);
        for (std::size_t i = 0; i < length; ++i) {
            const std::int64_t r = i < part.residues.size() ? part.residues[i] : 0;
            combined[i] = crt_pair(out.residues[i], out.modulus, r, part.modulus);
        }
        // crt_pair validated the moduli; a zero-length vector skips it.
        if (length == 0) crt_pair(0, out.modulus, 0, part.modulus);
        out.modulus *= part.modulus;
        out.residues = std::move(combined);
    }
    return out;
}

double relative_deviation(std::complex<double> value, std::complex<double> target, double floor) {
    const double diff = std::abs(value - target);
    const double scale = std::abs(target);
    return scale > floor ? diff / scale : diff;
}

CrosscheckReport numeric_crosscheck(const GraphSumRequest& request, bool throw_on_failure) {
    GraphSumRequest k1 = request;
    k1.k = 1;
    const HodgeRationalFunction b1 = sum_over_graphs(k1);
    const PrefactorSplit split = split_prefactor(b1);
    const LoopData ld = compute_loop_data(request.N, request.d);

    CrosscheckReport report;
    const auto floating_b1 = float_reduced_sum(ld.u, request.d, request.p, 1);
    const std::size_t length = std::max(floating_b1.size(), split.reduced.coefficients().size());
    for (std::size_t i = 0; i < length; ++i) {
        const std::complex<double> exact = split.reduced.coeff(i).embed(1);
        const std::complex<double> approx = i < floating_b1.size() ? floating_b1[i] : 0.0;
        report.b1_max_relative_deviation =
            std::max(report.b1_max_relative_deviation, relative_deviation(exact, approx));
    }

    std::vector<std::complex<double>> floating_sum(length, 0.0);
    for (unsigned k = 1; k < request.p; ++k) {
        const auto bk = float_reduced_sum(ld.u, request.d, request.p, k);
        for (std::size_t i = 0; i < bk.size(); ++i) floating_sum[i] += bk[i];
    }
    for (std::size_t i = 0; i < length; ++i) {
        const double exact = trace_to_rational(split.reduced.coeff(i)).get_d();
        report.trace_max_relative_deviation =
            std::max(report.trace_max_relative_deviation, relative_deviation(exact, floating_sum[i]));
    }
    report.pass = report.b1_max_relative_deviation <= report.b1_tolerance &&
                  report.trace_max_relative_deviation <= report.trace_tolerance;
    if (!report.pass && throw_on_failure) {
        throw Error(ErrorCode::ToleranceExceeded,
                    "B_1 deviation " + std::to_string(report.b1_max_relative_deviation) + ", trace deviation " +
                        std::to_string(report.trace_max_relative_deviation));
    }
    return report;
}

}  // namespace kgw
