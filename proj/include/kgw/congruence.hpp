#pragma once

#include <string>
#include <vector>

#include "kgw/congruence_result.hpp"
#include "kgw/contributions.hpp"
#include "kgw/hodge_poly.hpp"

namespace kgw {

struct PrefactorSplit {
    std::string descriptor;   // one of the registered prefactor descriptors
    HodgePolynomial reduced;  // numerator in front of the prefactor
};

/// f = reduced * prefactor. The canonical prefactor is recognized when the
/// denominator is exactly (1 - q^4)(1 - q^6) and 1 - q^4 - q^6 divides the
/// numerator; a constant rational denominator gives prefactor "1".
/// Throws NonRationalDenominator or UnregisteredPrefactor otherwise.
PrefactorSplit split_prefactor(const HodgeRationalFunction& f);

/// Residues of -Tr(coefficient) mod p for the numerator in front of the
/// prefactor. Throws NonIntegralTrace when a trace is not an integer.
CongruenceResult invariant_mod_p(const HodgeRationalFunction& b1, unsigned p, CaseMeta meta = {});

/// Same invariant from the explicit orbit B_1..B_{p-1}: the coefficient sums
/// must be rational (NonRationalCoefficient) and integral (NonIntegralTrace).
CongruenceResult invariant_from_orbit(const std::vector<HodgeRationalFunction>& orbit, unsigned p,
                                      CaseMeta meta = {});

/// Coefficientwise CRT. Residue vectors are zero-padded to a common length.
/// Throws NonCoprimeModuli, PrefactorMismatch or MetaMismatch (g, n, beta, N, d differ).
CongruenceResult crt_combine(const std::vector<CongruenceResult>& parts);

struct CrosscheckReport {
    double b1_max_relative_deviation = 0.0;
    double trace_max_relative_deviation = 0.0;
    double b1_tolerance = 1e-9;
    double trace_tolerance = 1e-8;
    bool pass = false;
};

/// Relative deviation with an absolute floor for near-zero targets.
double relative_deviation(std::complex<double> value, std::complex<double> target, double floor = 1e-12);

/// Compares the exact B_1 (k = 1, embedded numerically) and its exact trace
/// against the floating-point pipeline. Throws ToleranceExceeded when
/// `throw_on_failure` is set and a tolerance is exceeded.
CrosscheckReport numeric_crosscheck(const GraphSumRequest& request, bool throw_on_failure = true);

}  // namespace kgw
