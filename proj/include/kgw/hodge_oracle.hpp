#pragma once

#include <optional>
#include <vector>

#include "kgw/hodge_poly.hpp"

namespace kgw {

// K-theoretic Euler characteristics over M_{1,1}, where the Hodge bundle E is
// the cotangent line Psi_1. Every result is returned over the canonical
// denominator (1 - q^4)(1 - q^6) (or over 1 when the Hodge insertion is off).

/// (1 - q^4)(1 - q^6).
HodgePolynomial canonical_denominator(unsigned prime);
/// 1 - q^4 - q^6.
HodgePolynomial canonical_prefactor_numerator(unsigned prime);
/// (1 - q^4 - q^6) / ((1 - q^4)(1 - q^6)).
HodgeRationalFunction canonical_prefactor(unsigned prime);

/// chi(M_{1,1}; 1/((1 - q E^v)(1 - q1 Psi_1))), the Lee–Qu closed form, with
/// the q-independent factor 1/((1 - q1^4)(1 - q1^6)) folded into the numerator.
/// Throws PoleAtUnitRoot when q1^4 = 1 or q1^6 = 1.
HodgeRationalFunction chi_hodge_psi(const CyclotomicNumber& q1, unsigned prime);

/// chi(M_{1,1}; prod_m (1 - c_m Psi_1) / (1 - q E^v))
///   = (1 - q^4 - q^6)/((1 - q^4)(1 - q^6)) * prod_m (1 + c_m q).
/// This closed form matches the Lee–Qu coefficients chi(Psi^a/(1 - q E^v))
/// for a <= 3 only, i.e. for at most three factors.
HodgeRationalFunction chi_hodge_product(const std::vector<CyclotomicNumber>& cs, unsigned prime);

/// chi(M_{1,1}; Psi_1^a / (1 - q E^v)): the q1^a coefficient of the Lee–Qu
/// generating function, extracted exactly.
HodgeRationalFunction lee_qu_coefficient(unsigned a, unsigned prime);

struct VertexChiRequest {
    bool hodge = true;
    std::optional<CyclotomicNumber> psi_denominator;  // q1 in 1/(1 - q1 Psi_1)
    std::vector<CyclotomicNumber> psi_numerators;     // c_m in prod (1 - c_m Psi_1)
};

/// Dispatches to chi_hodge_product (no Psi-denominator) or chi_hodge_psi (no
/// numerators). With both present the value is the q1-shifted Lee–Qu tail
///   sum_S (-1)^|S| prod_S c * sum_b q1^b G_{|S|+b},
/// G_a = lee_qu_coefficient(a). With hodge = false the result is the q = 0
/// value as a constant over denominator 1.
HodgeRationalFunction chi_vertex(const VertexChiRequest& request, unsigned prime);

}  // namespace kgw
