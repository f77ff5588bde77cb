#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace kgw {

/// Complex double-precision evaluation of the reduced genus-one degree-one
/// sum at z = exp(2 pi i k / p): for ordered pairs i1 != i2 that are not
/// cyclically adjacent,
///   prod_{a+b=d}(1 - t_i1^a t_i2^b / w) * prod_{m != i1, i1+1, i2}(1 + (t_i1/t_m) q)
///   / ((2 - t_i1/t_i2 - t_i2/t_i1) prod_{k != i1,i2}(1 - t_i1/t_k - t_i2/t_k + t_i1 t_i2/t_k^2)).
/// Returns the q-coefficients (ascending) of the bracket in front of the
/// canonical prefactor. Shares no code with the exact engine.
std::vector<std::complex<double>> float_reduced_sum(const std::vector<std::int64_t>& u, int d, unsigned p,
                                                    unsigned k);

}  // namespace kgw
