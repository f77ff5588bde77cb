#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgw/rational.hpp"

namespace kgw {

inline constexpr std::string_view kCanonicalPrefactor = "(1−q⁴−q⁶)/((1−q⁴)(1−q⁶))";
inline constexpr std::string_view kUnitPrefactor = "1";

bool is_registered_prefactor(std::string_view descriptor) noexcept;

struct CaseMeta {
    int g = 0;
    int n = 0;
    int beta = 0;
    int N = 0;
    int d = 0;
    // "loop", "fermat", or a '+'-joined sorted list after CRT.
    std::string realization;

    friend bool operator==(const CaseMeta&, const CaseMeta&) = default;
};

/// An invariant known modulo `modulus`: residues of the numerator q-coefficients
/// (ascending degree) in front of the registered prefactor.
struct CongruenceResult {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> residues;
    std::string prefactor{kUnitPrefactor};
    // Exact integer lifts -Tr(B_1) per coefficient when the result came from a
    // single prime-order graph sum; empty otherwise.
    std::vector<Integer> exact_traces;
    CaseMeta meta;

    friend bool operator==(const CongruenceResult&, const CongruenceResult&) = default;
};

}  // namespace kgw
