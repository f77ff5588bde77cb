#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kgw/congruence_result.hpp"

namespace kgw {

/// Diagonal symmetry data of the loop hypersurface
/// x_0^{d-1} x_1 + ... + x_N^{d-1} x_0 = 0 in P^N.
struct LoopData {
    int N = 0;
    int d = 0;
    std::vector<std::int64_t> u;  // u_0 = 0, u_{j+1} = 1 - (d-1) u_j
    std::int64_t Mbar = 0;        // |1 - (1-d)^{N+1}| / d
    std::int64_t M = 0;           // Mbar with the factors shared with u_2..u_N removed
};

/// Throws DegenerateInput for N < 2 or d < 3, Overflow when the weights leave int64.
LoopData compute_loop_data(int N, int d);

/// Exponents of the order-p subgroup acting through z_p^{k u_j}.
struct SubgroupAction {
    unsigned p = 0;
    unsigned k = 0;
    std::vector<std::int64_t> exponents;  // k u_j mod p
    bool isolated = false;                // pairwise distinct exponents
};

SubgroupAction subgroup_weights(const LoopData& ld, unsigned p, unsigned k);

/// True when every element of the order-p subgroup (k = 1..p-1) has only
/// coordinate points as fixed points.
bool isolated_for_all_k(const LoopData& ld, unsigned p);

/// Largest genus and degree for which fixed stable components are contracted:
/// g < (p-1)/2 and beta < p.
struct BoundCertificate {
    unsigned p = 0;
    int g_max = 0;
    int beta_max = 0;
};

/// Throws EvenPrime for p = 2 and NotPrime for composite p.
BoundCertificate bounds_for_prime(unsigned p);

struct VanishingOptions {
    bool hodge_insertion = true;
    // Number of zero residues to emit (matches the graph-sum numerator length
    // when the case is also in the graph catalog).
    std::size_t residue_count = 1;
};

/// Fermat realization x_0^d + ... + x_N^d with the action z -> (1, z, ..., z^N)
/// mod p = d: the fixed locus is empty, so every invariant within the bounds
/// vanishes mod p. Never touches the graph engine.
CongruenceResult vanishing_by_empty_fixed_locus(int N, int d, unsigned p, int g, int beta,
                                                VanishingOptions options = {});

/// Coordinate points e_i lying on the Fermat hypersurface (always none).
std::vector<int> fermat_coordinate_points_on_hypersurface(int N, int d);

struct QlCheck {
    std::string id;  // "a".."e"
    std::string name;
    bool pass = false;
    std::string detail;
};

struct QlReport {
    std::vector<QlCheck> checks;
    bool all_pass() const noexcept;
    std::string failures() const;
};

/// Precondition checklist for running the ambient graph sum on P^N in place
/// of the hypersurface. `assert_no_large_automorphisms` replaces the genus
/// bound (b) by the caller's assertion that no stable curve of genus <= g has
/// an automorphism of order p.
QlReport validate_ql_preconditions(const LoopData& ld, unsigned p, int g, int beta,
                                   bool assert_no_large_automorphisms = false);

}  // namespace kgw
