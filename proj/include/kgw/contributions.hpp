#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kgw/cyclotomic.hpp"
#include "kgw/graphs.hpp"
#include "kgw/hodge_poly.hpp"
#include "kgw/symmetry.hpp"

namespace kgw {

enum class Execution { serial, parallel };

/// Torus weights specialized at z_p^k: t_j = z^{exponents[j]}, w = t_0^{d-1} t_1.
struct EngineParams {
    int N = 0;
    int d = 0;
    unsigned p = 0;
    unsigned k = 0;
    std::vector<std::int64_t> exponents;
    std::vector<CyclotomicNumber> t;
    std::int64_t w_exponent = 0;
    CyclotomicNumber w{2};
    bool hodge_insertion = true;
};

EngineParams make_engine_params(const LoopData& ld, unsigned p, unsigned k, bool hodge_insertion = true);

/// Arbitrary exponents (already multiplied by k). Used to probe the engine
/// away from the loop weights. Throws WeightCollision on repeated exponents.
EngineParams make_engine_params_from_exponents(int d, unsigned p, unsigned k, std::vector<std::int64_t> exponents,
                                               bool hodge_insertion = true);

struct FactorCertificate {
    std::string label;
    CyclotomicNumber value;
};

struct EdgeEvaluation {
    int i = 0;
    int j = 0;
    CyclotomicNumber value{2};
    // (a, b) pairs whose numerator factor 1 - t_i^a t_j^b / w is zero.
    std::vector<std::pair<int, int>> vanishing_numerator_factors;
    // Every denominator factor, each certified nonzero.
    std::vector<FactorCertificate> denominator;
};

/// Full evaluation of an edge between fixed points i and j. Throws
/// UnsupportedEdgeDegree for degree >= 2 and VanishingDenominator naming the
/// zero factor.
EdgeEvaluation evaluate_edge(int i, int j, const EngineParams& params, int degree = 1);
CyclotomicNumber edge_contrib(int i, int j, const EngineParams& params, int degree = 1);

/// Factors (1 - c Psi_1) in the numerator, 1/(1 - c Psi_1) in the denominator.
struct PsiFactorList {
    std::vector<CyclotomicNumber> numerator_coeffs;
    std::vector<CyclotomicNumber> denominator_coeffs;
    CyclotomicNumber scalar{2};
};

struct VertexFactors {
    int fixed_point = 0;
    PsiFactorList before;  // flag and vertex factors as written
    PsiFactorList after;   // after exact multiset cancellation
    CyclotomicNumber hodge_parameter{2};  // u = t_i^d / w
};

/// Flag and vertex contributions of the genus-one vertex. Throws
/// UncanceledPsiDenominator if more than one Psi-denominator survives.
VertexFactors flag_and_vertex_factors(const LocalizationGraph& graph, const EngineParams& params);

struct GraphContribution {
    LocalizationGraph graph;
    EdgeEvaluation edge;
    VertexFactors vertex;
    HodgeRationalFunction chi{2};
    HodgeRationalFunction total{2};
};

GraphContribution evaluate_graph(const LocalizationGraph& graph, const EngineParams& params);
HodgeRationalFunction assemble_graph(const LocalizationGraph& graph, const EngineParams& params);

/// Per-graph contributions in graph order.
std::vector<GraphContribution> evaluate_graphs(const std::vector<LocalizationGraph>& graphs,
                                               const EngineParams& params, Execution exec = Execution::parallel);

/// Sum of graph contributions with a fixed left-to-right reduction order.
HodgeRationalFunction sum_over_graphs(const std::vector<LocalizationGraph>& graphs, const EngineParams& params,
                                      Execution exec = Execution::parallel);

struct GraphSumRequest {
    int g = 1;
    int n = 0;
    int beta = 1;
    int N = 4;
    int d = 5;
    unsigned p = 41;
    unsigned k = 1;
    bool hodge_insertion = true;
    bool assert_no_large_automorphisms = false;
};

/// Loop realization: builds loop data, enumerates the catalog graphs, checks
/// the ambient-space preconditions (PreconditionFailure) and sums.
HodgeRationalFunction sum_over_graphs(const GraphSumRequest& request, Execution exec = Execution::parallel);

/// B_1, ..., B_{p-1} in order of k.
std::vector<HodgeRationalFunction> conjugate_sweep(const GraphSumRequest& request,
                                                   Execution exec = Execution::parallel);

/// Numerator over the canonical prefactor recovered the other way round:
/// each non-vanishing graph gives edge * prod(1 + c q) evaluated at
/// q = 0, 1, ..., degree and the samples are interpolated.
HodgePolynomial numerator_by_interpolation(const std::vector<LocalizationGraph>& graphs, const EngineParams& params);

}  // namespace kgw
