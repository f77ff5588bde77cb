#include "kgw/contributions.hpp"

#include <algorithm>
#include <optional>

#include "kgw/errors.hpp"
#include "kgw/hodge_oracle.hpp"
#include "kgw/number_theory.hpp"

namespace kgw {

namespace {

// Weight values with their inverses. The engine reads t and w as values, so a
// perturbed weight propagates; a weight still equal to the root of unity its
// exponent names inverts for free.
struct WeightTable {
    std::vector<CyclotomicNumber> t;
    std::vector<CyclotomicNumber> t_inv;
    CyclotomicNumber w_inv{2};
};

CyclotomicNumber invert_weight(const CyclotomicNumber& value, std::optional<std::int64_t> exponent, unsigned p) {
    if (exponent && value == CyclotomicNumber::zeta_power(p, *exponent)) {
        return CyclotomicNumber::zeta_power(p, -*exponent);
    }
    if (value.is_zero()) throw Error(ErrorCode::VanishingDenominator, "a torus weight is zero");
    return value.inverse();
}

WeightTable weight_table(const EngineParams& params) {
    if (params.t.size() != static_cast<std::size_t>(params.N) + 1) {
        throw Error(ErrorCode::DegenerateInput, "expected N + 1 torus weights");
    }
    WeightTable table;
    table.t = params.t;
    for (std::size_t j = 0; j < params.t.size(); ++j) {
        std::optional<std::int64_t> e;
        if (j < params.exponents.size()) e = params.exponents[j];
        table.t_inv.push_back(invert_weight(params.t[j], e, params.p));
    }
    table.w_inv = invert_weight(params.w, params.w_exponent, params.p);
    return table;
}

CyclotomicNumber power(const CyclotomicNumber& x, int n) {
    CyclotomicNumber out(x.prime(), 1L);
    for (int i = 0; i < n; ++i) out *= x;
    return out;
}

void check_index(const EngineParams& params, int i) {
    if (i < 0 || i > params.N) {
        throw Error(ErrorCode::IndexOutOfRange, "fixed point " + std::to_string(i) + " outside 0.." +
                                                    std::to_string(params.N));
    }
}

// Remove from `pool` one entry equal to each entry of `other` where possible.
// Returns the survivors of `other`.
std::vector<CyclotomicNumber> cancel_multiset(std::vector<CyclotomicNumber>& pool,
                                              const std::vector<CyclotomicNumber>& other) {
    std::vector<CyclotomicNumber> left;
    for (const auto& c : other) {
        auto it = std::find(pool.begin(), pool.end(), c);
        if (it != pool.end()) {
            pool.erase(it);
        } else {
            left.push_back(c);
        }
    }
    return left;
}

}  // namespace

EngineParams make_engine_params_from_exponents(int d, unsigned p, unsigned k, std::vector<std::int64_t> exponents,
                                               bool hodge_insertion) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (exponents.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two weights");
    EngineParams params;
    params.N = static_cast<int>(exponents.size()) - 1;
    params.d = d;
    params.p = p;
    params.k = k;
    for (auto& x : exponents) x = mod_floor(x, p);
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        for (std::size_t j = i + 1; j < exponents.size(); ++j) {
            if (exponents[i] == exponents[j]) {
                throw Error(ErrorCode::WeightCollision,
                            "t_" + std::to_string(i) + " = t_" + std::to_string(j) + " mod " + std::to_string(p));
            }
        }
    }
    params.exponents = std::move(exponents);
    for (auto x : params.exponents) params.t.push_back(CyclotomicNumber::zeta_power(p, x));
    params.w_exponent = mod_floor(static_cast<std::int64_t>(d - 1) * params.exponents[0] + params.exponents[1], p);
    params.w = CyclotomicNumber::zeta_power(p, params.w_exponent);
    params.hodge_insertion = hodge_insertion;
    return params;
}

EngineParams make_engine_params(const LoopData& ld, unsigned p, unsigned k, bool hodge_insertion) {
    const SubgroupAction action = subgroup_weights(ld, p, k);
    if (!action.isolated) {
        throw Error(ErrorCode::WeightCollision, "fixed points are not isolated for k = " + std::to_string(k));
    }
    return make_engine_params_from_exponents(ld.d, p, k, action.exponents, hodge_insertion);
}

EdgeEvaluation evaluate_edge(int i, int j, const EngineParams& params, int degree) {
    check_index(params, i);
    check_index(params, j);
    if (i == j) throw Error(ErrorCode::DegenerateInput, "edge endpoints coincide");
    if (degree != 1) {
        throw Error(ErrorCode::UnsupportedEdgeDegree,
                    "edge degree " + std::to_string(degree) + " needs fractional weights; only degree 1 is supported");
    }
    const unsigned p = params.p;
    EdgeEvaluation out;
    out.i = i;
    out.j = j;

    const WeightTable wt = weight_table(params);
    const CyclotomicNumber one(p, 1L);
    const auto& ti = wt.t[static_cast<std::size_t>(i)];
    const auto& tj = wt.t[static_cast<std::size_t>(j)];
    const auto& ti_inv = wt.t_inv[static_cast<std::size_t>(i)];
    const auto& tj_inv = wt.t_inv[static_cast<std::size_t>(j)];

    CyclotomicNumber numerator = one;
    for (int a = 0; a <= params.d; ++a) {
        const int b = params.d - a;
        const CyclotomicNumber factor = one - power(ti, a) * power(tj, b) * wt.w_inv;
        if (factor.is_zero()) {
            out.vanishing_numerator_factors.emplace_back(a, b);
        } else {
            numerator *= factor;
        }
    }

    auto certify = [&](std::string label, CyclotomicNumber value) {
        if (value.is_zero()) throw Error(ErrorCode::VanishingDenominator, label + " vanishes");
        out.denominator.push_back({std::move(label), std::move(value)});
    };
    const std::string si = std::to_string(i);
    const std::string sj = std::to_string(j);
    certify("2 - t" + sj + "/t" + si + " - t" + si + "/t" + sj, CyclotomicNumber(p, 2L) - tj * ti_inv - ti * tj_inv);
    for (int m = 0; m <= params.N; ++m) {
        if (m == i || m == j) continue;
        const auto& tm_inv = wt.t_inv[static_cast<std::size_t>(m)];
        const std::string sm = std::to_string(m);
        certify("1 - t" + si + "/t" + sm + " - t" + sj + "/t" + sm + " + t" + si + "t" + sj + "/t" + sm + "^2",
                one - ti * tm_inv - tj * tm_inv + ti * tj * tm_inv * tm_inv);
    }

    if (!out.vanishing_numerator_factors.empty()) {
        out.value = CyclotomicNumber(p);
        return out;
    }
    CyclotomicNumber denominator = one;
    for (const auto& f : out.denominator) denominator *= f.value;
    out.value = numerator / denominator;
    return out;
}

CyclotomicNumber edge_contrib(int i, int j, const EngineParams& params, int degree) {
    return evaluate_edge(i, j, params, degree).value;
}

VertexFactors flag_and_vertex_factors(const LocalizationGraph& graph, const EngineParams& params) {
    if (graph.vertices.size() != 2 || graph.edges.size() != 1 || graph.vertices[0].genus != 1 ||
        graph.vertices[1].genus != 0) {
        throw Error(ErrorCode::UnsupportedCase, "vertex factors exist only for the genus-one, degree-one graphs");
    }
    const unsigned p = params.p;
    const int i1 = graph.vertices[0].fixed_point;
    const int i2 = graph.vertices[1].fixed_point;
    check_index(params, i1);
    check_index(params, i2);
    const WeightTable wt = weight_table(params);
    const CyclotomicNumber one(p, 1L);
    const auto& ti = wt.t[static_cast<std::size_t>(i1)];

    VertexFactors vf;
    vf.fixed_point = i1;
    vf.hodge_parameter = power(ti, params.d) * wt.w_inv;

    // Flag: 1/(1 - (t_i1/t_i2) Psi) * prod_{m != i1}(1 - t_i1/t_m) / (1 - u).
    // Vertex with E = Psi_1: (1 - u)/(1 - u Psi) * prod_{m != i1} (1 - (t_i1/t_m) Psi)/(1 - t_i1/t_m).
    CyclotomicNumber scalar_num = one;
    CyclotomicNumber scalar_den = one;
    vf.before.denominator_coeffs.push_back(ti * wt.t_inv[static_cast<std::size_t>(i2)]);
    vf.before.denominator_coeffs.push_back(vf.hodge_parameter);
    for (int m = 0; m <= params.N; ++m) {
        if (m == i1) continue;
        const CyclotomicNumber ratio = ti * wt.t_inv[static_cast<std::size_t>(m)];
        vf.before.numerator_coeffs.push_back(ratio);
        scalar_num *= one - ratio;
        scalar_den *= one - ratio;
    }
    scalar_num *= one - vf.hodge_parameter;
    scalar_den *= one - vf.hodge_parameter;
    if (scalar_den.is_zero()) throw Error(ErrorCode::VanishingDenominator, "flag/vertex scalar factor vanishes");
    // The two products are the same factors in different order; the ratio is 1.
    if (!(scalar_num == scalar_den)) throw Error(ErrorCode::PreconditionFailure, "flag/vertex scalars disagree");
    vf.before.scalar = one;

    vf.after.numerator_coeffs = vf.before.numerator_coeffs;
    vf.after.denominator_coeffs = cancel_multiset(vf.after.numerator_coeffs, vf.before.denominator_coeffs);
    vf.after.scalar = one;
    if (vf.after.denominator_coeffs.size() > 1) {
        throw Error(ErrorCode::UncanceledPsiDenominator,
                    std::to_string(vf.after.denominator_coeffs.size()) +
                        " Psi-denominators remain; only one is covered by the M_{1,1} oracle");
    }
    return vf;
}

GraphContribution evaluate_graph(const LocalizationGraph& graph, const EngineParams& params) {
    if (graph.edges.size() != 1) throw Error(ErrorCode::UnsupportedCase, "only single-edge graphs are supported");
    GraphContribution out;
    out.graph = graph;
    const GraphEdge& edge = graph.edges.front();
    out.vertex = flag_and_vertex_factors(graph, params);
    out.edge = evaluate_edge(graph.vertices[static_cast<std::size_t>(edge.a)].fixed_point,
                             graph.vertices[static_cast<std::size_t>(edge.b)].fixed_point, params, edge.degree);

    VertexChiRequest request;
    request.hodge = params.hodge_insertion;
    if (!out.vertex.after.denominator_coeffs.empty()) request.psi_denominator = out.vertex.after.denominator_coeffs[0];
    request.psi_numerators = out.vertex.after.numerator_coeffs;
    out.chi = chi_vertex(request, params.p);
    out.total = out.chi.scaled(out.edge.value * out.vertex.after.scalar);
    return out;
}

HodgeRationalFunction assemble_graph(const LocalizationGraph& graph, const EngineParams& params) {
    return evaluate_graph(graph, params).total;
}

std::vector<GraphContribution> evaluate_graphs(const std::vector<LocalizationGraph>& graphs,
                                               const EngineParams& params, Execution exec) {
    std::vector<std::optional<GraphContribution>> slots(graphs.size());
    const long count = static_cast<long>(graphs.size());
    if (exec == Execution::serial) {
        for (long g = 0; g < count; ++g) slots[g] = evaluate_graph(graphs[g], params);
    } else {
        // Exceptions may not leave an OpenMP region; keep the first one by index.
        std::vector<std::exception_ptr> errors(graphs.size());
#pragma omp parallel for schedule(dynamic)
        for (long g = 0; g < count; ++g) {
            try {
                slots[g] = evaluate_graph(graphs[g], params);
            } catch (...) {
                errors[g] = std::current_exception();
            }
        }
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    std::vector<GraphContribution> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

HodgeRationalFunction sum_over_graphs(const std::vector<LocalizationGraph>& graphs, const EngineParams& params,
                                      Execution exec) {
    const auto parts = evaluate_graphs(graphs, params, exec);
    HodgeRationalFunction total =
        params.hodge_insertion
            ? HodgeRationalFunction(HodgePolynomial(params.p), canonical_denominator(params.p))
            : HodgeRationalFunction(params.p);
    for (const auto& part : parts) total = total + part.total;
    return total;
}

namespace {

struct PreparedSum {
    LoopData ld;
    std::vector<LocalizationGraph> graphs;
};

PreparedSum prepare(const GraphSumRequest& request) {
    PreparedSum prepared;
    prepared.ld = compute_loop_data(request.N, request.d);
    if (!is_prime(request.p)) throw Error(ErrorCode::NotPrime, std::to_string(request.p) + " is not prime");
    if (request.p == 2) throw Error(ErrorCode::EvenPrime, "order-2 actions are not supported");
    prepared.graphs = enumerate_graphs(request.g, request.n, request.beta, request.N);
    const QlReport report = validate_ql_preconditions(prepared.ld, request.p, request.g, request.beta,
                                                      request.assert_no_large_automorphisms);
    if (!report.all_pass()) throw Error(ErrorCode::PreconditionFailure, report.failures());
    return prepared;
}

}  // namespace

HodgeRationalFunction sum_over_graphs(const GraphSumRequest& request, Execution exec) {
    const PreparedSum prepared = prepare(request);
    const EngineParams params = make_engine_params(prepared.ld, request.p, request.k, request.hodge_insertion);
    return sum_over_graphs(prepared.graphs, params, exec);
}

std::vector<HodgeRationalFunction> conjugate_sweep(const GraphSumRequest& request, Execution exec) {
    const PreparedSum prepared = prepare(request);
    const long count = static_cast<long>(request.p) - 1;
    std::vector<std::optional<HodgeRationalFunction>> slots(static_cast<std::size_t>(count));
    auto one = [&](long idx) {
        const EngineParams params =
            make_engine_params(prepared.ld, request.p, static_cast<unsigned>(idx + 1), request.hodge_insertion);
        return sum_over_graphs(prepared.graphs, params, Execution::serial);
    };
    if (exec == Execution::serial) {
        for (long idx = 0; idx < count; ++idx) slots[idx] = one(idx);
    } else {
        std::vector<std::exception_ptr> errors(slots.size());
#pragma omp parallel for schedule(dynamic)
        for (long idx = 0; idx < count; ++idx) {
            try {
                slots[idx] = one(idx);
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    std::vector<HodgeRationalFunction> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

HodgePolynomial numerator_by_interpolation(const std::vector<LocalizationGraph>& graphs, const EngineParams& params) {
    const unsigned p = params.p;
    struct Term {
        CyclotomicNumber edge;
        std::vector<CyclotomicNumber> cs;
    };
    std::vector<Term> terms;
    std::size_t degree = 0;
    for (const auto& graph : graphs) {
        const VertexFactors vf = flag_and_vertex_factors(graph, params);
        const GraphEdge& edge = graph.edges.front();
        const CyclotomicNumber value =
            edge_contrib(graph.vertices[static_cast<std::size_t>(edge.a)].fixed_point,
                         graph.vertices[static_cast<std::size_t>(edge.b)].fixed_point, params, edge.degree);
        if (value.is_zero()) continue;
        if (!vf.after.denominator_coeffs.empty()) {
            throw Error(ErrorCode::UncanceledPsiDenominator, "interpolation needs graphs with no Psi-denominator");
        }
        degree = std::max(degree, vf.after.numerator_coeffs.size());
        terms.push_back({value, vf.after.numerator_coeffs});
    }

    // Samples at q = 0..degree, then Lagrange interpolation over Q(z).
    std::vector<CyclotomicNumber> samples;
    for (std::size_t s = 0; s <= degree; ++s) {
        const CyclotomicNumber q(p, static_cast<long>(s));
        CyclotomicNumber acc(p);
        for (const auto& term : terms) {
            CyclotomicNumber prod = term.edge;
            for (const auto& c : term.cs) prod *= CyclotomicNumber(p, 1L) + c * q;
            acc += prod;
        }
        samples.push_back(acc);
    }
    HodgePolynomial result(p);
    for (std::size_t s = 0; s <= degree; ++s) {
        HodgePolynomial basis = HodgePolynomial::constant(CyclotomicNumber(p, 1L));
        Rational scale(1);
        for (std::size_t r = 0; r <= degree; ++r) {
            if (r == s) continue;
            basis = basis * HodgePolynomial::rational(p, {-static_cast<long>(r), 1});
            scale *= Rational(static_cast<long>(s) - static_cast<long>(r));
        }
        result = result + basis.scaled(samples[s].scaled(1 / scale));
    }
    return result;
}

}  // namespace kgw
