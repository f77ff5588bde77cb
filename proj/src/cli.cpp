#include "kgw/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "kgw/congruence.hpp"
#include "kgw/contributions.hpp"
#include "kgw/errors.hpp"
#include "kgw/fjrw_formal.hpp"
#include "kgw/graphs.hpp"
#include "kgw/json_io.hpp"
#include "kgw/number_theory.hpp"
#include "kgw/symmetry.hpp"

namespace kgw {

std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                              std::ostream& err) {
    CLI::App app{"Congruences of K-theoretic Gromov-Witten invariants of loop hypersurfaces"};
    app.set_config("--config", "", "INI/TOML file of key = value defaults (flags override it)");
    app.require_subcommand(1, 1);

    app.add_option("--N", config.N, "ambient dimension of P^N");
    app.add_option("--d", config.d, "hypersurface degree");
    app.add_option("--g", config.g, "genus");
    app.add_option("--n", config.n, "number of markings");
    app.add_option("--beta", config.beta, "curve degree");
    app.add_option("--prime", config.prime, "order of the cyclic subgroup");
    app.add_option("--conjugate", config.conjugate, "conjugate index k, or 'all'");
    app.add_flag("--hodge,!--no-hodge", config.hodge, "insert 1/(1 - q E^v) (default on)");
    app.add_flag("--paranoid", config.paranoid, "recompute every conjugate and compare");
    app.add_flag("--dump-graphs", config.dump_graphs, "include the fixed-locus graphs in the output");
    app.add_flag("--assert-no-large-automorphisms", config.assert_no_large_automorphisms,
                 "replace the genus bound by the caller's automorphism-order assertion");
    app.add_flag("-v,--verbose", config.verbosity, "per-graph contribution dump (repeatable)");
    app.add_option("-o,--output", config.output_path, "write JSON here instead of standard output");
    app.add_option("--bundle", config.bundle, "formal bundle, e.g. 'a:1,b:-2'");
    app.add_option("--trunc-t", config.trunc_t, "t truncation for the lambda identity");
    app.add_option("--trunc-x", config.trunc_x, "degree truncation in each root variable");
    app.add_option("--weights", config.weights, "loop weights a_1..a_5")->delimiter(',');

    auto* analyze = app.add_subcommand("analyze", "symmetry data of the loop hypersurface")->fallthrough();
    auto* compute = app.add_subcommand("compute", "invariant modulo the prime")->fallthrough();
    auto* crt = app.add_subcommand("crt", "combine congruence results")->fallthrough();
    crt->add_option("files", config.inputs, "result JSON files")->required()->check(CLI::ExistingFile);
    auto* verify = app.add_subcommand("verify", "floating cross-check and Galois comparison")->fallthrough();
    auto* fjrw = app.add_subcommand("fjrw-check", "formal-series identity suite")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e, out, err);
        return status == 0 ? 0 : 2;
    }
    if (analyze->parsed()) config.command = Command::analyze;
    if (compute->parsed()) config.command = Command::compute;
    if (crt->parsed()) config.command = Command::crt;
    if (verify->parsed()) config.command = Command::verify;
    if (fjrw->parsed()) config.command = Command::fjrw_check;
    return std::nullopt;
}

namespace {

struct Outcome {
    Json document;
    int status = 0;
};

void validate_common(const RunConfig& c) {
    if (c.g < 0 || c.n < 0 || c.beta < 0) throw Error(ErrorCode::InvalidConfig, "g, n, beta must be nonnegative");
    if (c.N < 1) throw Error(ErrorCode::DegenerateInput, "N must be at least 1");
    if (c.d < 3) throw Error(ErrorCode::DegenerateInput, "d must be at least 3");
    if (!is_prime(c.prime)) throw Error(ErrorCode::NotPrime, std::to_string(c.prime) + " is not prime");
    if (c.prime == 2) throw Error(ErrorCode::EvenPrime, "order-2 actions are not supported");
}

// 0 means "all".
unsigned parse_conjugate(const RunConfig& c) {
    if (c.conjugate == "all") return 0;
    long k = 0;
    try {
        std::size_t used = 0;
        k = std::stol(c.conjugate, &used);
        if (used != c.conjugate.size()) throw std::invalid_argument(c.conjugate);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "--conjugate takes an index or 'all', got '" + c.conjugate + "'");
    }
    if (k < 1 || k >= static_cast<long>(c.prime)) {
        throw Error(ErrorCode::InvalidConfig, "--conjugate must lie in 1.." + std::to_string(c.prime - 1));
    }
    return static_cast<unsigned>(k);
}

GraphSumRequest request_from(const RunConfig& c, unsigned k) {
    GraphSumRequest r;
    r.g = c.g;
    r.n = c.n;
    r.beta = c.beta;
    r.N = c.N;
    r.d = c.d;
    r.p = c.prime;
    r.k = k;
    r.hodge_insertion = c.hodge;
    r.assert_no_large_automorphisms = c.assert_no_large_automorphisms;
    return r;
}

void check_orbit(const HodgeRationalFunction& b1, const std::vector<HodgeRationalFunction>& orbit) {
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        const unsigned k = static_cast<unsigned>(i + 1);
        if (!(orbit[i] == b1.conjugate(k))) {
            throw Error(ErrorCode::ParanoidMismatch, "B_" + std::to_string(k) + " differs from sigma_" +
                                                         std::to_string(k) + "(B_1)");
        }
    }
}

Outcome do_analyze(const RunConfig& c) {
    if (c.N < 2 || c.d < 3) throw Error(ErrorCode::DegenerateInput, "loop data needs N >= 2 and d >= 3");
    const LoopData ld = compute_loop_data(c.N, c.d);
    std::vector<unsigned> primes;
    for (auto p : prime_divisors(ld.M)) primes.push_back(static_cast<unsigned>(p));
    Json doc = to_json(ld, primes);
    if (is_prime(c.prime) && c.prime != 2) {
        doc["preconditions"] = to_json(validate_ql_preconditions(ld, c.prime, c.g, c.beta, c.assert_no_large_automorphisms));
        doc["preconditions"]["p"] = c.prime;
    }
    return {doc, 0};
}

Outcome do_compute(const RunConfig& c) {
    validate_common(c);
    const unsigned k = parse_conjugate(c);
    const CaseMeta meta_base{c.g, c.n, c.beta, c.N, c.d, ""};

    if (c.prime == static_cast<unsigned>(c.d) && static_cast<int>(c.prime) > c.N) {
        VanishingOptions options;
        options.hodge_insertion = c.hodge;
        const bool flagship = c.g == 1 && c.n == 0 && c.beta == 1 && c.hodge;
        options.residue_count = flagship ? static_cast<std::size_t>(std::max(c.N - 1, 1)) : 1;
        CongruenceResult result = vanishing_by_empty_fixed_locus(c.N, c.d, c.prime, c.g, c.beta, options);
        result.meta.n = c.n;
        return {to_json(result), 0};
    }

    if (c.N < 2) throw Error(ErrorCode::DegenerateInput, "loop realization needs N >= 2");
    compute_loop_data(c.N, c.d);
    const auto graphs = enumerate_graphs(c.g, c.n, c.beta, c.N);
    CaseMeta meta = meta_base;
    meta.realization = "loop";

    const GraphSumRequest request = request_from(c, k == 0 ? 1 : k);
    const HodgeRationalFunction bk = sum_over_graphs(request);
    CongruenceResult result = invariant_mod_p(bk, c.prime, meta);

    if (k == 0 || c.paranoid) {
        const auto orbit = conjugate_sweep(request);
        const CongruenceResult from_orbit = invariant_from_orbit(orbit, c.prime, meta);
        if (c.paranoid) {
            check_orbit(orbit.front(), orbit);
            if (!(from_orbit == result)) throw Error(ErrorCode::ParanoidMismatch, "orbit sum disagrees with the trace");
        }
        result = from_orbit;
    }

    Json doc = to_json(result);
    if (c.dump_graphs) doc["graphs"] = to_json(graphs);
    if (c.verbosity > 0) {
        const LoopData ld = compute_loop_data(c.N, c.d);
        const EngineParams params = make_engine_params(ld, c.prime, request.k, c.hodge);
        Json parts = Json::array();
        for (const auto& part : evaluate_graphs(graphs, params)) parts.push_back(to_json(part));
        doc["contributions"] = parts;
    }
    return {doc, 0};
}

Outcome do_crt(const RunConfig& c) {
    std::vector<CongruenceResult> parts;
    for (const auto& path : c.inputs) parts.push_back(congruence_from_json(read_json_file(path)));
    return {to_json(crt_combine(parts)), 0};
}

Outcome do_verify(const RunConfig& c) {
    validate_common(c);
    enumerate_graphs(c.g, c.n, c.beta, c.N);
    const GraphSumRequest request = request_from(c, 1);
    const CrosscheckReport report = numeric_crosscheck(request, true);
    const auto orbit = conjugate_sweep(request);
    check_orbit(orbit.front(), orbit);
    Json doc{{"kind", "verification"},
             {"crosscheck", to_json(report)},
             {"galois_equivariance", Json{{"pass", true}, {"conjugates_checked", orbit.size()}}}};
    return {doc, 0};
}

Outcome do_fjrw(const RunConfig& c) {
    if (!is_prime(c.prime) || c.prime == 2) throw Error(ErrorCode::NotPrime, "fjrw-check needs an odd prime");
    const FormalBundle bundle = parse_bundle(c.bundle);
    const IdentityReport identity = lambda_vs_adams_identity(bundle, c.trunc_t, c.trunc_x);

    std::vector<long> reduced;
    for (long a : c.weights) {
        const long r = static_cast<long>(mod_floor(a, c.prime));
        if (r == 0) throw Error(ErrorCode::WeightNotCoprime, "weight " + std::to_string(a) + " is divisible by p");
        reduced.push_back(r);
    }
    const TSeries series = cclass_product(bundle, reduced, c.trunc_x);
    bool finite_at_roots = true;
    Json root_pole = nullptr;
    for (unsigned k = 1; k < c.prime && finite_at_roots; ++k) {
        if (auto pole = find_pole_at_root(series, c.prime, k)) {
            finite_at_roots = false;
            root_pole = Json{{"point", pole->point}, {"order", pole->order}, {"factors", pole->factors}};
        }
    }
    const auto pole_one = find_pole_at_one(series);
    bool has_negative = false;
    for (const auto& r : bundle.roots) has_negative = has_negative || r.multiplicity < 0;

    const B41Report b41 = b41_combination(bundle, c.weights, c.trunc_x, c.prime);
    const bool pass = identity.equal && finite_at_roots && pole_one.has_value() == has_negative && b41.invariance.pass;

    Json doc{{"kind", "fjrw-check"},
             {"bundle", c.bundle},
             {"lambda_adams", to_json(identity)},
             {"poles",
              Json{{"finite_at_all_primitive_roots", finite_at_roots},
                   {"first_root_pole", root_pole},
                   {"pole_at_one", pole_one.has_value()},
                   {"pole_at_one_order", pole_one ? pole_one->order : 0},
                   {"expected_pole_at_one", has_negative}}},
             {"b41", to_json(b41)},
             {"pass", pass}};
    return {doc, pass ? 0 : 5};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Outcome outcome;
        switch (config.command) {
            case Command::analyze: outcome = do_analyze(config); break;
            case Command::compute: outcome = do_compute(config); break;
            case Command::crt: outcome = do_crt(config); break;
            case Command::verify: outcome = do_verify(config); break;
            case Command::fjrw_check: outcome = do_fjrw(config); break;
        }
        const std::string text = emit_json(std::move(outcome.document));
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) throw Error(ErrorCode::InvalidConfig, "cannot write " + *config.output_path);
            file << text;
        } else {
            out << text;
        }
        return outcome.status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kgw
