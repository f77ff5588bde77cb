#include "kgw/json_io.hpp"

#include <fstream>
#include <sstream>

#include "kgw/errors.hpp"

namespace kgw {

namespace {

Json meta_json(const CaseMeta& m) {
    return Json{{"g", m.g}, {"n", m.n}, {"beta", m.beta}, {"N", m.N}, {"d", m.d}, {"realization", m.realization}};
}

template <class T>
T required(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("key '") + key + "': " + e.what());
    }
}

std::string monomial_key(const std::vector<std::string>& labels, const std::vector<int>& degrees) {
    if (labels.empty()) return "1";
    std::ostringstream os;
    for (std::size_t r = 0; r < labels.size(); ++r) os << (r ? " " : "") << labels[r] << "^" << degrees[r];
    return os.str();
}

}  // namespace

Json to_json(const CongruenceResult& result) {
    Json traces = Json::array();
    for (const auto& t : result.exact_traces) traces.push_back(t.get_str());
    return Json{{"kind", "congruence"},
                {"modulus", result.modulus},
                {"prefactor", result.prefactor},
                {"residues", result.residues},
                {"exact_traces", traces},
                {"meta", meta_json(result.meta)}};
}

CongruenceResult congruence_from_json(const Json& j) {
    if (required<int>(j, "schema") != kSchemaVersion) throw Error(ErrorCode::InvalidConfig, "unknown schema version");
    CongruenceResult r;
    r.modulus = required<std::int64_t>(j, "modulus");
    if (r.modulus < 1) throw Error(ErrorCode::InvalidConfig, "modulus must be positive");
    r.prefactor = required<std::string>(j, "prefactor");
    if (!is_registered_prefactor(r.prefactor)) {
        throw Error(ErrorCode::UnregisteredPrefactor, "prefactor '" + r.prefactor + "'");
    }
    r.residues = required<std::vector<std::int64_t>>(j, "residues");
    for (auto v : r.residues) {
        if (v < 0 || v >= r.modulus) throw Error(ErrorCode::InvalidConfig, "residue outside [0, modulus)");
    }
    for (const auto& s : required<std::vector<std::string>>(j, "exact_traces")) {
        Integer v;
        if (v.set_str(s, 10) != 0) throw Error(ErrorCode::InvalidConfig, "bad integer '" + s + "'");
        r.exact_traces.push_back(v);
    }
    const Json meta = required<Json>(j, "meta");
    r.meta.g = required<int>(meta, "g");
    r.meta.n = required<int>(meta, "n");
    r.meta.beta = required<int>(meta, "beta");
    r.meta.N = required<int>(meta, "N");
    r.meta.d = required<int>(meta, "d");
    r.meta.realization = required<std::string>(meta, "realization");
    return r;
}

Json to_json(const LoopData& ld, const std::vector<unsigned>& primes) {
    Json ps = Json::array();
    for (unsigned p : primes) {
        Json entry{{"p", p}};
        if (p == 2) {
            entry["supported"] = false;
        } else {
            const BoundCertificate b = bounds_for_prime(p);
            entry["supported"] = true;
            entry["isolated_all_k"] = isolated_for_all_k(ld, p);
            entry["g_max"] = b.g_max;
            entry["beta_max"] = b.beta_max;
        }
        ps.push_back(entry);
    }
    return Json{{"kind", "analysis"}, {"N", ld.N}, {"d", ld.d}, {"u", ld.u}, {"Mbar", ld.Mbar}, {"M", ld.M},
                {"primes", ps}};
}

Json to_json(const QlReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return Json{{"all_pass", report.all_pass()}, {"checks", checks}};
}

Json to_json(const LocalizationGraph& graph) {
    Json vs = Json::array();
    for (const auto& v : graph.vertices) vs.push_back(Json{{"fp", v.fixed_point}, {"genus", v.genus}, {"n_marks", v.marks}});
    Json es = Json::array();
    for (const auto& e : graph.edges) es.push_back(Json{{"v_a", e.a}, {"v_b", e.b}, {"degree", e.degree}});
    return Json{{"vertices", vs}, {"edges", es}, {"aut_order", graph.aut_order}};
}

Json to_json(const std::vector<LocalizationGraph>& graphs) {
    Json out = Json::array();
    for (const auto& g : graphs) out.push_back(to_json(g));
    return out;
}

Json to_json(const HodgeRationalFunction& f) {
    Json num = Json::array();
    for (const auto& c : f.numerator().coefficients()) num.push_back(c.to_string());
    Json den = Json::array();
    for (const auto& c : f.denominator().coefficients()) den.push_back(c.to_string());
    return Json{{"numerator", num}, {"denominator", den}};
}

namespace {

Json psi_json(const PsiFactorList& list) {
    Json num = Json::array();
    for (const auto& c : list.numerator_coeffs) num.push_back(c.to_string());
    Json den = Json::array();
    for (const auto& c : list.denominator_coeffs) den.push_back(c.to_string());
    return Json{{"numerator", num}, {"denominator", den}, {"scalar", list.scalar.to_string()}};
}

}  // namespace

Json to_json(const GraphContribution& c) {
    Json vanishing = Json::array();
    for (const auto& [a, b] : c.edge.vanishing_numerator_factors) vanishing.push_back(Json::array({a, b}));
    Json certs = Json::array();
    for (const auto& f : c.edge.denominator) certs.push_back(Json{{"factor", f.label}, {"value", f.value.to_string()}});
    return Json{{"graph", to_json(c.graph)},
                {"edge", Json{{"value", c.edge.value.to_string()},
                              {"vanishing_numerator_factors", vanishing},
                              {"denominator_certificates", certs}}},
                {"psi_before", psi_json(c.vertex.before)},
                {"psi_after", psi_json(c.vertex.after)},
                {"hodge_parameter", c.vertex.hodge_parameter.to_string()},
                {"chi", to_json(c.chi)},
                {"total", to_json(c.total)}};
}

Json to_json(const CrosscheckReport& r) {
    return Json{{"b1_max_relative_deviation", r.b1_max_relative_deviation},
                {"trace_max_relative_deviation", r.trace_max_relative_deviation},
                {"b1_tolerance", r.b1_tolerance},
                {"trace_tolerance", r.trace_tolerance},
                {"pass", r.pass}};
}

Json to_json(const IdentityReport& r) {
    return Json{{"equal", r.equal},
                {"coefficients_compared", r.coefficients_compared},
                {"mismatches", r.mismatches},
                {"first_mismatch", r.first_mismatch}};
}

Json to_json(const B41Report& r) {
    Json coeffs = Json::object();
    for (const auto& [m, v] : r.coefficients) coeffs[monomial_key(r.labels, m)] = to_fraction_string(v);
    return Json{{"p", r.p},
                {"weights", r.weights},
                {"reduced_weights", r.invariance.reduced},
                {"invariance_pass", r.invariance.pass},
                {"coefficients", coeffs}};
}

std::string emit_json(Json document) {
    document["schema"] = kSchemaVersion;
    return document.dump(2) + "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
    }
}

}  // namespace kgw
