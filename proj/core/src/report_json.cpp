#include "perfgap/report_json.hpp"

#include <cstdio>
#include <sstream>

#include "json_int.hpp"

namespace perfgap {

namespace {

using Json = nlohmann::ordered_json;
using detail::big_to_json;

template <typename T>
Json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, BigInt>) {
        return big_to_json(*v);
    } else {
        return std::string(to_string(*v));
    }
}

Json solutions_json(const std::vector<RNSolution>& sols) {
    Json out = Json::array();
    for (const auto& s : sols) out.push_back(Json::array({big_to_json(s.x), s.n}));
    return out;
}

Json equation_json(const RNEquation& eq) {
    return Json{{"d", big_to_json(eq.d())}, {"c", big_to_json(eq.c())}, {"text", eq.to_string()}};
}

Json sieve_json(const SieveReport& r) {
    return Json{{"rule", "sieve"},
                {"modulus", r.modulus},
                {"n_min", r.n_min},
                {"parity", to_string(r.parity)},
                {"n_threshold", r.n_threshold},
                {"period", r.period},
                {"class_modulus", r.class_modulus},
                {"surviving_classes", r.surviving_classes},
                {"small_n_to_check", r.small_n_to_check}};
}

struct CertificateJson {
    Json operator()(const TableCitation& t) const {
        return Json{{"rule", "completeness_table"}, {"source", t.source}, {"complete_set", solutions_json(t.complete_set)}};
    }
    Json operator()(const AdjacentPowersRule& a) const {
        return Json{{"rule", "adjacent_powers"},
                    {"form", a.plus_one ? "x^2 + 1 = 2^m" : "x^2 - 1 = 2^m"},
                    {"shift", a.shift},
                    {"complete_set", solutions_json(a.complete_set)}};
    }
    Json operator()(const SieveReport& s) const { return sieve_json(s); }
    Json operator()(const ClassIntersection& c) const {
        return Json{{"rule", "class_intersection"},
                    {"n_from", c.n_from},
                    {"class_modulus", c.class_modulus},
                    {"surviving_classes", c.surviving_classes}};
    }
    Json operator()(const FiniteCheck& f) const {
        return Json{{"rule", "finite_check"}, {"n_values", f.n_values}, {"solutions", solutions_json(f.solutions)}};
    }
    Json operator()(const PrimeClassClosure& p) const {
        return Json{{"rule", "prime_class_closure"},
                    {"residue", p.residue},
                    {"class_modulus", p.class_modulus},
                    {"gcd", p.gcd},
                    {"checked_prime", p.checked_prime ? Json(*p.checked_prime) : Json(nullptr)}};
    }
    Json operator()(const SearchBound& s) const {
        return Json{{"rule", "search_bound"}, {"n_min", s.n_min}, {"n_max", s.n_max}, {"solutions", solutions_json(s.solutions)}};
    }
};

Json branch_status_json(const BranchStatus& st) {
    Json trace = Json::array();
    for (const auto& cert : st.rule_trace) trace.push_back(std::visit(CertificateJson{}, cert));
    return Json{{"equation", equation_json(st.equation)},
                {"status", to_string(st.status)},
                {"solutions", solutions_json(st.solutions)},
                {"rule_trace", std::move(trace)}};
}

Json config_object(const DecideConfig& cfg) {
    Json table = Json::parse("[" + [&] {
        std::string joined;
        std::istringstream lines(cfg.table.serialize());
        for (std::string line; std::getline(lines, line);) {
            if (!joined.empty()) joined += ',';
            joined += line;
        }
        return joined;
    }() + "]");
    return Json{{"n_max", cfg.n_max},
                {"moduli", cfg.moduli},
                {"mersenne_exponent_cap", cfg.mersenne_exponent_cap},
                {"trial_division_bound", cfg.budget.trial_division_bound},
                {"rho_iteration_budget", cfg.budget.rho_iteration_budget},
                {"primality_rounds", cfg.budget.primality_rounds},
                {"table", std::move(table)}};
}

std::string solution_list_text(const std::vector<RNSolution>& sols) {
    if (sols.empty()) return "none";
    std::string out;
    for (const auto& s : sols) {
        if (!out.empty()) out += ", ";
        out += "(" + s.x.get_str() + "," + std::to_string(s.n) + ")";
    }
    return out;
}

template <typename Range>
std::string join(const Range& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ",";
        out += std::to_string(v);
    }
    return out;
}

struct CertificateText {
    std::string operator()(const TableCitation& t) const {
        return "table: complete set " + solution_list_text(t.complete_set) + " [" + t.source + "]";
    }
    std::string operator()(const AdjacentPowersRule& a) const {
        return std::string("adjacent powers: ") + (a.plus_one ? "x^2 + 1" : "x^2 - 1") + " = 2^(n-" +
               std::to_string(a.shift) + "), complete set " + solution_list_text(a.complete_set);
    }
    std::string operator()(const SieveReport& s) const {
        return "sieve mod " + std::to_string(s.modulus) + ": n >= " + std::to_string(std::max(s.n_min, s.n_threshold)) +
               ", classes mod " + std::to_string(s.class_modulus) + " surviving {" + join(s.surviving_classes) + "}";
    }
    std::string operator()(const ClassIntersection& c) const {
        return "combined: n >= " + std::to_string(c.n_from) + ", classes mod " + std::to_string(c.class_modulus) +
               " surviving {" + join(c.surviving_classes) + "}";
    }
    std::string operator()(const FiniteCheck& f) const {
        return "checked n in {" + join(f.n_values) + "}: " + solution_list_text(f.solutions);
    }
    std::string operator()(const PrimeClassClosure& p) const {
        std::string out = "class " + std::to_string(p.residue) + " mod " + std::to_string(p.class_modulus) +
                          ": gcd " + std::to_string(p.gcd) + ", ";
        return out + (p.checked_prime ? "only prime n = " + std::to_string(*p.checked_prime) + " (checked)" : "no prime n");
    }
    std::string operator()(const SearchBound& s) const {
        return "search n in [" + std::to_string(s.n_min) + ", " + std::to_string(s.n_max) + "]: " +
               solution_list_text(s.solutions);
    }
};

}  // namespace

std::string to_json(const std::vector<RNSolution>& solutions) {
    return solutions_json(solutions).dump();
}

std::string to_json(const SieveReport& report, int indent) {
    Json j{{"equation", equation_json(report.equation)}};
    const Json fields = sieve_json(report);
    for (const auto& [k, v] : fields.items()) {
        if (k != "rule") j[k] = v;
    }
    return j.dump(indent);
}

std::string to_json(const BranchStatus& status, int indent) {
    return branch_status_json(status).dump(indent);
}

std::string config_json(const DecideConfig& cfg) {
    return config_object(cfg).dump();
}

std::string config_fingerprint(const DecideConfig& cfg) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config_json(cfg)) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string to_json(const DecisionReport& r, int indent) {
    const CaseAnalysis& ca = r.case_analysis;
    Json j;
    j["delta"] = big_to_json(r.delta);
    j["verdict"] = to_string(r.verdict);
    j["case_analysis"] = Json{{"touchard_blocked", ca.touchard_blocked},
                              {"mod4_class", ca.mod4_class},
                              {"b", optional_json(ca.b)},
                              {"in_scope", ca.in_scope}};
    if (r.delta_plus_6_check) {
        j["delta_plus_6_check"] = Json{{"value", big_to_json(r.delta_plus_6_check->value)},
                                       {"euler_filter", to_string(r.delta_plus_6_check->euler_filter)},
                                       {"perfect_status", to_string(r.delta_plus_6_check->perfect_status)}};
    } else {
        j["delta_plus_6_check"] = nullptr;
    }
    j["p_min"] = r.p_min;

    Json branches = Json::array();
    for (const auto& br : r.branches) {
        Json b{{"side", to_string(br.side)}, {"d", big_to_json(br.d)}, {"c", big_to_json(br.c)}};
        const Json status = branch_status_json(br.status);
        for (const auto& [k, v] : status.items()) b[k] = v;
        branches.push_back(std::move(b));
    }
    j["branches"] = std::move(branches);

    Json candidates = Json::array();
    for (const auto& c : r.candidates) {
        candidates.push_back(Json{{"p", c.p},
                                  {"mersenne_status", to_string(c.mersenne_status)},
                                  {"m", optional_json(c.m)},
                                  {"n_candidate", optional_json(c.n_candidate)},
                                  {"euler_filter", optional_json(c.euler_filter)},
                                  {"perfect_status", optional_json(c.perfect_status)}});
    }
    j["candidates"] = std::move(candidates);

    Json certs = Json::array();
    if (ca.touchard_blocked) {
        certs.push_back(Json{{"rule", "touchard"}, {"delta_mod_12", mpz_fdiv_ui(r.delta.get_mpz_t(), 12)}});
    }
    if (r.delta_plus_6_check) {
        certs.push_back(Json{{"rule", "delta_plus_6"},
                             {"value", big_to_json(r.delta_plus_6_check->value)},
                             {"perfect_status", to_string(r.delta_plus_6_check->perfect_status)}});
    }
    for (const auto& p : r.pruned) {
        certs.push_back(Json{{"rule", "two_adic_pruning"},
                             {"side", to_string(p.side)},
                             {"d", big_to_json(p.d)},
                             {"c", big_to_json(p.c)},
                             {"c_valuation", p.c_valuation},
                             {"required_d_valuation_parity", p.c_valuation % 2},
                             {"checked_p", p.checked_p}});
    }
    j["certificates"] = std::move(certs);
    j["notes"] = r.notes;
    if (r.witness) {
        j["witness"] = Json::array({big_to_json(r.witness->first), big_to_json(r.witness->second)});
    } else {
        j["witness"] = nullptr;
    }
    j["config"] = config_object(r.config);
    j["config_fingerprint"] = config_fingerprint(r.config);
    return j.dump(indent);
}

std::string render_text(const SieveReport& r) {
    std::ostringstream out;
    out << r.equation.to_string() << " modulo " << r.modulus << "\n";
    out << "  2^n mod " << r.modulus << ": pre-period " << r.n_threshold << ", period " << r.period << "\n";
    out << "  parity: " << to_string(r.parity) << ", n_min: " << r.n_min << "\n";
    if (r.surviving_classes.empty()) {
        out << "  surviving classes: none\n";
    } else {
        out << "  surviving classes mod " << r.class_modulus << ": {" << join(r.surviving_classes) << "}\n";
    }
    out << "  small n to check: {" << join(r.small_n_to_check) << "}\n";
    return out.str();
}

std::string render_text(const DecisionReport& r) {
    std::ostringstream out;
    const CaseAnalysis& ca = r.case_analysis;
    out << "delta = " << r.delta.get_str() << "\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    out << "case: " << r.delta.get_str() << " == " << ca.mod4_class << " (mod 4)";
    if (ca.b) out << ", triangular with b = " << ca.b->get_str();
    if (ca.touchard_blocked) out << ", blocked mod 12";
    out << "\n";
    if (r.delta_plus_6_check) {
        out << "delta + 6 = " << r.delta_plus_6_check->value.get_str() << ": "
            << to_string(r.delta_plus_6_check->perfect_status) << "\n";
    }
    if (!r.branches.empty() || !r.pruned.empty()) out << "exponents p >= " << r.p_min << "\n";
    for (const auto& p : r.pruned) {
        const std::string value = p.c < 0 ? "2^p + " + BigInt(-p.c).get_str() : "2^p - " + p.c.get_str();
        out << "pruned (" << to_string(p.side) << ", d=" << p.d.get_str() << "): v2(" << value << ") = " << p.c_valuation << " for p > " << p.c_valuation << ", v2(d) has the wrong parity\n";
    }
    for (const auto& br : r.branches) {
        out << "branch (" << to_string(br.side) << ", d=" << br.d.get_str() << ") " << br.status.equation.to_string()
            << ": " << to_string(br.status.status) << ", solutions " << solution_list_text(br.status.solutions) << "\n";
        for (const auto& cert : br.status.rule_trace) out << "    " << std::visit(CertificateText{}, cert) << "\n";
    }
    for (const auto& c : r.candidates) {
        out << "candidate p = " << c.p << ": 2^p - 1 " << to_string(c.mersenne_status);
        if (c.m) out << ", m = " << c.m->get_str();
        if (c.n_candidate) out << ", m - delta = " << c.n_candidate->get_str();
        if (c.perfect_status) out << " " << to_string(*c.perfect_status);
        out << "\n";
    }
    for (const auto& note : r.notes) out << "note: " << note << "\n";
    if (r.witness) {
        out << "perfect pair: " << r.witness->first.get_str() << " - " << r.witness->second.get_str() << "\n";
    }
    out << "config: " << config_fingerprint(r.config) << "\n";
    return out.str();
}

}  // namespace perfgap
