#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_int.hpp"
#include "perfgap/rn_solver.hpp"

namespace perfgap {

namespace {

// Entries must account for every solution this small; catches typos in
// hand-written tables.
constexpr std::uint64_t kVerifyUpTo = 256;

using Json = nlohmann::ordered_json;

TableEntry entry_from_json(const Json& j) {
    if (!j.is_object()) throw std::runtime_error("entry must be a JSON object");
    for (const char* key : {"d", "c", "solutions", "source"}) {
        if (!j.contains(key)) throw std::runtime_error(std::string("missing field \"") + key + "\"");
    }
    RNEquation eq(detail::big_from_json(j.at("d")), detail::big_from_json(j.at("c")));
    std::vector<RNSolution> sols;
    for (const auto& s : j.at("solutions")) {
        if (!s.is_array() || s.size() != 2) throw std::runtime_error("solution must be a pair [x, n]");
        const BigInt n = detail::big_from_json(s[1]);
        if (n < 0 || !mpz_fits_ulong_p(n.get_mpz_t())) throw std::runtime_error("exponent out of range");
        sols.push_back({detail::big_from_json(s[0]), mpz_get_ui(n.get_mpz_t())});
    }
    if (!j.at("source").is_string() || j.at("source").get<std::string>().empty()) {
        throw std::runtime_error("source must be a non-empty citation string");
    }
    return {std::move(eq), std::move(sols), j.at("source").get<std::string>()};
}

Json entry_to_json(const TableEntry& e) {
    Json j;
    j["d"] = detail::big_to_json(e.equation.d());
    j["c"] = detail::big_to_json(e.equation.c());
    Json sols = Json::array();
    for (const auto& s : e.complete_solutions) sols.push_back(Json::array({detail::big_to_json(s.x), s.n}));
    j["solutions"] = std::move(sols);
    j["source"] = e.source;
    return j;
}

}  // namespace

CompletenessTable CompletenessTable::builtin() {
    CompletenessTable table;
    table.add({RNEquation(5, 3),
               {{BigInt(1), 3}, {BigInt(5), 7}},
               "M. Le, complete solution of 5x^2 + 3 = 2^n"});
    table.add({RNEquation(2, 6),
               {{BigInt(1), 3}},
               "elementary: 2x^2 + 6 = 2^n gives x^2 + 3 = 2^(n-1); x odd, so mod 8 rules out n >= 4"});
    return table;
}

void CompletenessTable::add(TableEntry entry) {
    auto& sols = entry.complete_solutions;
    for (auto& s : sols) s.x = abs(s.x);
    std::sort(sols.begin(), sols.end());
    sols.erase(std::unique(sols.begin(), sols.end()), sols.end());

    for (const auto& s : sols) {
        if (s.x < 1) throw std::invalid_argument("table solutions need x >= 1");
        if (!satisfies(entry.equation, s)) {
            throw std::invalid_argument("(" + s.x.get_str() + ", " + std::to_string(s.n) +
                                        ") does not satisfy " + entry.equation.to_string());
        }
    }
    for (const auto& s : direct_search(entry.equation, 0, kVerifyUpTo)) {
        if (!std::binary_search(sols.begin(), sols.end(), s)) {
            throw std::invalid_argument("table entry for " + entry.equation.to_string() + " misses (" +
                                        s.x.get_str() + ", " + std::to_string(s.n) + ")");
        }
    }
    if (const TableEntry* existing = find(entry.equation)) {
        if (existing->complete_solutions != sols) {
            throw std::invalid_argument("conflicting table entries for " + entry.equation.to_string());
        }
        return;
    }
    entries_.push_back(std::move(entry));
}

void CompletenessTable::merge(const CompletenessTable& other) {
    for (const auto& e : other.entries_) add(e);
}

const TableEntry* CompletenessTable::find(const RNEquation& eq) const {
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const TableEntry& e) { return e.equation == eq; });
    return it == entries_.end() ? nullptr : &*it;
}

CompletenessTable CompletenessTable::parse(std::string_view text) {
    CompletenessTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            table.add(entry_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("completeness table line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return table;
}

CompletenessTable CompletenessTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open completeness table " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string CompletenessTable::serialize() const {
    std::string out;
    for (const auto& e : entries_) {
        out += entry_to_json(e).dump();
        out += '\n';
    }
    return out;
}

}  // namespace perfgap
