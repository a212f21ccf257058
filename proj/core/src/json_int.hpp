#pragma once

// Integers go into JSON as numbers when they fit in int64 and as decimal
// strings otherwise; readers accept either form.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "perfgap/arith.hpp"

namespace perfgap::detail {

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
    if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
    return v.get_str();
}

template <typename Json>
BigInt big_from_json(const Json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return BigInt(std::to_string(j.template get<std::uint64_t>()));
        return BigInt(std::to_string(j.template get<std::int64_t>()));
    }
    if (j.is_string()) {
        const auto& text = j.template get_ref<const std::string&>();
        BigInt v;
        if (text.empty() || v.set_str(text, 10) != 0) throw std::runtime_error("not an integer: \"" + text + "\"");
        return v;
    }
    throw std::runtime_error("expected an integer, got " + j.dump());
}

}  // namespace perfgap::detail
