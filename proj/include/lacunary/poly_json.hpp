#pragma once

#include <string>

#include <json.hpp>

#include "lacunary/laurent_series.hpp"
#include "lacunary/sparse_poly.hpp"

namespace lacunary {

/// {"ring":"Q"|"GF2","terms":[[exp,"coeff"],...]}, coefficients as decimal strings.
template <CoefficientRing Ring>
nlohmann::json to_json(const SparsePoly<Ring>& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({e, Ring::to_string(c)});
    return {{"ring", std::string(Ring::name)}, {"terms", terms}};
}

template <CoefficientRing Ring>
SparsePoly<Ring> poly_from_json(const nlohmann::json& j) {
    try {
        if (j.at("ring").get<std::string>() != Ring::name) throw Error("ring mismatch");
        std::vector<typename SparsePoly<Ring>::Term> t;
        for (const auto& term : j.at("terms")) {
            if (!term.is_array() || term.size() != 2) throw Error("malformed term");
            t.emplace_back(term[0].get<Exponent>(), Ring::from_string(term[1].get<std::string>()));
        }
        return SparsePoly<Ring>(std::move(t));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed polynomial json: ") + e.what());
    }
}

/// Series use the same term layout plus the certified window.
template <CoefficientRing Ring>
nlohmann::json to_json(const LaurentSeries<Ring>& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.nonzero_terms()) terms.push_back({e, Ring::to_string(c)});
    nlohmann::json j = {{"ring", std::string(Ring::name)}, {"terms", terms}};
    if (s.exact()) {
        j["exact"] = true;
    } else {
        j["exact"] = false;
        j["precision"] = s.precision();
    }
    return j;
}

}  // namespace lacunary
