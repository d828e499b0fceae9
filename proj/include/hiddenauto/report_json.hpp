// JSON encodings of library values. Big integers and rationals are written
// as decimal strings.

#pragma once

#include <nlohmann/json.hpp>

#include "hiddenauto/constructions.hpp"
#include "hiddenauto/linalg.hpp"
#include "hiddenauto/morph_format.hpp"
#include "hiddenauto/sequence.hpp"

namespace hiddenauto {

inline nlohmann::json morphism_json(const Morphism& m) {
  nlohmann::json rules = nlohmann::json::object();
  for (Letter l = 0; l < m.size(); ++l) rules[m.alphabet().name(l)] = m.format_image(l);
  return {{"letters", m.alphabet().names()}, {"rules", rules}};
}

inline nlohmann::json coding_json(const Coding& c) {
  nlohmann::json map = nlohmann::json::object();
  for (Letter l = 0; l < c.source().size(); ++l) map[c.source().name(l)] = c.target().name(c(l));
  return map;
}

inline void to_json(nlohmann::json& j, const UniformRepresentation& u) {
  j = {{"q", u.q()},
       {"morphism", morphism_json(u.morphism())},
       {"coding", coding_json(u.coding())},
       {"seed", u.alphabet().name(u.seed())},
       {"morph", to_morph(u.to_spec())}};
}

inline void to_json(nlohmann::json& j, const RadiusBracket& b) {
  j = {{"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}, {"loose", b.loose}};
}

inline void to_json(nlohmann::json& j, const SpectralReport& r) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : r.char_poly.descending()) coeffs.push_back(c.str());
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& root : r.integer_roots) roots.push_back({{"root", root.root.str()}, {"multiplicity", root.multiplicity}});
  j = {{"char_poly", r.char_poly.to_string()},
       {"char_poly_coefficients", coeffs},
       {"integer_roots", roots},
       {"radius_bracket", r.radius_bracket},
       {"dominant_is_integer", r.dominant_is_integer},
       {"dominant_value", r.dominant_value ? nlohmann::json(r.dominant_value->str()) : nlohmann::json(nullptr)}};
}

inline void to_json(nlohmann::json& j, const ComplexityProfile& p) {
  j = {{"n_max", p.n_max}, {"prefix_length", p.prefix_length}, {"validity_margin", p.validity_margin()},
       {"counts", p.counts}, {"lower_bound", true}};
}

inline nlohmann::json matrix_json(const IntMatrix& m) { return to_strings(m); }

inline std::string complexity_csv(const ComplexityProfile& p) {
  std::string out = "n,p\n";
  for (std::size_t n = 1; n <= p.n_max; ++n) out += std::to_string(n) + "," + std::to_string(p(n)) + "\n";
  return out;
}

}  // namespace hiddenauto
