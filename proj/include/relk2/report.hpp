#pragma once

// JSON forms of the reports. Key order is fixed so that identical runs give
// identical bytes (apart from "ms").

#include "relk2/k2.hpp"

#include <json.hpp>

namespace relk2 {

using Json = nlohmann::ordered_json;

namespace detail {

/// Small integers as JSON numbers, anything else as a decimal string.
inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(v);
  return to_string(v);
}

inline BigInt big_from_json(const Json& j) { return j.is_string() ? BigInt(j.get<std::string>()) : BigInt(j.get<std::int64_t>()); }

}  // namespace detail

inline Json to_json(const AbelianGroupStructure& s) {
  Json factors = Json::array();
  for (const auto& d : s.invariant_factors) factors.push_back(detail::big_to_json(d));
  return Json{{"invariant_factors", factors}, {"free_rank", s.free_rank}, {"text", s.to_string()}};
}

inline Json to_json(const MatrixZ& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(detail::big_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const K2Report& r) {
  Json factors = Json::array();
  for (const auto& d : r.structure.invariant_factors) factors.push_back(detail::big_to_json(d));
  Json j;
  j["p"] = r.spec.p();
  j["exponents"] = r.spec.exponents();
  j["invariant_factors"] = factors;
  j["basis"] = r.basis;
  j["route"] = to_string(r.route);
  j["agreement"] = r.agreement ? Json(*r.agreement) : Json(nullptr);
  j["warnings"] = r.warnings;
  j["ms"] = r.ms;
  return j;
}

inline K2Report k2_report_from_json(const Json& j) {
  K2Report r{GroupSpec(j.at("p").get<std::uint32_t>(), j.at("exponents").get<std::vector<unsigned>>()), {}, {}, parse_route(j.at("route").get<std::string>()),
             std::nullopt, {}, 0, std::nullopt, std::nullopt};
  for (const auto& d : j.at("invariant_factors")) r.structure.invariant_factors.push_back(detail::big_from_json(d));
  r.basis = j.at("basis").get<std::vector<std::string>>();
  if (!j.at("agreement").is_null()) r.agreement = j.at("agreement").get<bool>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.ms = j.at("ms").get<double>();
  return r;
}

inline Json to_json(const Theorem1Report& r) {
  Json j;
  j["r"] = r.r;
  j["oracle"] = r.oracle ? to_json(*r.oracle) : Json(nullptr);
  j["tensor_over_A_mod_I"] = to_json(r.tensor_over_a_mod_i);
  j["tensor_over_A_mod_J"] = to_json(r.tensor_over_a_mod_j);
  j["psi_trivial"] = r.psi_trivial ? Json(*r.psi_trivial) : Json(nullptr);
  j["delta_trivial"] = r.delta_trivial;
  j["agree"] = r.agree();
  j["warnings"] = r.warnings;
  j["ms"] = r.ms;
  return j;
}

inline Json to_json(const LatticeChecks& c) {
  return Json{{"J_eq_I_plus_Gtilde", c.j_is_i_plus_gtilde}, {"p_Gtilde_in_I", c.p_gtilde_in_i}, {"J_squared_in_I", c.quotient_square_zero}};
}

inline Json to_json(const ExcisionReport& r) {
  Json images = Json::array();
  for (const auto& [s, t] : r.generator_images) images.push_back(Json{{"source", s}, {"target", t}});
  Json j;
  j["p"] = r.spec.p();
  j["exponents"] = r.spec.exponents();
  j["integral"] = to_json(r.integral);
  j["modular"] = to_json(r.modular);
  j["equal"] = r.equal();
  j["relation_checks"] = to_json(r.lattice);
  j["ring_size_I"] = detail::big_to_json(r.ring_size_i);
  j["ring_size_J"] = detail::big_to_json(r.ring_size_j);
  j["integral_relations"] = r.integral_relations;
  j["map_well_defined"] = r.map_well_defined;
  j["map_surjective"] = r.map_surjective;
  j["generator_images"] = images;
  j["ms"] = r.ms;
  return j;
}

inline Json to_json(const SquareCorner& c) {
  Json j;
  j["name"] = c.name;
  j["concrete"] = c.concrete;
  j["size"] = c.size ? detail::big_to_json(*c.size) : Json(nullptr);
  j["fp_dim"] = c.fp_dim ? Json(*c.fp_dim) : Json(nullptr);
  j["description"] = c.description;
  return j;
}

inline Json to_json(const SquareReport& r) {
  Json j;
  j["p"] = r.spec.p();
  j["exponents"] = r.spec.exponents();
  j["corners"] = Json::array({to_json(r.top_left), to_json(r.top_right), to_json(r.bottom_left), to_json(r.bottom_right)});
  j["commutes"] = r.commutes ? Json(*r.commutes) : Json(nullptr);
  j["pullback"] = r.pullback ? Json(*r.pullback) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const CharacterLattice& lat) {
  return Json{{"char_matrix", to_json(lat.char_matrix)}, {"zg", to_json(lat.zg)}, {"J", to_json(lat.j)}, {"I", to_json(lat.i)}};
}

/// Additive structure and multiplication table on representative indices.
inline Json to_json(const FiniteQuotientRing& q, bool with_table) {
  Json j;
  j["name"] = q.name();
  j["size"] = detail::big_to_json(q.size());
  j["additive"] = to_json(q.additive_structure());
  j["ideal_basis"] = to_json(q.ideal_basis());
  if (with_table) {
    EnumeratedRing e = q.enumerate();
    Json elems = Json::array(), table = Json::array();
    for (std::uint32_t a = 0; a < e.size(); ++a) {
      elems.push_back(e.describe(a));
      Json row = Json::array();
      for (std::uint32_t b = 0; b < e.size(); ++b) row.push_back(e.mul(a, b));
      table.push_back(row);
    }
    j["elements"] = elems;
    j["multiplication"] = table;
  }
  return j;
}

/// Presentation summary; generator list and relation rows on request.
inline Json to_json(const SymbolPresentation& pres, bool with_relations) {
  Json j;
  j["mode"] = to_string(pres.mode());
  j["structure"] = to_json(pres.structure());
  j["generators"] = pres.generator_count();
  j["relations"] = pres.relation_count();
  if (const FullPresentation* f = pres.full()) {
    j["relations_by_kind"] = Json{{"DS1", f->relation_count(RelationKind::ds1)},
                                  {"DS2", f->relation_count(RelationKind::ds2)},
                                  {"DS3", f->relation_count(RelationKind::ds3)}};
    if (with_relations) {
      const EnumeratedRing& ring = *pres.ring_table();
      Json gens = Json::array(), rows = Json::array();
      for (std::uint32_t c = 0; c < f->generator_count(); ++c) {
        auto [a, b] = f->generator(c);
        gens.push_back("<" + ring.describe(a) + "|" + ring.describe(b) + ">");
      }
      for (const auto& row : f->relations()) {
        Json r = Json::array();
        for (const auto& [c, v] : row) r.push_back(Json::array({c, v}));
        rows.push_back(r);
      }
      j["generator_list"] = gens;
      j["relation_rows"] = rows;
    }
  }
  return j;
}

}  // namespace relk2
