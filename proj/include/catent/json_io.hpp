#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "catent/entropy.hpp"

namespace catent {

// Insertion-ordered JSON so every command emits keys in a fixed order; exact
// values (big integers, rationals) travel as canonical "p/q" strings.
using Json = nlohmann::ordered_json;

// --- parsing ------------------------------------------------------------------

inline Int int_from_json(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::runtime_error&) {
  }
  throw error(errc::input, what + ": expected an integer or integer string");
}

inline Rat rat_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const error&) {
    }
  }
  throw error(errc::input, what + ": expected a rational \"p/q\" string or integer");
}

inline ProjPoint point_from_json(const Json& j, const std::string& what) {
  if (j.is_string() && j.get<std::string>() == "inf") return ProjPoint::inf();
  return ProjPoint::at(rat_from_json(j, what));
}

inline WeightData weights_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
    throw error(errc::input, "expected an object with a \"weights\" array");
  std::vector<int> weights;
  for (const Json& w : j["weights"]) {
    const Int v = int_from_json(w, "weights");
    if (v < 1 || v > 1000000) throw error(errc::input, "weights: entries must be in [1, 10^6]");
    weights.push_back(static_cast<int>(v.convert_to<long long>()));
  }
  std::vector<ProjPoint> lambda;
  if (j.contains("lambda")) {
    if (!j["lambda"].is_array()) throw error(errc::input, "lambda: expected an array");
    for (const Json& p : j["lambda"]) lambda.push_back(point_from_json(p, "lambda"));
  }
  return make_weight_data(std::move(weights), std::move(lambda));
}

inline DynkinType dynkin_from_json(const Json& j) {
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("family") && j.contains("rank")) {
    name = j["family"].get<std::string>() +
           int_from_json(j["rank"], "dynkin rank").str();
  } else {
    throw error(errc::input, "dynkin: expected \"A3\"-style string or {family, rank}");
  }
  if (name.size() < 2 || (name[0] != 'A' && name[0] != 'D' && name[0] != 'E'))
    throw error(errc::input, "dynkin: family must be A, D or E");
  int rank = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9')
      throw error(errc::input, "dynkin: rank must be a positive integer");
    rank = rank * 10 + (name[i] - '0');
    if (rank > 64) throw error(errc::input, "dynkin: rank out of range");
  }
  return dynkin(name[0], rank);
}

// Context of a word: a weighted projective line or a Dynkin path algebra.
using WordContext = std::variant<WeightData, DynkinType>;

inline WordContext context_from_json(const Json& j) {
  if (j.is_object() && j.contains("dynkin")) return dynkin_from_json(j["dynkin"]);
  return weights_from_json(j);
}

inline IntMatrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw error(errc::input, what + ": expected a matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw error(errc::input, what + ": expected a matrix of rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw error(errc::input, what + ": ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_from_json(j[i][k], what);
  }
  return m;
}

inline LElement lelement_from_json(const WeightData& w, const Json& j) {
  if (!j.is_object() || !j.contains("l") || !j.contains("p") || !j["p"].is_array())
    throw error(errc::input, "twist: expected {\"l\": int, \"p\": [...]}");
  if (j["p"].size() != w.branch_count())
    throw error(errc::input, "twist: p must list one exponent per branch");
  std::vector<Int> p;
  for (const Json& e : j["p"]) p.push_back(int_from_json(e, "twist p"));
  return l_normalize(w, int_from_json(j["l"], "twist l"), std::move(p));
}

inline Mobius mobius_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c") ||
      !j.contains("d"))
    throw error(errc::input, "auto: g must be {\"a\",\"b\",\"c\",\"d\"} rationals");
  return Mobius::make(rat_from_json(j["a"], "g.a"), rat_from_json(j["b"], "g.b"),
                      rat_from_json(j["c"], "g.c"), rat_from_json(j["d"], "g.d"));
}

inline Generator letter_from_json(const WordContext& ctx, const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "serre") return Generator::serre();
    if (s == "shift") return Generator::shift(1);
    throw error(errc::input, "word: unknown letter \"" + s + "\"");
  }
  if (!j.is_object() || j.size() != 1)
    throw error(errc::input, "word: each letter must be \"serre\", \"shift\" or a one-key object");
  const auto& [key, value] = *j.items().begin();
  if (key == "serre") return Generator::serre();
  if (key == "shift") {
    const Int k = int_from_json(value, "shift");
    if (int_abs(k) > 1000000) throw error(errc::input, "shift: out of range");
    return Generator::shift(k.convert_to<long long>());
  }
  if (key == "generic") return Generator::generic(matrix_from_json(value, "generic"));
  const WeightData* w = std::get_if<WeightData>(&ctx);
  if (!w) throw error(errc::input, "word: letter \"" + key + "\" needs a weighted context");
  if (key == "twist") return Generator::twist(lelement_from_json(*w, value));
  if (key == "auto") {
    if (!value.is_object() || !value.contains("sigma") || !value["sigma"].is_array())
      throw error(errc::input, "auto: expected {\"sigma\": [...], \"g\"?: {...}}");
    std::vector<int> sigma;
    for (const Json& e : value["sigma"]) {
      const Int v = int_from_json(e, "auto sigma");
      if (v < 0 || v >= Int(w->branch_count()))
        throw error(errc::input, "auto: sigma entries must index branches");
      sigma.push_back(static_cast<int>(v.convert_to<long long>()));
    }
    if (value.contains("g")) return Generator::auto_eq(std::move(sigma), mobius_from_json(value["g"]));
    const std::optional<Mobius> g = mobius_for(*w, sigma);
    if (!g) throw error(errc::generator, "auto: no base automorphism realises sigma");
    return Generator::auto_eq(std::move(sigma), *g);
  }
  throw error(errc::input, "word: unknown letter \"" + key + "\"");
}

inline std::vector<Generator> word_from_json(const WordContext& ctx, const Json& j) {
  if (!j.is_array()) throw error(errc::input, "word: expected an array of letters");
  std::vector<Generator> word;
  for (const Json& letter : j) word.push_back(letter_from_json(ctx, letter));
  return word;
}

// --- serialization -------------------------------------------------------------

inline Json json_of_int(const Int& v) {
  // Plain JSON number when exactly representable; decimal string otherwise.
  if (v >= -9007199254740991LL && v <= 9007199254740991LL)
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

inline Json json_of_matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json json_of_radius(const CertifiedRadius& rho) {
  return Json::array({rat_to_string(rho.lower), rat_to_string(rho.upper)});
}

inline Json json_of_report(const EntropyReport& r, const IntMatrix& n_matrix) {
  Json out;
  out["h"] = r.h0;
  out["rho"] = json_of_radius(r.rho);
  out["method"] = r.method;
  Json cp = Json::array();
  for (const Int& c : r.characteristic) cp.push_back(c.str());
  out["char_poly"] = std::move(cp);
  out["n_matrix"] = json_of_matrix(n_matrix);
  if (r.phi) out["phi"] = json_of_matrix(r.phi->to_matrix());
  if (r.phi_radius) {
    Json cert;
    cert["trace"] = r.phi_radius->trace.str();
    cert["disc"] = r.phi_radius->disc.str();
    out["phi_certificate"] = std::move(cert);
  }
  return out;
}

inline Json json_of_invariants(const WeightData& w) {
  const OrbifoldInvariants inv = invariants(w);
  Json out;
  out["a"] = json_of_int(inv.a);
  out["mu"] = json_of_int(inv.mu);
  out["chi"] = rat_to_string(inv.chi);
  if (inv.chi > 0) out["dynkin"] = dynkin_symbol(w);
  return out;
}

inline Json json_of_word(const PositiveWord& word) {
  Json out;
  Json m = Json::array();
  for (const Int& e : word.exponents) m.push_back(json_of_int(e));
  out["m"] = std::move(m);
  out["P"] = json_of_matrix(word.conj.to_matrix());
  out["negated"] = word.negated;
  out["verified"] = true;
  return out;
}

// Canonical text form: newline-terminated, two-space indent, fixed key order.
inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace catent
