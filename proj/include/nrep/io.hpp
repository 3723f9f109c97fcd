#pragma once

// JSON input specs and report serialization. Needs nlohmann/json on the include path.

#include "nrep/catalog.hpp"
#include "nrep/classify.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nrep {

using json = nlohmann::json;

/// Input problem, with the JSON path of the offending item in the message.
class InputError : public std::invalid_argument {
 public:
  InputError(const std::string& path, const std::string& what)
      : std::invalid_argument(path.empty() ? what : path + ": " + what), path(path) {}
  std::string path;
};

struct GroupSpec {
  Ambient ambient = Ambient::GL;
  int dim = 1;
  int level = 1;
  long long characteristic = 0;
  std::vector<long long> base_field_contains;
  std::vector<std::vector<std::vector<std::string>>> entries;  // as written
  std::vector<CycMatrix> generators;

  FieldContext context() const {
    FieldContext c;
    c.characteristic = characteristic;
    for (long long n : base_field_contains) c.contains_zeta3 = c.contains_zeta3 || n % 3 == 0;
    return c;
  }
  GroupInput input() const { return {ambient, dim, generators, context()}; }
};

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw InputError(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline long long int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long long>();
}

inline std::string idx(const std::string& p, std::size_t i) { return p + "[" + std::to_string(i) + "]"; }

}  // namespace detail

/// Parse a GroupSpecFile object. `any_dim` relaxes the 1..3 limit (diagonal criterion).
inline GroupSpec parse_group_spec(const json& j, bool any_dim = false) {
  using detail::idx;
  if (!j.is_object()) throw InputError("$", "expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    static const std::set<std::string> known{"ambient", "dimension", "cyclotomic_level", "characteristic",
                                             "base_field_contains", "generators", "comment"};
    if (!known.count(k)) throw InputError(k, "unknown field");
  }
  GroupSpec s;
  const json& amb = detail::field(j, "ambient", "");
  if (amb == "GL")
    s.ambient = Ambient::GL;
  else if (amb == "PGL")
    s.ambient = Ambient::PGL;
  else
    throw InputError("ambient", "must be \"GL\" or \"PGL\"");

  long long d = detail::int_field(detail::field(j, "dimension", ""), "dimension");
  if (d < 1 || (!any_dim && d > 3)) throw InputError("dimension", any_dim ? "must be positive" : "must be 1, 2 or 3");
  if (d > 12) throw InputError("dimension", "too large");
  s.dim = static_cast<int>(d);

  long long L = detail::int_field(detail::field(j, "cyclotomic_level", ""), "cyclotomic_level");
  if (L < 1 || L > 100000) throw InputError("cyclotomic_level", "must be between 1 and 100000");
  s.level = static_cast<int>(L);

  if (j.contains("characteristic")) {
    s.characteristic = detail::int_field(j["characteristic"], "characteristic");
    if (s.characteristic < 0) throw InputError("characteristic", "must be >= 0");
    if (s.characteristic == 1) throw InputError("characteristic", "must be 0 or a prime");
    if (s.characteristic > 1) {
      auto f = factorize(s.characteristic);
      if (f.size() != 1 || f.begin()->second != 1) throw InputError("characteristic", "must be 0 or a prime");
    }
  }
  if (j.contains("base_field_contains")) {
    const json& b = j["base_field_contains"];
    if (!b.is_array()) throw InputError("base_field_contains", "expected a list of integers");
    for (std::size_t i = 0; i < b.size(); ++i) {
      long long n = detail::int_field(b[i], idx("base_field_contains", i));
      if (n < 1) throw InputError(idx("base_field_contains", i), "must be positive");
      s.base_field_contains.push_back(n);
    }
  }

  const json& gens = detail::field(j, "generators", "");
  if (!gens.is_array()) throw InputError("generators", "expected a list of matrices");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::string gp = idx("generators", g);
    const json& m = gens[g];
    if (!m.is_array() || m.size() != static_cast<std::size_t>(s.dim))
      throw InputError(gp, "expected " + std::to_string(s.dim) + " rows");
    std::vector<std::vector<std::string>> strs;
    std::vector<std::vector<CycNum>> rows;
    for (std::size_t r = 0; r < m.size(); ++r) {
      std::string rp = idx(gp, r);
      if (!m[r].is_array() || m[r].size() != static_cast<std::size_t>(s.dim))
        throw InputError(rp, "expected " + std::to_string(s.dim) + " entries");
      strs.emplace_back();
      rows.emplace_back();
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        std::string ep = idx(rp, c);
        const json& e = m[r][c];
        std::string text;
        if (e.is_string())
          text = e.get<std::string>();
        else if (e.is_number_integer())
          text = std::to_string(e.get<long long>());
        else
          throw InputError(ep, "entry must be a string");
        try {
          rows.back().push_back(CycNum::parse(text, s.level));
        } catch (const ParseError& err) {
          throw InputError(ep, err.what());
        }
        strs.back().push_back(text);
      }
    }
    CycMatrix M = CycMatrix::from_rows(rows).at_level(s.level);
    if (M.det().is_zero()) throw InputError(gp, "matrix is not invertible");
    s.entries.push_back(std::move(strs));
    s.generators.push_back(std::move(M));
  }
  return s;
}

inline json to_json(const GroupSpec& s) {
  json j;
  j["ambient"] = to_string(s.ambient);
  j["dimension"] = s.dim;
  j["cyclotomic_level"] = s.level;
  j["characteristic"] = s.characteristic;
  j["base_field_contains"] = s.base_field_contains;
  j["generators"] = s.entries;
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path, std::string("malformed JSON: ") + e.what());
  }
}

inline GroupSpec load_group_spec(const std::string& path, bool any_dim = false) {
  return parse_group_spec(read_json_file(path), any_dim);
}

/// Diagonal generators of roots of unity as a DiagonalGroup, at the lcm of the entry orders.
inline DiagonalGroup diagonal_group_of(const GroupSpec& s) {
  std::vector<std::vector<RootOfUnity>> roots;
  long long M = 1;
  for (std::size_t g = 0; g < s.generators.size(); ++g) {
    const CycMatrix& m = s.generators[g];
    if (!m.is_diagonal()) throw InputError(detail::idx("generators", g), "matrix is not diagonal");
    roots.emplace_back();
    for (int i = 0; i < m.dim(); ++i) {
      auto r = m.at(i, i).as_root_of_unity();
      if (!r)
        throw InputError(detail::idx(detail::idx(detail::idx("generators", g), i), i), "entry is not a root of unity");
      roots.back().push_back(*r);
      M = lcm_ll(M, r->order);
    }
  }
  std::vector<ExpVec> gens;
  for (const auto& rs : roots) {
    ExpVec v;
    for (const auto& r : rs) v.push_back(r.exponent * (M / r.order));
    gens.push_back(v);
  }
  return DiagonalGroup::from_exponents(s.dim, M, gens);
}

// ---------------------------------------------------------------------------
// reports

inline json matrix_json(const CycMatrix& m) { return m.entry_strings(); }

template <class T>
json int_matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, mpz_class>)
        r.push_back(m(i, j).fits_slong_p() ? json(m(i, j).get_si()) : json(m(i, j).get_str()));
      else
        r.push_back(m(i, j));
    }
    rows.push_back(r);
  }
  return rows;
}

inline json mpz_json(const mpz_class& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

inline json params_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

inline json to_json(const ClassificationReport& R) {
  json j;
  j["ambient"] = to_string(R.ambient);
  j["dimension"] = R.dim;
  j["verdict"] = to_string(R.verdict);
  j["family"] = R.family.empty() ? json(nullptr) : json(R.family);
  j["parameters"] = params_json(R.parameters);
  json cert = json::object();
  cert["group_order"] = R.group_order;
  cert["scalar_order"] = R.scalar_order;
  if (R.conjugator) cert["conjugator"] = matrix_json(*R.conjugator);
  j["certificates"] = cert;
  j["notes"] = R.notes;
  return j;
}

inline json to_json(const SummandResult& s) {
  json j;
  j["result"] = to_string(s.kind);
  if (s.basis) j["permutation_basis"] = int_matrix_json(*s.basis);
  if (s.witness) {
    json w;
    w["subgroup_order"] = s.witness->subgroup_order;
    json g = json::array();
    for (const auto& m : s.witness->subgroup_generators) g.push_back(int_matrix_json(m));
    w["subgroup_generators"] = g;
    w["h1"] = s.witness->h1;
    j["h1_witness"] = w;
  }
  j["search_box"] = s.search.box;
  if (s.search.exhausted) j["search_budget_exhausted"] = true;
  return j;
}

inline json to_json(const CriterionReport& R, const DiagonalGroup& D) {
  json j;
  j["verdict"] = to_string(R.verdict);
  j["family"] = nullptr;
  j["parameters"] = json::object();
  json c;
  c["group_order"] = D.order();
  c["level"] = D.level();
  c["normalizer_perms"] = R.normalizer;
  c["character_lattice"] = int_matrix_json(R.lattice.basis());
  c["summand_test"] = to_json(R.summand);
  if (R.bound) {
    json b;
    b["iota1"] = R.bound->iota1;
    b["iota2"] = mpz_json(R.bound->iota2);
    b["product"] = mpz_json(R.bound->product);
    b["subgroup"] = R.bound_subgroup;
    if (R.bound_sublattice) b["sublattice"] = int_matrix_json(*R.bound_sublattice);
    c["index_bound"] = b;
  }
  j["certificates"] = c;
  return j;
}

inline json to_json(const SingularityReport& R) {
  json j;
  j["verdict"] = to_string(R.outcome);
  json c;
  c["has_pseudo_reflections"] = R.reflections.has_any;
  c["pseudo_reflection_count"] = R.reflections.reflections.size();
  c["reflection_subgroup_order"] = R.reflections.subgroup_order;
  c["generated_by_pseudo_reflections"] = R.reflections.generates_whole_group;
  j["certificates"] = c;
  if (R.classification) j["classification"] = to_json(*R.classification);
  return j;
}

inline json to_json(const std::vector<CatalogFact>& facts) {
  json j;
  json fs = json::array();
  bool all = true;
  for (const auto& f : facts) {
    fs.push_back({{"fact", f.fact}, {"pass", f.pass}, {"value", f.value}});
    all = all && f.pass;
  }
  j["facts"] = fs;
  j["verdict"] = all ? "pass" : "fail";
  return j;
}

}  // namespace nrep
