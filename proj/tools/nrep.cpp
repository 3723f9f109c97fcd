#include "nrep/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

using namespace nrep;

namespace {

struct Globals {
  bool json_out = false;
  bool recheck = false;
  std::size_t cap = kDefaultCap;
  long long box = 0;
};

enum Exit { kDecided = 0, kInputError = 1, kUndetermined = 2 };

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string matrix_text(const json& rows) {
  std::vector<std::string> rs;
  for (const auto& r : rows) {
    std::vector<std::string> es;
    for (const auto& e : r) es.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    rs.push_back("[" + join(es, ", ") + "]");
  }
  return "[" + join(rs, ", ") + "]";
}

std::string params_text(const json& p) {
  std::vector<std::string> out;
  for (const auto& [k, v] : p.items()) out.push_back(k + "=" + v.dump());
  return join(out, " ");
}

void print_report(const json& r, int indent = 0) {
  std::string pad(indent, ' ');
  for (const auto& [k, v] : r.items()) {
    if (k == "parameters") {
      if (!v.empty()) std::cout << pad << "parameters: " << params_text(v) << "\n";
    } else if (v.is_object()) {
      std::cout << pad << k << ":\n";
      print_report(v, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_array() && !v[0].empty() && !v[0][0].is_array()) {
      std::cout << pad << k << ": " << matrix_text(v) << "\n";
    } else if (v.is_string()) {
      std::cout << pad << k << ": " << v.get<std::string>() << "\n";
    } else if (v.is_null()) {
      std::cout << pad << k << ": -\n";
    } else if (k == "notes") {
      for (const auto& n : v) std::cout << pad << "note: " << n.get<std::string>() << "\n";
    } else {
      std::cout << pad << k << ": " << v.dump() << "\n";
    }
  }
}

int emit(const Globals& g, json report, std::chrono::steady_clock::time_point t0, int code) {
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report["timing_ms"] = std::round(ms * 10) / 10;
  if (g.json_out)
    std::cout << report.dump(2) << "\n";
  else
    print_report(report);
  return code;
}

int verdict_code(Verdict v) { return v == Verdict::Undetermined ? kUndetermined : kDecided; }

// ---------------------------------------------------------------------------

int cmd_classify(const Globals& g, const std::string& file) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec s = load_group_spec(file);
  GroupInput in = s.input();
  ClassificationReport R = classify(in, g.cap);
  json j = to_json(R);
  int code = verdict_code(R.verdict);
  if (g.recheck) {
    auto ok = recheck(R, in, g.cap);
    j["recheck"] = ok ? json(*ok) : json("no family to rebuild");
    if (ok && !*ok) {
      std::cerr << "recheck failed: the reported family does not reproduce the input group\n";
      code = kInputError;
    }
  }
  return emit(g, j, t0, code);
}

int cmd_diag_criterion(const Globals& g, const std::string& file) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec s = load_group_spec(file, true);
  if (s.ambient != Ambient::GL) throw InputError("ambient", "diag-criterion needs a GL group");
  DiagonalGroup D = diagonal_group_of(s);
  if (!axis_characters_distinct(D))
    throw InputError("generators", "coordinate characters are not distinct; the normalizer is not a torus extension");
  SearchOptions opt;
  opt.box = g.box;
  CriterionReport R = diag_criterion(D, opt);
  return emit(g, to_json(R, D), t0, verdict_code(R.verdict));
}

int cmd_normalizer(const Globals& g, const std::string& file) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec s = load_group_spec(file, true);
  if (s.ambient != Ambient::GL) throw InputError("ambient", "normalizer needs a GL group");
  DiagonalGroup D = diagonal_group_of(s);
  json j;
  j["group_order"] = D.order();
  j["level"] = D.level();
  bool distinct = axis_characters_distinct(D);
  j["axis_characters_distinct"] = distinct;
  if (!distinct) throw InputError("generators", "coordinate characters are not distinct");
  auto S = normalizer_perms(D);
  j["normalizer_perms"] = S;
  j["normalizer_perm_count"] = S.size();
  j["character_lattice"] = int_matrix_json(character_lattice(D, S).basis());
  return emit(g, j, t0, kDecided);
}

std::map<std::string, long long> parse_params(const std::string& text) {
  std::map<std::string, long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--params", "expected key=value, got '" + item + "'");
    std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      out[k] = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw InputError("--params", "value of '" + k + "' is not an integer");
    }
  }
  return out;
}

long long need_param(const std::map<std::string, long long>& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) throw InputError("--params", "missing parameter '" + k + "'");
  return it->second;
}

int cmd_convert(const Globals& g, const std::string& dir, const std::string& params) {
  auto t0 = std::chrono::steady_clock::now();
  auto p = parse_params(params);
  json j;
  j["direction"] = dir;
  try {
    if (dir == "12") {
      PresentationOne a{need_param(p, "m"), need_param(p, "n")};
      PresentationTwo b = convert_12(a);
      j["parameters"] = {{"a", b.a}, {"n", b.n}, {"d", b.d}};
      j["certificates"] = {{"same_group", group_of(a) == group_of(b)}, {"group_order", group_of(b).order()}};
    } else if (dir == "21") {
      PresentationTwo a{need_param(p, "a"), need_param(p, "n"), need_param(p, "d")};
      PresentationOne b = convert_21(a);
      j["parameters"] = {{"m", b.m}, {"n", b.n}};
      j["certificates"] = {{"same_group", group_of(a) == group_of(b)}, {"group_order", group_of(b).order()}};
    } else {
      throw InputError("--dir", "must be 12 or 21");
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError("--params", e.what());
  }
  return emit(g, j, t0, kDecided);
}

LMatrix int_matrix(const json& m, const std::string& path, std::size_t n) {
  if (!m.is_array() || m.size() != n) throw InputError(path, "expected " + std::to_string(n) + " rows");
  LMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string rp = path + "[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != n) throw InputError(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      if (!m[i][k].is_number_integer()) throw InputError(rp + "[" + std::to_string(k) + "]", "expected an integer");
      A(i, k) = m[i][k].get<long long>();
    }
  }
  return A;
}

int cmd_cohomology(const Globals& g, const std::string& file) {
  auto t0 = std::chrono::steady_clock::now();
  json in = read_json_file(file);
  if (!in.is_object()) throw InputError("$", "expected a JSON object");
  long long n = detail::int_field(detail::field(in, "ambient_rank", ""), "ambient_rank");
  if (n < 1 || n > 12) throw InputError("ambient_rank", "must be between 1 and 12");
  const json& acts = detail::field(in, "action", "");
  if (!acts.is_array() || acts.empty()) throw InputError("action", "expected a non-empty list of matrices");
  std::vector<LMatrix> action;
  for (std::size_t i = 0; i < acts.size(); ++i)
    action.push_back(int_matrix(acts[i], "action[" + std::to_string(i) + "]", static_cast<std::size_t>(n)));
  json j;
  IntGroup S = IntGroup::generate(static_cast<std::size_t>(n), action, g.cap);
  j["group_order"] = S.order();

  if (in.contains("finite_module")) {
    const json& fm = in["finite_module"];
    FiniteModule A;
    const json& divs = detail::field(fm, "divisors", "finite_module");
    if (!divs.is_array()) throw InputError("finite_module.divisors", "expected a list of integers");
    for (std::size_t i = 0; i < divs.size(); ++i)
      A.divisors.push_back(detail::int_field(divs[i], "finite_module.divisors[" + std::to_string(i) + "]"));
    const json& fa = detail::field(fm, "action", "finite_module");
    if (!fa.is_array()) throw InputError("finite_module.action", "expected a list of matrices");
    for (std::size_t i = 0; i < fa.size(); ++i)
      A.action.push_back(int_matrix(fa[i], "finite_module.action[" + std::to_string(i) + "]", A.divisors.size()));
    try {
      j["h1"] = h1_finite(S.table, A);
    } catch (const std::invalid_argument& e) {
      throw InputError("finite_module", e.what());
    }
    j["coefficients"] = "finite";
    return emit(g, j, t0, kDecided);
  }

  ZMatrix basis = ZMatrix::identity(static_cast<std::size_t>(n));
  if (in.contains("basis")) {
    const json& b = in["basis"];
    if (!b.is_array() || b.empty()) throw InputError("basis", "expected a non-empty list of rows");
    basis = ZMatrix(0, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::string rp = "basis[" + std::to_string(i) + "]";
      if (!b[i].is_array() || b[i].size() != static_cast<std::size_t>(n))
        throw InputError(rp, "expected " + std::to_string(n) + " entries");
      ZVec row;
      for (std::size_t k = 0; k < b[i].size(); ++k)
        row.push_back(to_z(detail::int_field(b[i][k], rp + "[" + std::to_string(k) + "]")));
      basis.append_row(row);
    }
  }
  GLattice M;
  try {
    M = GLattice(basis, action);
  } catch (const std::invalid_argument& e) {
    throw InputError("action", e.what());
  }
  j["coefficients"] = "lattice";
  j["lattice_basis"] = int_matrix_json(M.basis());
  j["h1"] = h1_lattice(M, g.cap);
  if (action.size() == 1) j["h1_norm_formula"] = h1_cyclic(M);
  SearchOptions opt;
  opt.box = g.box;
  j["permutation_summand"] = to_json(permutation_summand_test(M, opt));
  return emit(g, j, t0, kDecided);
}

int cmd_singularity(const Globals& g, const std::string& file) {
  auto t0 = std::chrono::steady_clock::now();
  GroupSpec s = load_group_spec(file);
  if (s.ambient != Ambient::GL) throw InputError("ambient", "singularity needs a GL group");
  if (s.dim == 3) detail::require_char0(s.context());
  MatrixGroup G = MatrixGroup::closure(s.generators, g.cap, s.dim);
  SingularityReport R = singularity_type_r(G, s.context());
  return emit(g, to_json(R), t0,
              R.outcome == SingularityReport::Outcome::Undetermined ? kUndetermined : kDecided);
}

int cmd_catalog_verify(const Globals& g) {
  auto t0 = std::chrono::steady_clock::now();
  auto facts = verify_catalog();
  json j = to_json(facts);
  bool ok = j["verdict"] == "pass";
  if (!g.json_out) {
    for (const auto& f : facts) std::cout << (f.pass ? "ok    " : "FAIL  ") << f.fact << "  (" << f.value << ")\n";
    std::cout << (ok ? "all facts pass" : "some facts fail") << "\n";
    return ok ? kDecided : kInputError;
  }
  return emit(g, j, t0, ok ? kDecided : kInputError);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neutrality classification for finite linear and projective groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_out, "print a JSON report");
  app.add_flag("--recheck", g.recheck, "rebuild the reported family and re-match it");
  app.add_option("--cap", g.cap, "maximum group order to enumerate")->check(CLI::PositiveNumber);
  app.add_option("--box", g.box, "coordinate bound for the permutation basis search (0 = automatic)")
      ->check(CLI::NonNegativeNumber);

  std::string file, dir, params;
  std::function<int()> run;

  auto* c = app.add_subcommand("classify", "classify a finite group of GL_n or PGL_n, n <= 3");
  c->add_option("file", file, "group spec (JSON)")->required();
  c->callback([&] { run = [&] { return cmd_classify(g, file); }; });

  auto* d = app.add_subcommand("diag-criterion", "lattice criterion for a diagonal group");
  d->add_option("file", file, "group spec (JSON)")->required();
  d->callback([&] { run = [&] { return cmd_diag_criterion(g, file); }; });

  auto* n = app.add_subcommand("normalizer", "permutation part of the normalizer of a diagonal group");
  n->add_option("file", file, "group spec (JSON)")->required();
  n->callback([&] { run = [&] { return cmd_normalizer(g, file); }; });

  auto* cp = app.add_subcommand("convert-presentation", "switch between the two presentations of diagonal GL2 groups");
  cp->add_option("--dir", dir, "12 or 21")->required()->check(CLI::IsMember({"12", "21"}));
  cp->add_option("--params", params, "m=..,n=.. (dir 12) or a=..,n=..,d=.. (dir 21)")->required();
  cp->callback([&] { run = [&] { return cmd_convert(g, dir, params); }; });

  auto* co = app.add_subcommand("cohomology", "H^1 of a finite group acting on a lattice or finite module");
  co->add_option("file", file, "action file (JSON)")->required();
  co->callback([&] { run = [&] { return cmd_cohomology(g, file); }; });

  auto* si = app.add_subcommand("singularity", "type R test for the quotient singularity of a GL group");
  si->add_option("file", file, "group spec (JSON)")->required();
  si->callback([&] { run = [&] { return cmd_singularity(g, file); }; });

  auto* ca = app.add_subcommand("catalog", "Hessian group catalog");
  ca->require_subcommand(1);
  auto* cv = ca->add_subcommand("verify", "recompute all catalog facts");
  cv->callback([&] { run = [&] { return cmd_catalog_verify(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  try {
    return run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
