// parity-gauss: command-line front end exposing every pipeline stage —
// parsing, parity labels, index vectors, the odd-arrow-deleting map, seeded
// move walks, quotient dimensions and bases, formula evaluation, the
// generator solver, built-in formulas, and the finite-type, virtualization,
// zero-index, and decomposition probes.
//
// Exit codes: 0 success, 1 domain error (JSON diagnostics on stderr),
// 2 usage error.  With --json all output is a single JSON document with a
// top-level "schema":"1"; every integer is a decimal string.

#include <cstdlib>
#include <iostream>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parity_gauss/core.hpp"
#include "parity_gauss/enumerate.hpp"
#include "parity_gauss/parity.hpp"
#include "parity_gauss/moves.hpp"
#include "parity_gauss/formal_sum.hpp"
#include "parity_gauss/quotient.hpp"
#include "parity_gauss/formulae.hpp"

namespace pg = parity_gauss;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

struct CommonOpts {
  bool as_json = false;
  std::string ambient = "line";
  std::vector<std::string> codes;
};

pg::Ambient parse_ambient(const std::string& s) {
  if (s == "line") return pg::Ambient::line;
  if (s == "loop") return pg::Ambient::loop;
  throw pg::domain_error("unknown ambient '" + s + "' (expected line or loop)");
}

pg::QuotientKind parse_quotient(const std::string& s) {
  if (s == "o" || s == "O") return pg::QuotientKind::O;
  if (s == "e" || s == "E") return pg::QuotientKind::E;
  if (s == "gpv" || s == "GPV") return pg::QuotientKind::GPV;
  throw pg::domain_error("unknown quotient '" + s + "' (expected o, e, or gpv)");
}

pg::ParityRule parse_parity(const std::string& s) {
  if (s == "gaussian") return pg::gaussian_parity();
  for (const std::string& prefix : {std::string("hier:"), std::string("hierarchy:")})
    if (s.rfind(prefix, 0) == 0) {
      const std::string digits = s.substr(prefix.size());
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw pg::domain_error("bad hierarchy level in '" + s + "'");
      return pg::hierarchy_parity(std::stoi(digits));
    }
  throw pg::domain_error("unknown parity '" + s +
                         "' (expected gaussian or hier:<t>)");
}

// Gauss codes come from positional arguments, or from stdin (one code per
// line, blank lines skipped) when no positionals were given.
std::vector<std::string> gather_codes(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> codes;
  std::string line;
  while (std::getline(std::cin, line)) {
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    codes.push_back(line.substr(a, b - a + 1));
  }
  return codes;
}

// Formula names are accepted in several spellings: "F_r", "F^{rr}", "rr",
// "v21", ... — lowercase, drop everything but letters and digits, and strip
// one leading "f".
std::string normalize_formula_name(const std::string& raw) {
  std::string out;
  for (char ch : raw) {
    if (std::isalnum(static_cast<unsigned char>(ch)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (out.size() > 1 && out[0] == 'f') out.erase(out.begin());
  return out;
}

json formula_to_json(const pg::Formula& f) {
  json terms = json::object();
  for (const auto& [key, coeff] : f.sum.terms) terms[key] = coeff.str();
  return json{{"ambient", ambient_name(f.sum.ambient)},
              {"k", std::to_string(f.k)},
              {"n", std::to_string(f.n)},
              {"quotient", quotient_name(f.quotient)},
              {"terms", terms}};
}

int json_int_field(const json& j, const std::string& field) {
  if (!j.contains(field))
    throw pg::domain_error("formula JSON lacks the '" + field + "' field");
  const json& v = j.at(field);
  try {
    if (v.is_string()) return std::stoi(v.get<std::string>());
    if (v.is_number_integer()) return v.get<int>();
  } catch (const std::exception&) {
  }
  throw pg::domain_error("formula JSON field '" + field + "' is not an integer");
}

pg::Formula formula_from_json(const json& j) {
  if (!j.is_object()) throw pg::domain_error("formula JSON must be an object");
  pg::Formula f;
  f.quotient = parse_quotient(j.value("quotient", std::string("o")));
  f.n = json_int_field(j, "n");
  f.k = json_int_field(j, "k");
  f.sum.ambient = parse_ambient(j.value("ambient", std::string("line")));
  if (!j.contains("terms") || !j.at("terms").is_object())
    throw pg::domain_error("formula JSON lacks a 'terms' object");
  for (const auto& [key, value] : j.at("terms").items()) {
    if (!value.is_string())
      throw pg::domain_error("formula coefficients must be decimal strings");
    pg::Int coeff;
    try {
      coeff = pg::Int(value.get<std::string>());
    } catch (const std::exception&) {
      throw pg::domain_error("bad coefficient '" + value.get<std::string>() +
                             "' in formula JSON");
    }
    std::string canon = key;
    if (!key.empty()) {
      if (f.quotient == pg::QuotientKind::GPV)
        canon = pg::canonical_key(pg::parse_gauss_code_unmarked(key, f.sum.ambient));
      else
        canon = pg::canonical_key(pg::parse_gauss_code(key, f.sum.ambient));
    }
    pg::add_term(f.sum, canon, coeff);
  }
  return f;
}

// --formula takes a built-in name or a path to a JSON file as emitted by
// `builtin --json` / `basis`.
pg::Formula load_formula(const std::string& spec) {
  std::ifstream in(spec);
  if (in.good()) {
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw pg::domain_error("cannot parse formula file '" + spec +
                             "': " + e.what());
    }
    return formula_from_json(j);
  }
  return pg::builtin_formula(normalize_formula_name(spec));
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw pg::domain_error("bad arrow index '" + tok + "' in list");
    out.push_back(std::stoi(tok));
  }
  return out;
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

json result_doc() { return json{{"schema", "1"}}; }

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void run_parse(const CommonOpts& o, bool marked) {
  const pg::Ambient ambient = parse_ambient(o.ambient);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    std::string canon;
    int arrows = 0;
    if (marked) {
      pg::MarkedDiagram md = pg::parse_gauss_code(code, ambient);
      canon = pg::canonical_key(md);
      arrows = md.d.size();
    } else {
      pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, ambient);
      canon = pg::canonical_key(d);
      arrows = d.size();
    }
    if (o.as_json)
      results.push_back(json{{"arrows", std::to_string(arrows)},
                             {"canonical", canon},
                             {"input", code}});
    else
      std::cout << canon << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_parity(const CommonOpts& o, const std::string& parity) {
  const pg::Ambient ambient = parse_ambient(o.ambient);
  const pg::ParityRule rule = parse_parity(parity);
  if (rule.line_only && ambient == pg::Ambient::loop)
    throw pg::domain_error("parity '" + rule.name + "' is defined on the line only");
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, ambient);
    const std::vector<std::uint8_t> marks = rule.eval(d);
    std::string bits;
    for (std::uint8_t m : marks) bits += m ? '1' : '0';
    if (o.as_json)
      results.push_back(json{{"input", code}, {"marks", bits}});
    else
      std::cout << bits << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_index(const CommonOpts& o) {
  const pg::Ambient ambient = parse_ambient(o.ambient);
  if (ambient != pg::Ambient::line)
    throw pg::domain_error("the index vector is defined on the line only");
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, ambient);
    const std::vector<int> idx = pg::index_vector(d);
    if (o.as_json) {
      json vals = json::array();
      for (int v : idx) vals.push_back(std::to_string(v));
      results.push_back(json{{"indices", vals}, {"input", code}});
    } else {
      for (std::size_t i = 0; i < idx.size(); ++i)
        std::cout << (i ? " " : "") << idx[i];
      std::cout << "\n";
    }
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_f_map(const CommonOpts& o, const std::string& parity) {
  const pg::Ambient ambient = parse_ambient(o.ambient);
  const pg::ParityRule rule = parse_parity(parity);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, ambient);
    const pg::GaussDiagram image = pg::functorial_map_f(d, rule);
    const std::string canon = pg::canonical_key(image);
    if (o.as_json)
      results.push_back(json{{"image", canon}, {"input", code}});
    else
      std::cout << canon << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_walk(const CommonOpts& o, std::uint64_t seed, int steps,
              const std::string& constraint) {
  const pg::Ambient ambient = parse_ambient(o.ambient);
  pg::WalkConstraint wc = pg::WalkConstraint::none;
  if (constraint == "zero-index")
    wc = pg::WalkConstraint::zero_index;
  else if (constraint != "none")
    throw pg::domain_error("unknown walk constraint '" + constraint + "'");
  if (steps < 0) throw pg::domain_error("steps must be nonnegative");
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, ambient);
    const pg::WalkResult res = pg::apply_random_walk(d, steps, seed, wc);
    const std::string canon = pg::canonical_key(res.diagram);
    if (o.as_json)
      results.push_back(json{{"final", canon},
                             {"input", code},
                             {"stalled", res.stalled},
                             {"steps", std::to_string(res.steps_taken)}});
    else
      std::cout << canon << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_dims(bool as_json, int n, int k, const std::string& ambient,
              const std::string& quotient) {
  const int d = pg::dimension(n, k, parse_ambient(ambient),
                              parse_quotient(quotient));
  if (as_json) {
    json doc = result_doc();
    doc["dims"] = std::to_string(d);
    emit(doc);
  } else {
    std::cout << d << "\n";
  }
}

void run_basis(int n, int k, const std::string& ambient,
               const std::string& quotient) {
  const std::vector<pg::Formula> basis =
      pg::formula_basis(n, k, parse_ambient(ambient), parse_quotient(quotient));
  json arr = json::array();
  for (const pg::Formula& f : basis) arr.push_back(formula_to_json(f));
  json doc = result_doc();
  doc["basis"] = arr;
  doc["count"] = std::to_string(basis.size());
  emit(doc);
}

void run_eval(const CommonOpts& o, const std::string& formula,
              const std::string& parity) {
  const pg::Formula f = load_formula(formula);
  const pg::ParityRule rule = parse_parity(parity);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, f.sum.ambient);
    const pg::Int value = pg::evaluate(f, rule, d);
    if (o.as_json)
      results.push_back(json{{"input", code}, {"value", value.str()}});
    else
      std::cout << value.str() << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_solve_generator(bool as_json, int n1, int n2) {
  const pg::GeneratorSolution s = pg::solve_generator_system(n1, n2);
  const pg::CountPolynomial poly = pg::to_count_polynomial(s);
  if (as_json) {
    json coeffs = json::object();
    for (const auto& [e, v] : s.coeff) {
      const std::string key = std::to_string(e[0]) + "," + std::to_string(e[1]) +
                              "," + std::to_string(e[2]) + "," +
                              std::to_string(e[3]);
      coeffs[key] = v.str();
    }
    json monomials = json::object();
    for (const auto& [e, v] : poly.terms) {
      const std::string key = std::to_string(e[0]) + "," + std::to_string(e[1]) +
                              "," + std::to_string(e[2]) + "," +
                              std::to_string(e[3]);
      monomials[key] = v.str();
    }
    json doc = result_doc();
    doc["c0"] = s.c0.str();
    doc["coefficients"] = coeffs;
    doc["n1"] = std::to_string(s.n1);
    doc["n2"] = std::to_string(s.n2);
    doc["polynomial"] = monomials;
    emit(doc);
  } else {
    std::cout << "c0 = " << s.c0.str() << "\n";
    for (const auto& [e, v] : s.coeff)
      std::cout << "c[" << e[0] << "," << e[1] << "," << e[2] << "," << e[3]
                << "] = " << v.str() << "\n";
  }
}

void run_builtin(bool as_json, const std::string& name) {
  if (name.empty()) {
    if (as_json) {
      json doc = result_doc();
      doc["names"] = pg::builtin_formula_names();
      emit(doc);
    } else {
      for (const std::string& n : pg::builtin_formula_names())
        std::cout << n << "\n";
    }
    return;
  }
  const pg::Formula f = pg::builtin_formula(normalize_formula_name(name));
  if (as_json) {
    json doc = result_doc();
    doc["formula"] = formula_to_json(f);
    doc["name"] = normalize_formula_name(name);
    emit(doc);
  } else {
    for (const auto& [key, coeff] : f.sum.terms)
      std::cout << coeff.str() << "\t" << key << "\n";
  }
}

void run_probe_kauffman(const CommonOpts& o, const std::string& formula,
                        const std::string& parity, const std::string& singular) {
  const pg::Formula f = load_formula(formula);
  const pg::ParityRule rule = parse_parity(parity);
  const std::vector<int> idx = parse_int_list(singular);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, f.sum.ambient);
    const pg::Int value = pg::kauffman_vanishing_probe(f, rule, d, idx);
    if (o.as_json)
      results.push_back(json{{"input", code}, {"value", value.str()}});
    else
      std::cout << value.str() << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_probe_virtualization(const CommonOpts& o, const std::string& formula,
                              const std::string& parity,
                              const std::string& flips) {
  const pg::Formula f = load_formula(formula);
  const pg::ParityRule rule = parse_parity(parity);
  const std::vector<int> idx = parse_int_list(flips);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, f.sum.ambient);
    const bool ok = pg::virtualization_check(f, rule, d, idx);
    if (o.as_json)
      results.push_back(json{{"input", code}, {"invariant", ok}});
    else
      std::cout << (ok ? "1" : "0") << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

void run_zero_index_report(bool as_json, int bound) {
  const pg::ZeroIndexReport rep = pg::zero_index_invariant_checks(bound);
  if (as_json) {
    json doc = result_doc();
    doc["checked"] = std::to_string(rep.diagrams_checked);
    doc["violations"] = rep.violations;
    emit(doc);
  } else {
    std::cout << "checked " << rep.diagrams_checked << " zero-index diagrams, "
              << rep.violations.size() << " violations\n";
    for (const std::string& v : rep.violations) std::cout << v << "\n";
  }
}

void run_decompose_check(const CommonOpts& o, const std::string& formula,
                         const std::string& parity) {
  const pg::Formula f = load_formula(formula);
  const pg::ParityRule rule = parse_parity(parity);
  json results = json::array();
  for (const std::string& code : gather_codes(o.codes)) {
    pg::GaussDiagram d = pg::parse_gauss_code_unmarked(code, f.sum.ambient);
    const bool ok = pg::decomposition_check(f, rule, d);
    if (o.as_json)
      results.push_back(json{{"holds", ok}, {"input", code}});
    else
      std::cout << (ok ? "1" : "0") << "\n";
  }
  if (o.as_json) {
    json doc = result_doc();
    doc["results"] = results;
    emit(doc);
  }
}

}  // namespace

int main(int argc, char** argv) {
  // The engine itself is sequential; the cap is accepted for forward
  // compatibility and validated when present.
  if (const char* threads = std::getenv("PARITY_GAUSS_THREADS")) {
    const std::string t(threads);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos ||
        t == "0") {
      std::cerr << json{{"error", {{"message",
                                    "PARITY_GAUSS_THREADS must be a positive "
                                    "integer"},
                                   {"type", "usage"}}},
                        {"schema", "1"}}
                       .dump()
                << "\n";
      return 2;
    }
  }

  CLI::App app{"exact engine for parity-enhanced counting formulas on Gauss "
               "diagrams"};
  app.require_subcommand(1);

  const auto add_common = [](CLI::App* sub, CommonOpts& o, bool takes_codes) {
    sub->add_flag("--json", o.as_json, "emit a JSON document");
    sub->add_option("--ambient", o.ambient, "line or loop")
        ->default_val("line");
    if (takes_codes)
      sub->add_option("codes", o.codes,
                      "Gauss codes (stdin, one per line, when omitted)");
  };

  CommonOpts parse_o;
  bool parse_marked = false;
  CLI::App* parse_cmd = app.add_subcommand("parse", "canonicalize Gauss codes");
  add_common(parse_cmd, parse_o, true);
  parse_cmd->add_flag("--marked", parse_marked, "codes carry :0/:1 parity marks");
  parse_cmd->callback([&] { run_parse(parse_o, parse_marked); });

  CommonOpts parity_o;
  std::string parity_rule = "gaussian";
  CLI::App* parity_cmd =
      app.add_subcommand("parity", "parity marks of each arrow");
  add_common(parity_cmd, parity_o, true);
  parity_cmd->add_option("--parity", parity_rule, "gaussian or hier:<t>");
  parity_cmd->callback([&] { run_parity(parity_o, parity_rule); });

  CommonOpts index_o;
  CLI::App* index_cmd = app.add_subcommand("index", "index of each arrow");
  add_common(index_cmd, index_o, true);
  index_cmd->callback([&] { run_index(index_o); });

  CommonOpts fmap_o;
  std::string fmap_rule = "gaussian";
  CLI::App* fmap_cmd =
      app.add_subcommand("f-map", "delete odd arrows and canonicalize");
  add_common(fmap_cmd, fmap_o, true);
  fmap_cmd->add_option("--parity", fmap_rule, "gaussian or hier:<t>");
  fmap_cmd->callback([&] { run_f_map(fmap_o, fmap_rule); });

  CommonOpts walk_o;
  std::uint64_t walk_seed = 0;
  int walk_steps = 8;
  std::string walk_constraint = "none";
  CLI::App* walk_cmd =
      app.add_subcommand("walk", "seeded random walk through the move graph");
  add_common(walk_cmd, walk_o, true);
  walk_cmd->add_option("--seed", walk_seed, "random seed")->default_val(0);
  walk_cmd->add_option("--steps", walk_steps, "number of moves")->default_val(8);
  walk_cmd->add_option("--constraint", walk_constraint, "none or zero-index")
      ->default_val("none");
  walk_cmd->callback(
      [&] { run_walk(walk_o, walk_seed, walk_steps, walk_constraint); });

  bool dims_json = false;
  int dims_n = 0, dims_k = 1;
  std::string dims_ambient = "line", dims_quotient = "o";
  CLI::App* dims_cmd = app.add_subcommand("dims", "dimension of a formula space");
  dims_cmd->add_flag("--json", dims_json, "emit a JSON document");
  dims_cmd->add_option("--n", dims_n, "order bound")->required();
  dims_cmd->add_option("--k", dims_k, "zero-mark threshold (o quotient)")
      ->default_val(1);
  dims_cmd->add_option("--ambient", dims_ambient, "line or loop")
      ->default_val("line");
  dims_cmd->add_option("--quotient", dims_quotient, "o, e, or gpv")
      ->default_val("o");
  dims_cmd->callback(
      [&] { run_dims(dims_json, dims_n, dims_k, dims_ambient, dims_quotient); });

  int basis_n = 0, basis_k = 1;
  std::string basis_ambient = "line", basis_quotient = "o";
  CLI::App* basis_cmd =
      app.add_subcommand("basis", "canonical basis of a formula space (JSON)");
  basis_cmd->add_option("--n", basis_n, "order bound")->required();
  basis_cmd->add_option("--k", basis_k, "zero-mark threshold (o quotient)")
      ->default_val(1);
  basis_cmd->add_option("--ambient", basis_ambient, "line or loop")
      ->default_val("line");
  basis_cmd->add_option("--quotient", basis_quotient, "o, e, or gpv")
      ->default_val("o");
  basis_cmd->callback(
      [&] { run_basis(basis_n, basis_k, basis_ambient, basis_quotient); });

  CommonOpts eval_o;
  std::string eval_formula, eval_parity = "gaussian";
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a formula on Gauss codes");
  eval_cmd->add_flag("--json", eval_o.as_json, "emit a JSON document");
  eval_cmd->add_option("--formula", eval_formula, "builtin name or JSON file")
      ->required();
  eval_cmd->add_option("--parity", eval_parity, "gaussian or hier:<t>");
  eval_cmd->add_option("codes", eval_o.codes,
                       "Gauss codes (stdin, one per line, when omitted)");
  eval_cmd->callback([&] { run_eval(eval_o, eval_formula, eval_parity); });

  bool solve_json = false;
  int solve_n1 = 0, solve_n2 = 0;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve-generator", "exact solution of the generator coefficient system");
  solve_cmd->add_flag("--json", solve_json, "emit a JSON document");
  solve_cmd->add_option("--n1", solve_n1, "right-arrow degree")->required();
  solve_cmd->add_option("--n2", solve_n2, "left-arrow degree")->required();
  solve_cmd->callback([&] { run_solve_generator(solve_json, solve_n1, solve_n2); });

  bool builtin_json = false;
  std::string builtin_name;
  CLI::App* builtin_cmd =
      app.add_subcommand("builtin", "list or print built-in formulas");
  builtin_cmd->add_flag("--json", builtin_json, "emit a JSON document");
  builtin_cmd->add_option("name", builtin_name, "formula name (omit to list)");
  builtin_cmd->callback([&] { run_builtin(builtin_json, builtin_name); });

  CommonOpts pk_o;
  std::string pk_formula, pk_parity = "gaussian", pk_singular;
  CLI::App* pk_cmd = app.add_subcommand(
      "probe-kauffman",
      "alternating evaluation sum over crossing switches of singular arrows");
  pk_cmd->add_flag("--json", pk_o.as_json, "emit a JSON document");
  pk_cmd->add_option("--formula", pk_formula, "builtin name or JSON file")
      ->required();
  pk_cmd->add_option("--parity", pk_parity, "gaussian or hier:<t>");
  pk_cmd->add_option("--singular", pk_singular, "comma-separated arrow indices")
      ->required();
  pk_cmd->add_option("codes", pk_o.codes,
                     "Gauss codes (stdin, one per line, when omitted)");
  pk_cmd->callback(
      [&] { run_probe_kauffman(pk_o, pk_formula, pk_parity, pk_singular); });

  CommonOpts pv_o;
  std::string pv_formula, pv_parity = "gaussian", pv_flips;
  CLI::App* pv_cmd = app.add_subcommand(
      "probe-virtualization",
      "whether evaluation survives reversing the listed arrows");
  pv_cmd->add_flag("--json", pv_o.as_json, "emit a JSON document");
  pv_cmd->add_option("--formula", pv_formula, "builtin name or JSON file")
      ->required();
  pv_cmd->add_option("--parity", pv_parity, "gaussian or hier:<t>");
  pv_cmd->add_option("--flips", pv_flips, "comma-separated arrow indices")
      ->required();
  pv_cmd->add_option("codes", pv_o.codes,
                     "Gauss codes (stdin, one per line, when omitted)");
  pv_cmd->callback(
      [&] { run_probe_virtualization(pv_o, pv_formula, pv_parity, pv_flips); });

  bool zi_json = false;
  int zi_bound = 4;
  CLI::App* zi_cmd = app.add_subcommand(
      "zero-index-report",
      "exhaustive agreement/rotation checks on zero-index diagrams");
  zi_cmd->add_flag("--json", zi_json, "emit a JSON document");
  zi_cmd->add_option("--bound", zi_bound, "maximum arrows")->default_val(4);
  zi_cmd->callback([&] { run_zero_index_report(zi_json, zi_bound); });

  CommonOpts dc_o;
  std::string dc_formula, dc_parity = "gaussian";
  CLI::App* dc_cmd = app.add_subcommand(
      "decompose-check",
      "evaluation equals the sum of its odd and even parts");
  dc_cmd->add_flag("--json", dc_o.as_json, "emit a JSON document");
  dc_cmd->add_option("--formula", dc_formula, "builtin name or JSON file")
      ->required();
  dc_cmd->add_option("--parity", dc_parity, "gaussian or hier:<t>");
  dc_cmd->add_option("codes", dc_o.codes,
                     "Gauss codes (stdin, one per line, when omitted)");
  dc_cmd->callback([&] { run_decompose_check(dc_o, dc_formula, dc_parity); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const pg::parse_error& e) {
    std::cerr << json{{"error", {{"message", e.what()}, {"type", "parse"}}},
                      {"schema", "1"}}
                     .dump()
              << "\n";
    return 1;
  } catch (const pg::domain_error& e) {
    std::cerr << json{{"error", {{"message", e.what()}, {"type", "domain"}}},
                      {"schema", "1"}}
                     .dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"message", e.what()}, {"type", "internal"}}},
                      {"schema", "1"}}
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}
