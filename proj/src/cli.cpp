#include "weyl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weyl/classify.hpp"
#include "weyl/closure.hpp"
#include "weyl/enumerate.hpp"
#include "weyl/fock.hpp"
#include "weyl/igusa.hpp"
#include "weyl/json_io.hpp"
#include "weyl/wei_norman.hpp"

namespace weyl::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonInputError("", std::string(path) + " is not valid JSON (" + e.what() + ")");
  }
}

json to_json(const Identification& id) {
  json params = json::array();
  for (const auto& p : id.params) params.push_back(to_string(p));
  return {{"recognized", id.recognized}, {"name", id.name}, {"label", id.label}, {"params", params}, {"method", id.method}};
}

json to_json(const Fingerprint& f) {
  const auto [p, m, z] = f.killing_signature;
  return {{"dim", f.dim},
          {"derived_series", f.derived_dims},
          {"lower_central_series", f.lcs_dims},
          {"center_dim", f.center_dim},
          {"solvable", f.solvable},
          {"nilpotent", f.nilpotent},
          {"killing", {{"rank", f.killing_rank}, {"signature", {p, m, z}}}}};
}

json to_json(const RealizationRecord& r) {
  return {{"generating_subset", r.generating_subset},
          {"dim", r.span.dim()},
          {"basis", weyl::to_json(r.span.basis())},
          {"catalog", to_json(r.catalog)}};
}

std::string subset_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

std::string glossary_markdown(const GlossaryReport& g) {
  std::ostringstream md;
  md << "| algebra | dimension | realizations | generating subsets |\n|---|---|---|---|\n";
  for (const auto& row : g.rows) {
    md << "| " << row.label << " | " << row.dim << " | " << row.subsets.size() << " | ";
    for (std::size_t k = 0; k < row.subsets.size(); ++k) md << (k ? " " : "") << subset_text(row.subsets[k]);
    md << " |\n";
  }
  return md.str();
}

// ---------------------------------------------------------------------------
// simulate

std::vector<double> number_list(const json& j, const std::string& ptr, std::size_t want) {
  if (!j.is_array()) throw JsonInputError(ptr, "expected an array of numbers");
  if (j.size() > want) throw JsonInputError(ptr, "at most " + std::to_string(want) + " entries allowed");
  std::vector<double> v;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw JsonInputError(ptr + "/" + std::to_string(k), "expected a number");
    v.push_back(j[k].get<double>());
  }
  v.resize(want, 0.0);
  return v;
}

double positive(const json& obj, const char* key, const std::string& ptr) {
  const json& v = detail::field(obj, key, ptr);
  if (!v.is_number() || !(v.get<double>() > 0)) throw JsonInputError(ptr + "/" + key, "expected a positive number");
  return v.get<double>();
}

// {"h":..,"u":[[..],..]} or {"preset":"constant","h":..,"t":..,"values":[..]}
// or {"preset":"sinusoid","h":..,"t":..,"amplitude":[..],"omega":[..],"phase":[..],"offset":[..]}
ControlSpec controls_from_json(const json& j, DynAlgebra alg) {
  if (!j.is_object()) throw JsonInputError("", "expected an object");
  ControlSpec s;
  s.algebra = alg;
  s.h = positive(j, "h", "");
  const std::size_t nc = s.n_controls();
  if (!j.contains("preset")) {
    const json& u = detail::field(j, "u", "");
    if (!u.is_array() || u.empty()) throw JsonInputError("/u", "expected a non-empty array of sample arrays");
    if (u.size() > nc) throw JsonInputError("/u", "at most " + std::to_string(nc) + " controls for this algebra");
    for (std::size_t k = 0; k < u.size(); ++k) {
      const std::string p = "/u/" + std::to_string(k);
      if (!u[k].is_array() || u[k].empty()) throw JsonInputError(p, "expected a non-empty array of numbers");
      s.u.push_back(number_list(u[k], p, u[k].size()));
      if (s.u[k].size() != s.u[0].size()) throw JsonInputError(p, "control arrays must have equal length");
    }
    s.n_steps = s.u[0].size() - 1;
    return s;
  }
  const json& preset = j["preset"];
  const double t = positive(j, "t", "");
  const double steps = std::round(t / s.h);
  if (steps < 1 || steps > 1e7 || std::abs(steps * s.h - t) > 1e-9 * t)
    throw JsonInputError("/t", "t must be a positive integer multiple of h");
  s.n_steps = static_cast<std::size_t>(steps);
  auto list = [&](const char* key) {
    return j.contains(key) ? number_list(j[key], std::string("/") + key, nc) : std::vector<double>(nc, 0.0);
  };
  std::vector<std::function<double(double)>> fs;
  if (preset == "constant") {
    const auto v = list("values");
    for (double x : v) fs.push_back([x](double) { return x; });
  } else if (preset == "sinusoid") {
    const auto amp = list("amplitude"), om = list("omega"), ph = list("phase"), off = list("offset");
    for (std::size_t k = 0; k < nc; ++k)
      fs.push_back([a = amp[k], w = om[k], p = ph[k], o = off[k]](double x) { return o + a * std::sin(w * x + p); });
  } else {
    throw JsonInputError("/preset", "unknown preset (expected \"constant\" or \"sinusoid\")");
  }
  return ControlSpec::from_functions(alg, s.h, s.n_steps, fs);
}

json simulate(DynAlgebra alg, const ControlSpec& spec, int fock_dim, bool oracle, const std::string& csv) {
  const FactorSolution sol = alg == DynAlgebra::WH2 ? wh2_factors(spec) : schrodinger_factors(spec);
  json out;
  out["algebra"] = to_cstr(alg);
  out["method"] = to_cstr(sol.method);
  out["h"] = spec.h;
  out["n_steps"] = spec.n_steps;
  out["t_final"] = spec.time(spec.n_steps);
  out["f"] = sol.f;
  out["residual"] = residual_check(spec, sol);
  out["error_estimate"] = sol.error_estimate;
  if (oracle) {
    const CMatrix ud = direct_propagator(spec, fock_dim, spec.n_steps);
    const CMatrix uf = factored_propagator(sol, spec.n_steps, fock_dim);
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(fock_dim), sup = Eigen::VectorXcd::Zero(fock_dim);
    vac(0) = 1;
    sup(0) = sup(1) = 1 / std::numbers::sqrt2;
    out["fidelity"] = {{"fock_dim", fock_dim},
                       {"vacuum", state_fidelity(ud, uf, vac)},
                       {"superposition", state_fidelity(ud, uf, sup)},
                       {"unitarity_error", interior_unitarity_error(uf)}};
  } else {
    out["fidelity"] = nullptr;
  }
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw UsageError("cannot write " + csv);
    f << "t";
    for (std::size_t j = 0; j < sol.f.size(); ++j) f << ",f" << j + 1;
    f << "\n" << std::setprecision(17);
    for (std::size_t k = 0; k < sol.n_points(); ++k) {
      f << spec.time(k);
      for (const auto& fj : sol.f) f << "," << fj[k];
      f << "\n";
    }
  }
  return out;
}

constexpr const char* kExitCodes =
    "Exit codes: 0 success; 1 domain error (input is well-formed but the computation cannot proceed,\n"
    "e.g. a non-closed basis or a blown-up integration); 2 usage error or malformed JSON (the message\n"
    "carries a JSON pointer to the offending field). WEYL_LIE_THREADS caps worker threads.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Lie-closure, classification and Wei-Norman tools for the skew-hermitian Weyl algebra", "weyl-lie"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  std::string gens_path, basis_path, e1_path, e2_path, controls_path, csv_path, algebra = "wh2";
  Budget budget;
  int samples = 256, fock_dim = 64;
  std::uint64_t seed = 7;
  bool markdown = false, no_oracle = false;

  auto* closure = app.add_subcommand("closure", "Lie closure of a generator set");
  closure->add_option("--gens", gens_path, "JSON list of skew polynomials")->required();
  closure->add_option("--budget-dim", budget.max_dim, "dimension budget")->check(CLI::PositiveNumber);
  closure->add_option("--budget-deg", budget.max_degree, "degree budget")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "fingerprint and catalog match of a closed basis");
  classify->add_option("--basis", basis_path, "JSON list of skew polynomials")->required();

  auto* enumerate = app.add_subcommand("enumerate", "all subalgebras generated by subsets of a basis");
  enumerate->add_option("--basis", basis_path, "JSON list of skew polynomials")->required();
  enumerate->add_flag("--markdown", markdown, "also emit a markdown glossary table");

  auto* igusa = app.add_subcommand("igusa", "Igusa certificate search for a pair");
  igusa->add_option("--e1", e1_path, "JSON skew polynomial")->required();
  igusa->add_option("--e2", e2_path, "JSON skew polynomial")->required();
  igusa->add_option("--samples", samples, "random symplectic samples")->check(CLI::NonNegativeNumber);
  igusa->add_option("--seed", seed, "sampling seed");

  auto* sim = app.add_subcommand("simulate", "Wei-Norman factors with residual and Fock-oracle fidelity");
  sim->add_option("--algebra", algebra, "wh2 or schrodinger")->check(CLI::IsMember({"wh2", "schrodinger"}));
  sim->add_option("--controls", controls_path, "controls JSON (arrays or preset)")->required();
  sim->add_option("--fock-dim", fock_dim, "Fock truncation")->check(CLI::Range(16, 400));
  sim->add_option("--csv", csv_path, "write f_j(t) as CSV");
  sim->add_flag("--no-oracle", no_oracle, "skip the direct propagator comparison");

  auto* self = app.add_subcommand("selftest", "reproduce the commutator table and the glossary");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  json result;
  int code = kOk;
  try {
    if (*closure) {
      result = to_json(lie_closure(skew_list_from_json(read_json_file(gens_path), "gens"), budget));
    } else if (*classify) {
      LieSpan span(skew_list_from_json(read_json_file(basis_path), "basis"));
      if (!span.is_closed()) throw std::domain_error("basis span is not closed under brackets");
      const auto id = identify(span);
      result = {{"dim", span.dim()},
                {"basis", weyl::to_json(span.basis())},
                {"fingerprint", to_json(id.fp)},
                {"catalog", to_json(id)}};
    } else if (*enumerate) {
      const auto recs = enumerate_subalgebras(skew_list_from_json(read_json_file(basis_path), "basis"));
      json list = json::array();
      for (const auto& r : recs) list.push_back(to_json(r));
      result = {{"count", recs.size()}, {"records", list}};
      if (markdown) {
        GlossaryReport g;
        std::map<std::pair<int, std::string>, GlossaryRow> rows;
        for (const auto& r : recs) {
          auto& row = rows[{static_cast<int>(r.span.dim()), r.catalog.label}];
          row.label = r.catalog.recognized ? r.catalog.label : "unrecognized";
          row.dim = static_cast<int>(r.span.dim());
          row.subsets.push_back(r.generating_subset);
        }
        for (auto& [k, row] : rows) g.rows.push_back(std::move(row));
        result["markdown"] = glossary_markdown(g);
      }
    } else if (*igusa) {
      const SkewPoly e1 = skew_from_json(read_json_file(e1_path));
      const SkewPoly e2 = skew_from_json(read_json_file(e2_path));
      const auto check = identity_check(e1, e2);
      const auto cert = symplectic_search(e1, e2, samples, seed);
      if (cert) {
        result = to_json(*cert);
        result["rechecked"] = recheck(*cert, e1, e2);
      } else {
        result = {{"verdict", "inconclusive"}, {"sigma", nullptr}, {"a0b0", nullptr}, {"delta", nullptr}};
      }
      result["identity_check"] = {{"verdict", to_cstr(check.verdict)}, {"conditions", check.conditions}};
      result["samples"] = samples;
      result["seed"] = seed;
    } else if (*sim) {
      const DynAlgebra alg = algebra == "wh2" ? DynAlgebra::WH2 : DynAlgebra::Schrodinger;
      result = simulate(alg, controls_from_json(read_json_file(controls_path), alg), fock_dim, !no_oracle, csv_path);
    } else if (*self) {
      const auto r = selftest();
      for (const auto& l : r.lines) err << l << "\n";
      result = r.report;
      if (!r.ok()) code = kDomainError;
    }
  } catch (const JsonInputError& e) {
    out << json{{"error", e.what()}, {"pointer", e.pointer}}.dump() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    out << json{{"error", e.what()}}.dump() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    json j{{"error", e.what()}};
    if (const auto* b = dynamic_cast<const BlowUpError*>(&e)) j["blow_up"] = {{"index", b->index}, {"time", b->time}};
    out << j.dump() << "\n";
    return kDomainError;
  }
  out << result.dump(2) << "\n";
  return code;
}

}  // namespace weyl::cli
