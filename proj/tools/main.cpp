#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "persres/serialize.hpp"

using namespace persres;

namespace {

struct Options {
  std::string field = "rational";
  std::string output = "text";
  std::string epsilon = "0";
  std::vector<std::string> epsilon_list;
  std::string seed = "0";
  unsigned long long budget = 1 << 16;
  long degree = 0;
  std::vector<std::string> inputs;
  std::string certificate_path;
};

Field active_field(const Options& opt) { return Field::parse_name(opt.field); }

mpq_class parse_eps(const std::string& s) {
  mpq_class e = Field::rationals().parse(s);
  if (e < 0) throw std::invalid_argument("epsilon must be nonnegative");
  return e;
}

Presentation load_presentation(const std::string& path, Field f) {
  return presentation_from_json(load_json_file(path), f);
}

void emit(const Options& opt, const json& machine, const std::string& text) {
  if (opt.output == "json")
    std::cout << machine.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_betti(const Options& opt) {
  Field f = active_field(opt);
  if (opt.degree < 0) throw std::invalid_argument("degree must be nonnegative");
  Presentation p = load_presentation(opt.inputs.at(0), f);
  auto table = betti(p, static_cast<std::size_t>(opt.degree));
  if (opt.output == "csv") {
    std::cout << betti_to_csv(table);
  } else if (opt.output == "json") {
    std::cout << betti_to_json(table).dump(2) << "\n";
  } else {
    for (const auto& [g, c] : table) std::cout << grade_to_display(g) << "," << c << "\n";
  }
  return 0;
}

int cmd_resolve(const Options& opt) {
  Field f = active_field(opt);
  Presentation p = load_presentation(opt.inputs.at(0), f);
  FreeChainComplex x = minimal_free_resolution(p);
  json j = complex_to_json(x);
  std::string text;
  for (const auto& [deg, m] : x.terms) {
    text += "degree " + std::to_string(deg) + ":";
    for (const auto& g : m.gens) text += " " + grade_to_display(g);
    text += "\n";
  }
  emit(opt, j, text);
  return 0;
}

int cmd_verify(const Options& opt) {
  Field f = active_field(opt);
  Presentation m = load_presentation(opt.inputs.at(0), f);
  Presentation n = load_presentation(opt.inputs.at(1), f);
  json cert = load_json_file(opt.certificate_path);
  bool ok = reverify_certificate(cert, m, n);
  emit(opt, json{{"verified", ok}}, std::string(ok ? "verified" : "rejected") + "\n");
  return 0;
}

int cmd_interleave(const Options& opt, Level level) {
  Field f = active_field(opt);
  if (f.is_rational())
    throw std::invalid_argument("interleaving search needs a finite field (try --field gf:2)");
  Presentation m = load_presentation(opt.inputs.at(0), Field::rationals());
  Presentation n = load_presentation(opt.inputs.at(1), Field::rationals());
  mpq_class eps = parse_eps(opt.epsilon);
  SearchResult r;
  switch (level) {
    case Level::module: r = search_module_interleaving(m, n, eps, f, opt.budget); break;
    case Level::homotopy: {
      FreeChainComplex px = minimal_free_resolution(m.to_field(f));
      FreeChainComplex py = minimal_free_resolution(n.to_field(f));
      r = search_homotopy_interleaving(px, py, eps, f, opt.budget);
      break;
    }
    case Level::derived: r = derived_interleaving_search(m, n, eps, f, opt.budget); break;
  }
  std::string text;
  switch (r.status) {
    case SearchStatus::found: text = "found\n"; break;
    case SearchStatus::none: text = "none (conclusive over " + f.name() + ")\n"; break;
    case SearchStatus::budget_exhausted: text = "budget exhausted\n"; break;
  }
  emit(opt, search_result_to_json(r), text);
  return 0;
}

int cmd_nullhomotopy(const Options& opt) {
  Field f = active_field(opt);
  FreeChainComplex x = complex_from_json(load_json_file(opt.inputs.at(0)), f);
  if (!x.validate()) throw std::invalid_argument("input is not a chain complex (d o d != 0)");
  mpq_class eps = parse_eps(opt.epsilon);
  auto h = is_nullhomotopic(smoothing_chain_map(x, eps));
  json j;
  j["epsilon"] = Field::rationals().format(eps);
  j["feasible"] = h.has_value();
  if (h) {
    json comps = json::object();
    for (const auto& [deg, m] : h->comps) comps[std::to_string(deg)] = matrix_to_json(m.entries);
    j["homotopy"] = std::move(comps);
  }
  emit(opt, j, std::string(h ? "feasible" : "infeasible") + "\n");
  return 0;
}

int cmd_distance(const Options& opt, Level level) {
  Field f = active_field(opt);
  if (f.is_rational())
    throw std::invalid_argument("distance estimation needs a finite search field (try --field gf:2)");
  Presentation m = load_presentation(opt.inputs.at(0), Field::rationals());
  Presentation n = load_presentation(opt.inputs.at(1), Field::rationals());
  DistanceBracket b = estimate_distance(m, n, level, f, opt.budget);
  std::string text = bracket_to_display(b) + "\n";
  for (const auto& e : b.evidence)
    text += "  eps=" + Field::rationals().format(e.epsilon) + " " + e.kind + ": " + e.detail + "\n";
  emit(opt, bracket_to_json(b), text);
  return 0;
}

int cmd_isometry(const Options& opt) {
  Field f = active_field(opt);
  if (f.is_rational())
    throw std::invalid_argument("isometry check needs a finite search field (try --field gf:2)");
  Presentation m = load_presentation(opt.inputs.at(0), Field::rationals());
  Presentation n = load_presentation(opt.inputs.at(1), Field::rationals());
  std::vector<mpq_class> eps_list;
  for (const auto& s : opt.epsilon_list) eps_list.push_back(parse_eps(s));
  IsometryReport r = isometry_check(m, n, eps_list, f, opt.budget);
  std::string text;
  for (const auto& row : r.rows) {
    auto yn = [](SearchStatus s) { return s == SearchStatus::found ? "yes" : "no"; };
    text += "eps=" + Field::rationals().format(row.epsilon) + " module=" + yn(row.module_status) +
            " homotopy=" + yn(row.homotopy_status) + " derived=" + yn(row.derived_status) +
            (row.agree ? " (agree)" : " (DISAGREE)") + "\n";
  }
  text += std::string("all levels agree: ") + (r.all_agree ? "yes" : "no") + "\n";
  emit(opt, isometry_report_to_json(r), text);
  return 0;
}

int cmd_ingest(const Options& opt) {
  Field f = active_field(opt);
  if (opt.degree < 0) throw std::invalid_argument("degree must be nonnegative");
  Bifiltration k = bifiltration_from_json(load_json_file(opt.inputs.at(0)));
  Presentation p = homology_presentation(k, static_cast<std::size_t>(opt.degree), f);
  json j = presentation_to_json(p);
  std::string text = "generators: " + std::to_string(p.generators().rank()) +
                     ", relations: " + std::to_string(p.relations().rank()) + "\n";
  emit(opt, j, text);
  return 0;
}

int cmd_perturb(const Options& opt) {
  Bifiltration k = bifiltration_from_json(load_json_file(opt.inputs.at(0)));
  mpq_class delta = parse_eps(opt.epsilon);
  std::uint64_t seed = std::stoull(opt.seed);
  Bifiltration out = perturb(k, delta, seed);
  json j = bifiltration_to_json(out);
  emit(opt, j, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact computations for multi-parameter persistence modules: minimal free\n"
      "resolutions, graded Betti numbers, and module/homotopy/derived-level\n"
      "interleaving decision procedures."};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, int nfiles) {
    sub->add_option("--field", opt.field, "scalar field: rational or gf:p")->capture_default_str();
    sub->add_option("--output", opt.output, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("inputs", opt.inputs, "input files")->expected(nfiles)->required();
  };

  auto* betti_cmd = app.add_subcommand("betti", "graded Betti numbers of a presentation");
  add_common(betti_cmd, 1);
  betti_cmd->add_option("-i,--degree", opt.degree, "homological degree i")->required();

  auto* resolve_cmd = app.add_subcommand("resolve", "minimal free resolution of a presentation");
  add_common(resolve_cmd, 1);

  auto* verify_cmd = app.add_subcommand("verify", "re-verify an emitted interleaving certificate");
  add_common(verify_cmd, 2);
  verify_cmd->add_option("--certificate", opt.certificate_path, "certificate JSON file")->required();

  auto* il_cmd = app.add_subcommand("interleave", "search a module-level eps-interleaving");
  auto* hil_cmd = app.add_subcommand("homotopy-interleave",
                                     "search an eps-interleaving between minimal resolutions");
  auto* dil_cmd = app.add_subcommand("derived-interleave",
                                     "search a derived-level eps-interleaving (projective replacement)");
  for (auto* sub : {il_cmd, hil_cmd, dil_cmd}) {
    add_common(sub, 2);
    sub->add_option("--epsilon", opt.epsilon, "interleaving parameter (rational)")->required();
    sub->add_option("--budget", opt.budget, "max search candidates")->capture_default_str();
  }

  auto* nh_cmd = app.add_subcommand("nullhomotopy", "decide whether s_eps on a complex is nullhomotopic");
  add_common(nh_cmd, 1);
  nh_cmd->add_option("--epsilon", opt.epsilon, "smoothing shift (rational)")->required();

  auto* dist_cmd = app.add_subcommand("distance", "verified interleaving-distance bracket");
  add_common(dist_cmd, 2);
  std::string level_name_opt = "module";
  dist_cmd->add_option("--level", level_name_opt, "module, homotopy or derived")
      ->check(CLI::IsMember({"module", "homotopy", "derived"}))
      ->capture_default_str();
  dist_cmd->add_option("--budget", opt.budget, "max search candidates per epsilon")->capture_default_str();

  auto* iso_cmd = app.add_subcommand("isometry-check", "cross-check the three interleaving levels");
  add_common(iso_cmd, 2);
  iso_cmd->add_option("--epsilon", opt.epsilon_list, "epsilon values (repeatable)")->required();
  iso_cmd->add_option("--budget", opt.budget, "max search candidates")->capture_default_str();

  auto* ingest_cmd = app.add_subcommand("ingest", "homology presentation of a bifiltration");
  add_common(ingest_cmd, 1);
  ingest_cmd->add_option("-i,--degree", opt.degree, "homology degree i")->required();

  auto* perturb_cmd = app.add_subcommand("perturb", "seeded grade perturbation of a bifiltration");
  add_common(perturb_cmd, 1);
  perturb_cmd->add_option("--epsilon", opt.epsilon, "sup-norm bound delta (rational)")->required();
  perturb_cmd->add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (betti_cmd->parsed()) return cmd_betti(opt);
    if (resolve_cmd->parsed()) return cmd_resolve(opt);
    if (verify_cmd->parsed()) return cmd_verify(opt);
    if (il_cmd->parsed()) return cmd_interleave(opt, Level::module);
    if (hil_cmd->parsed()) return cmd_interleave(opt, Level::homotopy);
    if (dil_cmd->parsed()) return cmd_interleave(opt, Level::derived);
    if (nh_cmd->parsed()) return cmd_nullhomotopy(opt);
    if (dist_cmd->parsed()) return cmd_distance(opt, parse_level(level_name_opt));
    if (iso_cmd->parsed()) return cmd_isometry(opt);
    if (ingest_cmd->parsed()) return cmd_ingest(opt);
    if (perturb_cmd->parsed()) return cmd_perturb(opt);
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
