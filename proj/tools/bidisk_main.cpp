// bidisk — reproducible experiment runner for kernel positivity and
// composition-operator norms on the Hardy space of the bidisk.
//
// Subcommands: kernel-check, comp-norm, mult-norm, mate-check, decompose,
// examples. Every run is driven by a RunConfig (flags or --config JSON);
// identical config + seed gives byte-identical reports. Exit codes:
// 0 success, 1 config/IO error, 2 mathematical failure.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bidisk/errors.hpp"
#include "bidisk/hardy_ops.hpp"
#include "bidisk/json_io.hpp"
#include "bidisk/kernel.hpp"
#include "bidisk/subhardy.hpp"

namespace {

using namespace bidisk;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("BIDISK_LOG");
  if (env == nullptr) return LogLevel::Info;
  const std::string v(env);
  if (v == "quiet") return LogLevel::Quiet;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[bidisk] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[bidisk:debug] " << msg << "\n";
}

struct RunConfig {
  std::string command;
  std::string phi;     // path or inline JSON
  std::string psi;     // path or inline JSON (also the mate for mate-check)
  std::string kernel;  // path or inline JSON
  std::string poly;    // decompose input
  std::string form;    // ex1 | ex2 | ex3
  std::uint64_t seed = 0;
  int trials = 200;
  int set_size = 8;
  double tol = 1e-8;
  std::vector<int> n_list;
  std::string out;  // empty -> stdout
  bool fail_on_negative = false;
};

Json parse_inline_or_file(const std::string& src, const char* what) {
  if (src.empty()) throw ConfigError(std::string("missing input: ") + what);
  if (src.front() == '{') {
    try {
      return Json::parse(src);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string(what) + ": inline JSON malformed: " + e.what());
    }
  }
  return load_json_file(src);
}

BiPoly load_bipoly(const std::string& src, const char* what) {
  return bipoly_from_json(parse_inline_or_file(src, what));
}

// "1,2,5" plus "a..b" range tokens, e.g. "1..30".
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    const std::size_t dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        const int lo = std::stoi(tok.substr(0, dots));
        const int hi = std::stoi(tok.substr(dots + 2));
        for (int n = lo; n <= hi; ++n) out.push_back(n);
      } else if (!tok.empty()) {
        out.push_back(std::stoi(tok));
      }
    } catch (const std::exception&) {
      throw ConfigError("cannot parse --n-list token '" + tok + "'");
    }
    pos = comma + 1;
  }
  return out;
}

void write_report(const RunConfig& cfg, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file: " + cfg.out);
  f << text;
}

std::string csv_path_for(const std::string& out) {
  const std::size_t slash = out.find_last_of('/');
  const std::size_t dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + ".csv";
  }
  return out.substr(0, dot) + ".csv";
}

Json screen_to_json(const PositivityScreen& s) {
  Json j{{"verdict", s.counterexample_found ? "not_psd" : "no_counterexample_found"},
         {"worst_min_eig", s.worst_min_eig},
         {"worst_trace", s.worst_trace},
         {"trials", s.trials_run}};
  if (s.worst_set.has_value()) j["worst_set"] = to_json(*s.worst_set);
  if (s.certificate.has_value()) j["certificate"] = to_json(*s.certificate);
  return j;
}

// --- commands ---------------------------------------------------------------

int run_kernel_check(const RunConfig& cfg) {
  KernelExpr K = KernelExpr::szego();
  if (!cfg.kernel.empty()) {
    K = kernel_from_json(parse_inline_or_file(cfg.kernel, "--kernel"));
  } else if (!cfg.phi.empty() && !cfg.psi.empty()) {
    try {
      K = KernelExpr::r_kernel(load_bipoly(cfg.phi, "--phi"), load_bipoly(cfg.psi, "--psi"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    throw ConfigError("kernel-check needs --kernel, or --phi and --psi");
  }

  log_info("kernel-check: " + std::to_string(cfg.trials) + " trials, set size <= " +
           std::to_string(cfg.set_size));
  const PositivityScreen screen =
      positivity_test(K, cfg.trials, cfg.set_size, cfg.seed, cfg.tol);

  Json report = screen_to_json(screen);
  report["command"] = "kernel-check";
  report["kernel"] = to_json(K);
  report["seed"] = cfg.seed;
  report["tol"] = cfg.tol;
  write_report(cfg, report);
  return (screen.counterexample_found && cfg.fail_on_negative) ? 2 : 0;
}

int run_comp_norm(const RunConfig& cfg) {
  if (cfg.out.empty()) {
    throw ConfigError("comp-norm requires --out (a CSV is written next to it)");
  }
  SymbolPair B = [&] {
    try {
      return SymbolPair(load_bipoly(cfg.phi, "--phi"), load_bipoly(cfg.psi, "--psi"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();

  std::vector<int> ns = cfg.n_list;
  if (ns.empty()) {
    for (int n = 1; n <= 30; ++n) ns.push_back(n);
  }
  log_info("comp-norm: " + std::to_string(ns.size()) + " truncation levels up to N=" +
           std::to_string(ns.back()));

  const std::vector<double> norms = comp_norm_sequence(B, ns);
  const double bound = theorem_M_bound(B);

  // stabilized = three consecutive relative increments below 1e-6 at the tail
  bool stabilized = false;
  if (norms.size() >= 4) {
    stabilized = true;
    for (std::size_t k = norms.size() - 3; k < norms.size(); ++k) {
      const double rel = (norms[k] - norms[k - 1]) / std::max(norms[k - 1], 1e-30);
      if (rel >= 1e-6) stabilized = false;
    }
  }

  const std::string csv_path = csv_path_for(cfg.out);
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw ConfigError("cannot write CSV file: " + csv_path);
    csv.precision(17);
    csv << "N,norm,bound\n";
    for (std::size_t k = 0; k < ns.size(); ++k) {
      csv << ns[k] << "," << norms[k] << "," << bound << "\n";
    }
  }

  Json report{{"command", "comp-norm"}, {"stabilized", stabilized},
              {"last_norm", norms.back()}, {"bound", bound},
              {"n_list", ns},             {"norms", norms},
              {"csv", csv_path}};
  write_report(cfg, report);
  return 0;
}

int run_mult_norm(const RunConfig& cfg) {
  const BiPoly psi = load_bipoly(cfg.psi, "--psi");
  KernelExpr K = KernelExpr::szego();
  std::string kernel_tag = "szego";
  if (!cfg.kernel.empty()) {
    K = kernel_from_json(parse_inline_or_file(cfg.kernel, "--kernel"));
    kernel_tag = K.tag();
  } else if (!cfg.phi.empty()) {
    try {
      K = KernelExpr::dbr2(load_bipoly(cfg.phi, "--phi"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    kernel_tag = "dbr2";
  }

  std::vector<int> sizes = cfg.n_list;
  if (sizes.empty()) sizes = {2, 4, 8, 16, 24, 32};
  const int max_size = *std::max_element(sizes.begin(), sizes.end());
  Rng rng(cfg.seed);
  const PointSet full = PointSet::sample(rng, max_size);

  log_info("mult-norm: nested sets up to " + std::to_string(max_size) + " points");
  Json deltas = Json::array();
  for (const int size : sizes) {
    std::vector<Point2> prefix(full.points().begin(), full.points().begin() + size);
    const double d = multiplier_norm_lb(psi, K, PointSet(std::move(prefix)));
    deltas.push_back({{"size", size}, {"delta", d}});
    log_debug("size " + std::to_string(size) + " -> delta " + std::to_string(d));
  }

  Json report{{"command", "mult-norm"},
              {"kernel", kernel_tag},
              {"delta_by_set_size", deltas},
              {"seed", cfg.seed}};
  write_report(cfg, report);
  return 0;
}

int run_mate_check(const RunConfig& cfg) {
  const BiPoly phi = load_bipoly(cfg.phi, "--phi");
  const BiPoly mate = load_bipoly(cfg.psi, "--psi");
  const double dev = mate_deviation(phi, mate);
  Json report{{"command", "mate-check"}, {"equal", dev <= 1e-12}, {"max_coeff_dev", dev}};
  write_report(cfg, report);
  return 0;
}

int run_decompose(const RunConfig& cfg) {
  const BiPoly f = load_bipoly(cfg.poly, "--f");
  Decomposition d;
  if (cfg.form == "ex1") {
    d = decompose_ex1(f);
  } else if (cfg.form == "ex2") {
    d = decompose_ex2(f);
  } else if (cfg.form == "ex3") {
    d = decompose_ex3(f);
  } else {
    throw ConfigError("decompose needs --form ex1|ex2|ex3");
  }
  write_report(cfg, to_json(d));
  return 0;
}

int run_examples(const RunConfig& cfg) {
  const BiPoly one = BiPoly::constant(1.0);
  const BiPoly v1 = BiPoly::variable(1);
  const BiPoly v2 = BiPoly::variable(2);
  const Complex half(0.5, 0.0);

  struct Pair {
    std::string name;
    BiPoly phi;
    BiPoly a;
  };
  const std::vector<Pair> pairs = {
      {"(1+z1)/2", (one + v1) * half, (one - v1) * half},
      {"(1+z1z2)/2", (one + v1 * v2) * half, (one - v1 * v2) * half},
      {"(z1+z2)/2", (v1 + v2) * half, (v1 - v2) * half},
  };

  std::vector<BiPoly> bundle;
  bundle.push_back(v1 * v2);
  bundle.push_back(v1 * v1 * v2 + v2 * v2);
  bundle.push_back((v1 + v2) * (v1 + v2));
  bundle.push_back(one + v1 * Complex(2.0, 0.0) + v2 * v2 * v2);
  bundle.push_back(v1 * v1 * v1 - v2 * Complex(0.0, 1.0));

  Json items = Json::array();
  bool all_pass = true;
  const auto push = [&](const std::string& name, bool pass, Json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    items.push_back(detail);
    all_pass = all_pass && pass;
  };

  for (const auto& p : pairs) {
    const double dev = mate_deviation(p.phi, p.a);
    push("mate:" + p.name, dev <= 1e-12, Json{{"max_coeff_dev", dev}});
  }

  struct Form {
    std::string name;
    Decomposition (*decompose)(const BiPoly&);
  };
  const std::vector<Form> forms = {
      {"ex1", decompose_ex1}, {"ex2", decompose_ex2}, {"ex3", decompose_ex3}};
  for (const auto& form : forms) {
    for (std::size_t b = 0; b < bundle.size(); ++b) {
      const Decomposition d = form.decompose(bundle[b]);
      const double dev = (assemble(d) - bundle[b]).max_abs_coeff();
      const double g_sup = sup_norm_grid(g_function(d), 64);
      push("roundtrip:" + form.name + ":" + std::to_string(b), dev == 0.0,
           Json{{"residual", dev}, {"g_sup_grid", g_sup}});
    }
  }

  const std::vector<std::pair<std::string, BiPoly>> psis = {
      {"z1", v1}, {"z2", v2}, {"z1z2", v1 * v2}, {"(z1+z2)/2", (v1 + v2) * half}};
  const std::vector<PointSet> sets = default_com_sets(cfg.seed);
  for (const auto& p : pairs) {
    // constant psi = 0: R is the dBR kernel times a positive constant
    {
      const KernelExpr r = KernelExpr::r_kernel(p.phi, BiPoly{});
      const PositivityScreen s = positivity_test(r, cfg.trials, 10, cfg.seed, cfg.tol);
      push("positivity:" + p.name + ":psi=0", !s.counterexample_found,
           Json{{"worst_min_eig", s.worst_min_eig}, {"c", 0.0}});
    }
    for (std::size_t q = 0; q < psis.size(); ++q) {
      const ComEstimate est = theorem_com_k(p.phi, psis[q].second, sets);
      const double c = 0.9 * est.k;
      const KernelExpr r = KernelExpr::r_kernel(p.phi, psis[q].second * Complex(c, 0.0));
      const PositivityScreen s = positivity_test(r, cfg.trials, 10, cfg.seed, cfg.tol);
      push("positivity:" + p.name + ":psi=" + psis[q].first, !s.counterexample_found,
           Json{{"worst_min_eig", s.worst_min_eig},
                {"c", c},
                {"k_estimate", est.k},
                {"k_consistent", est.consistent}});
      log_debug("screen " + p.name + " x " + psis[q].first + " c=" + std::to_string(c));
    }
  }

  Json report{{"command", "examples"},
              {"items", items},
              {"all_pass", all_pass},
              {"seed", cfg.seed},
              {"trials", cfg.trials}};
  write_report(cfg, report);
  return (!all_pass && cfg.fail_on_negative) ? 2 : 0;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "kernel-check") return run_kernel_check(cfg);
  if (cfg.command == "comp-norm") return run_comp_norm(cfg);
  if (cfg.command == "mult-norm") return run_mult_norm(cfg);
  if (cfg.command == "mate-check") return run_mate_check(cfg);
  if (cfg.command == "decompose") return run_decompose(cfg);
  if (cfg.command == "examples") return run_examples(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

void apply_config_file(const std::string& path, RunConfig* cfg) {
  const Json j = load_json_file(path);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto get_str = [&](const char* key, std::string* dst) {
    if (j.contains(key) && j[key].is_string()) *dst = j[key].get<std::string>();
  };
  get_str("command", &cfg->command);
  get_str("phi", &cfg->phi);
  get_str("psi", &cfg->psi);
  get_str("kernel", &cfg->kernel);
  get_str("f", &cfg->poly);
  get_str("form", &cfg->form);
  get_str("out", &cfg->out);
  if (j.contains("seed")) cfg->seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) cfg->trials = j["trials"].get<int>();
  if (j.contains("set_size")) cfg->set_size = j["set_size"].get<int>();
  if (j.contains("tol")) cfg->tol = j["tol"].get<double>();
  if (j.contains("fail_on_negative")) {
    cfg->fail_on_negative = j["fail_on_negative"].get<bool>();
  }
  if (j.contains("n_list")) {
    if (j["n_list"].is_string()) {
      cfg->n_list = parse_n_list(j["n_list"].get<std::string>());
    } else {
      cfg->n_list = j["n_list"].get<std::vector<int>>();
    }
  }
  // polynomial inputs may be inline JSON objects as well
  const auto get_inline = [&](const char* key, std::string* dst) {
    if (j.contains(key) && j[key].is_object()) *dst = j[key].dump();
  };
  get_inline("phi", &cfg->phi);
  get_inline("psi", &cfg->psi);
  get_inline("kernel", &cfg->kernel);
  get_inline("f", &cfg->poly);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel positivity and composition-operator toolkit for H^2 of the bidisk"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string config_path;
  std::string n_list_text;

  app.add_option("--config", config_path, "JSON config file (fields mirror the flags)");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--phi", cfg.phi, "BiPoly JSON (path or inline)");
    sub->add_option("--psi", cfg.psi, "BiPoly JSON (path or inline)");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--trials", cfg.trials, "number of sampled point sets");
    sub->add_option("--set-size", cfg.set_size, "max points per sampled set");
    sub->add_option("--tol", cfg.tol, "relative PSD tolerance");
    sub->add_option("--n-list", n_list_text, "comma list, ranges allowed (1..30)");
    sub->add_option("--out", cfg.out, "report path (default stdout)");
    sub->add_flag("--fail-on-negative", cfg.fail_on_negative,
                  "exit 2 when a certificate/negative item appears");
  };

  CLI::App* kernel_check = app.add_subcommand("kernel-check", "positivity screen of a kernel");
  kernel_check->add_option("--kernel", cfg.kernel, "KernelExpr JSON (path or inline)");
  add_common(kernel_check);

  CLI::App* comp_norm = app.add_subcommand("comp-norm", "truncated composition-operator norms");
  add_common(comp_norm);

  CLI::App* mult_norm = app.add_subcommand("mult-norm", "multiplier-norm lower bounds");
  mult_norm->add_option("--kernel", cfg.kernel, "KernelExpr JSON (path or inline)");
  add_common(mult_norm);

  CLI::App* mate_check =
      app.add_subcommand("mate-check", "verify |phi|^2 + |a|^2 = 1 (--psi is the mate)");
  add_common(mate_check);

  CLI::App* decompose = app.add_subcommand("decompose", "split f per one of the three forms");
  decompose->add_option("--form", cfg.form, "ex1 | ex2 | ex3");
  decompose->add_option("--f", cfg.poly, "BiPoly JSON (path or inline)");
  add_common(decompose);

  CLI::App* examples = app.add_subcommand("examples", "run the bundled example battery");
  add_common(examples);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(config_path, &cfg);
    if (kernel_check->parsed()) cfg.command = "kernel-check";
    if (comp_norm->parsed()) cfg.command = "comp-norm";
    if (mult_norm->parsed()) cfg.command = "mult-norm";
    if (mate_check->parsed()) cfg.command = "mate-check";
    if (decompose->parsed()) cfg.command = "decompose";
    if (examples->parsed()) cfg.command = "examples";
    if (!n_list_text.empty()) cfg.n_list = parse_n_list(n_list_text);
    if (cfg.command.empty()) {
      std::cerr << app.help() << "\n";
      return 1;
    }
    return dispatch(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NotDivisible& e) {
    const Json err{{"error", {{"type", "NotDivisible"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const OriginOnBoundary& e) {
    const Json err{{"error", {{"type", "OriginOnBoundary"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const DegenerateSymbol& e) {
    const Json err{{"error", {{"type", "DegenerateSymbol"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const SingularPencil& e) {
    const Json err{{"error", {{"type", "SingularPencil"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
