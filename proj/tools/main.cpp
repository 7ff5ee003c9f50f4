// Command-line front end: evaluation, axiom checks, asymmetry surfaces and
// measures, bound curves, attainment witnesses, shock-model sampling, and
// the verification suite.
//
// Exit codes: 0 success, 1 check/verification failure, 2 usage error,
// 3 numerical failure.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casym/asymmetry.hpp"
#include "casym/copulas.hpp"
#include "casym/gridfield.hpp"
#include "casym/numerics.hpp"
#include "casym/shockmodels.hpp"
#include "casym/verify.hpp"

namespace {

using namespace casym;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inline grammar: `kind` or `kind:p1,p2` for the closed-form families.
Copula parse_inline_copula(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::istringstream rest(text.substr(colon + 1));
    std::string tok;
    while (std::getline(rest, tok, ','))
      try {
        params.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw UsageError("bad numeric parameter '" + tok + "'");
      }
  }
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw UsageError("copula '" + kind + "' expects " + std::to_string(n) +
                       " parameter(s)");
  };
  try {
    if (kind == "pi") { want(0); return product(); }
    if (kind == "m") { want(0); return frechet_m(); }
    if (kind == "w") { want(0); return frechet_w(); }
    if (kind == "cmu") { want(1); return cmu(params[0]); }
    if (kind == "dmu") { want(1); return dmu(params[0]); }
    if (kind == "elammu") { want(2); return elammu(params[0], params[1]); }
    if (kind == "wlambda") { want(1); return wlambda(params[0]); }
    if (kind == "nlambda") { want(1); return nlambda(params[0]); }
    if (kind == "pab") { want(2); return pab(params[0], params[1]); }
    if (kind == "qab") { want(2); return qab(params[0], params[1]); }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown inline copula kind '" + kind + "'");
}

Copula load_copula(const std::string& inline_spec, const std::string& file) {
  if (inline_spec.empty() == file.empty())
    throw UsageError("provide exactly one of --copula / --copula-file");
  if (!inline_spec.empty()) return parse_inline_copula(inline_spec);
  std::ifstream is(file);
  if (!is) throw UsageError("cannot open " + file);
  try {
    return Copula::from_json(nlohmann::json::parse(is));
  } catch (const std::exception& e) {
    throw UsageError("bad copula file: " + std::string(e.what()));
  }
}

double parse_p(const std::string& s) {
  if (s == "inf") return kInfiniteP;
  try {
    const double p = std::stod(s);
    if (p >= 1.0) return p;
  } catch (const std::exception&) {
  }
  throw UsageError("--p must be a real >= 1 or 'inf'");
}

void validate_thread_cap() {
  const char* env = std::getenv("COPULA_ASYM_THREADS");
  if (!env) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1)
    throw UsageError("COPULA_ASYM_THREADS must be a positive integer");
  // Current scans are sequential, which respects any positive cap.
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file " + path);
  return os;
}

int run(int argc, char** argv) {
  CLI::App app{"copula asymmetry toolkit"};
  app.require_subcommand(1);

  std::string copula_spec, copula_file, family, p_text = "1", out_path;
  std::string model, suite_text = "all";
  double x = 0, y = 0, tol = 1e-9;
  double p_min = 1, p_max = 5, mu_param = 0.5, lam_param = 0.5;
  int grid_n = 101, steps = 9;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;

  auto add_copula_opts = [&](CLI::App* cmd) {
    cmd->add_option("--copula", copula_spec, "inline copula kind[:p1,p2]");
    cmd->add_option("--copula-file", copula_file, "copula JSON file");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a copula at a point");
  add_copula_opts(eval);
  eval->add_option("--x", x)->required();
  eval->add_option("--y", y)->required();

  CLI::App* check = app.add_subcommand("check", "axiom and quadrant checks");
  add_copula_opts(check);
  check->add_option("--grid", grid_n);

  CLI::App* dstar_cmd = app.add_subcommand("dstar", "export a d* surface");
  dstar_cmd->add_option("--family", family)->required();
  dstar_cmd->add_option("--grid", grid_n);
  dstar_cmd->add_option("--out", out_path)->required();

  CLI::App* mu_cmd = app.add_subcommand("mu", "mu_p measure of asymmetry");
  add_copula_opts(mu_cmd);
  mu_cmd->add_option("--p", p_text);
  mu_cmd->add_option("--tol", tol);

  CLI::App* bounds = app.add_subcommand("bounds", "bound curves over p");
  bounds->add_option("--family", family)->required();
  bounds->add_option("--p-min", p_min);
  bounds->add_option("--p-max", p_max);
  bounds->add_option("--steps", steps);
  bounds->add_option("--out", out_path)->required();

  CLI::App* witness = app.add_subcommand("witness", "attainment witness");
  witness->add_option("--family", family)->required();
  witness->add_option("--x", x)->required();
  witness->add_option("--y", y)->required();

  CLI::App* sample_cmd = app.add_subcommand("sample", "shock-model sampling");
  sample_cmd->add_option("--model", model)->required();
  sample_cmd->add_option("--mu", mu_param);
  sample_cmd->add_option("--lam", lam_param);
  sample_cmd->add_option("--n", n_samples);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--out", out_path)->required();

  CLI::App* verify = app.add_subcommand("verify", "acceptance suites");
  verify->add_option("--suite", suite_text, "all|axioms|asymmetry|shock");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  validate_thread_cap();

  if (*eval) {
    const Copula c = load_copula(copula_spec, copula_file);
    if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1))
      throw UsageError("point must lie in the unit square");
    std::cout << format_number(c(x, y)) << "\n";
    return 0;
  }

  if (*check) {
    if (grid_n < 2) throw UsageError("--grid must be >= 2");
    const Copula c = load_copula(copula_spec, copula_file);
    const AxiomReport ax = check_axioms(c, grid_n);
    const QuadrantReport q = classify_quadrant(c, grid_n);
    nlohmann::json j;
    j["axioms"] = {{"boundary_ok", ax.boundary_ok},
                   {"two_increasing_ok", ax.two_increasing_ok},
                   {"worst_rectangle",
                    {ax.worst_rectangle[0], ax.worst_rectangle[1],
                     ax.worst_rectangle[2], ax.worst_rectangle[3],
                     ax.worst_rectangle[4]}},
                   {"grid_n", ax.grid_n}};
    j["quadrant"] = {{"classification", to_string(q.classification)},
                     {"worst_violation",
                      {{"point", {q.worst_x, q.worst_y}},
                       {"residual", q.worst_residual}}}};
    std::cout << j.dump(2) << "\n";
    return ax.boundary_ok && ax.two_increasing_ok ? 0 : 1;
  }

  if (*dstar_cmd) {
    const auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family '" + family + "'");
    if (grid_n < 2) throw UsageError("--grid must be >= 2");
    auto os = open_out(out_path);
    write_csv(sample_grid([&](double a, double b) { return dstar(*fam, a, b); },
                          grid_n),
              os);
    return 0;
  }

  if (*mu_cmd) {
    const Copula c = load_copula(copula_spec, copula_file);
    const double p = parse_p(p_text);
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    const Tolerance t = std::isinf(p) ? Tolerance{std::max(tol, 1e-9), 0.0, 64}
                                      : Tolerance{tol, 0.0, 500000};
    std::cout << mu_p(c, p, t).to_json().dump(2) << "\n";
    return 0;
  }

  if (*bounds) {
    if (steps < 1) throw UsageError("--steps must be >= 1");
    if (!(p_min >= 1.0 && p_max >= p_min))
      throw UsageError("need 1 <= p-min <= p-max");
    std::function<double(double)> bound, example;
    if (family == "marshall") {
      bound = marshall_mu_p_bound;
      example = mu_p_c23_closed;
    } else if (family == "maxmin") {
      bound = [](double p) {
        const Field2D G = [](double a, double b) { return bound_G(a, b); };
        return std::pow(2.0 * integrate2d(G, Region::TriangleXPlusYLe1, p),
                        1.0 / p);
      };
      example = mu_p_c23_closed;
    } else if (family == "rmm") {
      bound = [](double p) {
        const Field2D H = [](double a, double b) { return bound_H(a, b); };
        return std::pow(2.0 * integrate2d(H, Region::TriangleXLeY, p),
                        1.0 / p);
      };
      example = mu_p_E_closed;
    } else {
      throw UsageError("--family must be marshall|maxmin|rmm");
    }
    auto os = open_out(out_path);
    os << "p,bound,closed_form_example\n";
    for (int i = 0; i < steps; ++i) {
      const double p =
          steps == 1 ? p_min : p_min + (p_max - p_min) * i / (steps - 1);
      os << format_number(p) << ',' << format_number(bound(p)) << ','
         << format_number(example(p)) << '\n';
    }
    return 0;
  }

  if (*witness) {
    const auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family '" + family + "'");
    Copula w = [&] {
      try {
        return attainment_witness(*fam, x, y);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    nlohmann::json j;
    j["copula"] = w.to_json();
    j["difference"] = std::abs(w(x, y) - w(y, x));
    j["dstar"] = dstar(*fam, x, y);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (*sample_cmd) {
    if (n_samples < 1) throw UsageError("--n must be >= 1");
    ShockModelSpec spec = [&] {
      try {
        if (model == "marshall-cmu") return marshall_cmu_spec(mu_param);
        if (model == "maxmin-cmu") return maxmin_cmu_spec(mu_param);
        if (model == "maxmin-dmu") return maxmin_dmu_spec(mu_param);
        if (model == "rmm-elammu")
          return rmm_elammu_spec(lam_param, mu_param);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      throw UsageError("unknown model '" + model + "'");
    }();
    auto os = open_out(out_path);
    write_scatter_csv(sample(spec, n_samples, seed), os);
    return 0;
  }

  if (*verify) {
    const auto suite = parse_suite(suite_text);
    if (!suite) throw UsageError("--suite must be all|axioms|asymmetry|shock");
    const auto results = run_acceptance(*suite);
    bool all_ok = true;
    for (const CriterionResult& r : results) {
      all_ok = all_ok && r.passed;
      std::printf("[%s] %2d  %-55s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                  r.id, r.name.c_str(), r.runtime_s, r.detail.c_str());
    }
    return all_ok ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const casym::QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
