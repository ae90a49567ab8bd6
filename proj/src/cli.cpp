#include "fracstable/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracstable/ensemble.hpp"
#include "fracstable/errors.hpp"
#include "fracstable/special_functions.hpp"
#include "fracstable/spectral_solver.hpp"
#include "fracstable/verify.hpp"

#ifndef FRACSTABLE_VERSION
#define FRACSTABLE_VERSION "dev"
#endif

namespace fracstable::cli {

using json = nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

json default_config() {
  return json{
      {"spec", json::array({json{{"lambda", 1.0}, {"nu", 0.5}}})},
      {"beta", 1.0},
      {"c", 1.0},
      {"n", 1},
      {"depth", 1},
      {"t", 1.0},
      {"n_samples", 10000},
      {"seed", 1},
      {"workers", 0},
      {"tol", 1e-8},
      {"refine_tol", 0.0},
      {"quantity", "solution"},
      {"mode", "density"},
      {"xi", json::array({0.0, 0.5, 1.0, 2.0, 4.0})},
      {"times", json::array({0.5, 1.0, 2.0})},
      {"mu", json::array({0.5, 1.0, 2.0, 4.0, 8.0})},
      {"radii", json::array({0.25, 0.5, 1.0, 2.0, 4.0})},
      {"grid", json{{"points", 65536}, {"period", 0.0}, {"x_max", 10.0}, {"tol", 1e-3}}},
      {"telegraph", json{{"k", 2}, {"lambda", 1.0}, {"nu", 0.4}, {"c", 1.0}, {"beta", 1.0}}},
      {"suite", "telegraph"},
      {"output", ""},
  };
}

// dotted path assignment: "grid.points=1024", value parsed as JSON when possible
void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &config;
  std::stringstream path(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(path, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (!next.is_object()) next = json::object();
    node = &next;
  }
  (*node)[parts.back()] = value;
}

std::vector<double> number_list(const json& config, const std::string& key) {
  const json& v = config.at(key);
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

ModelParams model_from(const json& config) {
  ModelParams params;
  for (const auto& term : config.at("spec")) {
    params.spec.terms.push_back({term.at("lambda").get<double>(), term.at("nu").get<double>()});
  }
  params.beta = config.at("beta").get<double>();
  params.c = config.at("c").get<double>();
  params.n = config.at("n").get<int>();
  params.validate();
  return params;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string csv_text(const Table& table, const std::string& hash) {
  std::string out = "# config_hash=" + hash + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

std::string manifest_path(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() && csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".manifest.json";
  }
  return csv_path + ".manifest.json";
}

int resolve_workers(const json& config) {
  int workers = config.at("workers").get<int>();
  if (workers <= 0) {
    if (const char* env = std::getenv("FRACSTABLE_WORKERS")) workers = std::atoi(env);
  }
  return std::max(1, workers);
}

double refine_tol_for(const json& config, double t) {
  const double tol = config.at("refine_tol").get<double>();
  return tol > 0.0 ? tol : default_refine_tol(t);
}

// ---- commands ----------------------------------------------------------

Table run_sample(const json& config, json& summary) {
  const ModelParams params = model_from(config);
  const std::string quantity = config.at("quantity").get<std::string>();
  const int depth = config.at("depth").get<int>();
  const double t = config.at("t").get<double>();
  const long n_samples = config.at("n_samples").get<long>();
  if (n_samples < 1) throw InvalidArgument("n_samples must be positive");
  const auto seed = config.at("seed").get<std::uint64_t>();
  const int workers = resolve_workers(config);
  const double refine = refine_tol_for(config, t);

  Table table;
  if (quantity == "solution") {
    auto draws = generate_ensemble<Vector>(n_samples, seed, workers, [&](RngStream& rng) {
      return sample_solution(params, depth, t, refine, rng);
    });
    table.header = {"index"};
    for (int i = 1; i <= params.n; ++i) table.header.push_back("x" + std::to_string(i));
    for (long k = 0; k < n_samples; ++k) {
      std::vector<std::string> row{std::to_string(k)};
      for (int i = 0; i < params.n; ++i) row.push_back(format_double(draws[k][i]));
      table.add(std::move(row));
    }
  } else {
    std::function<double(RngStream&)> draw;
    if (quantity == "H") {
      draw = [&](RngStream& rng) { return sample_iterated_H(params.spec, depth, t, rng); };
    } else if (quantity == "L") {
      draw = [&](RngStream& rng) { return sample_iterated_L(params.spec, depth, t, refine, rng); };
    } else {
      throw InvalidArgument("quantity must be one of solution, H, L");
    }
    auto draws = generate_ensemble<double>(n_samples, seed, workers, draw);
    table.header = {"index", quantity};
    for (long k = 0; k < n_samples; ++k) table.add({std::to_string(k), format_double(draws[k])});
    const MeanEstimate m = n_samples > 1 ? sample_mean(draws) : MeanEstimate{draws[0], 0.0};
    summary["mean"] = m.mean;
    summary["std_error"] = m.std_error;
  }
  summary["rows"] = n_samples;
  return table;
}

Table run_solve(const json& config, json& summary) {
  const ModelParams params = model_from(config);
  const std::string mode = config.at("mode").get<std::string>();
  const double t = config.at("t").get<double>();
  Table table;
  if (mode == "cf") {
    const double tol = config.at("tol").get<double>();
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    table.header = {"xi", "t", "cf", "talbot_error", "gaver_stehfest"};
    for (double xi : number_list(config, "xi")) {
      for (double tt : number_list(config, "times")) {
        const auto query = SpectralQuery::at_time(xi, tt);
        const double value = cf_time(params, query, tol);
        const CfCertificate cert = certify_cf_time(params, query);
        table.add({format_double(xi), format_double(tt), format_double(value), format_double(cert.talbot_error),
                   format_double(cert.gaver_stehfest)});
      }
    }
    return table;
  }
  if (mode != "density") throw InvalidArgument("mode must be density or cf");
  DensityGrid grid;
  if (params.n == 1) {
    const json& g = config.at("grid");
    FftOptions options;
    options.points = g.at("points").get<int>();
    options.period = g.at("period").get<double>();
    options.x_max = g.at("x_max").get<double>();
    options.tol = g.at("tol").get<double>();
    grid = density_1d(params, t, options);
  } else {
    RadialOptions options;
    options.t = t;
    grid = density_radial(params, number_list(config, "radii"), options);
  }
  table.header = {params.n == 1 ? "x" : "r", "density", "err_est"};
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    table.add({format_double(grid.abscissae[i]), format_double(grid.values[i]), format_double(grid.err_est)});
  }
  summary["method"] = to_string(grid.method);
  summary["mass"] = grid.mass;
  summary["err_est"] = grid.err_est;
  return table;
}

Table run_telegraph(const json& config, json& summary) {
  const json& tg = config.at("telegraph");
  const int k = tg.at("k").get<int>();
  const double lambda = tg.at("lambda").get<double>();
  const double nu = tg.at("nu").get<double>();
  const double c = tg.at("c").get<double>();
  const double beta = k == 2 ? 1.0 : tg.at("beta").get<double>();
  const double tol = config.at("tol").get<double>();
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  const ModelParams params{telegraph_spec(k, lambda, nu), beta, c, 1};
  params.validate();

  Table table;
  table.header = {"xi", "t", "closed_form", "inversion", "abs_diff"};
  double worst = 0.0;
  for (double xi : number_list(config, "xi")) {
    for (double t : number_list(config, "times")) {
      const double closed = k == 2 ? cf_telegraph_k2(lambda, c, nu, xi, t) : cf_telegraph_k3(lambda, c, beta, nu, xi, t);
      const double inverted = cf_time(params, SpectralQuery::at_time(xi, t), tol);
      worst = std::max(worst, std::abs(closed - inverted));
      table.add({format_double(xi), format_double(t), format_double(closed), format_double(inverted),
                 format_double(std::abs(closed - inverted))});
    }
  }
  summary["max_abs_diff"] = worst;
  return table;
}

Table run_limit(const json& config, json& summary) {
  const ModelParams params = model_from(config);
  if (params.beta != 1.0) throw InvalidArgument("the limit density is available for beta = 1 only");
  const auto radii = number_list(config, "radii");
  const double sum_lambda = params.spec.sum_lambda();
  RadialOptions options;
  options.limit = true;
  const DensityGrid hankel = density_radial(params, radii, options);
  Table table;
  table.header = {"r", "density", "hankel", "abs_diff"};
  double worst = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double closed = limit_density_radial(sum_lambda, params.c, params.n, radii[i]);
    const double diff = std::isfinite(closed) ? std::abs(closed - hankel.values[i]) : 0.0;
    worst = std::max(worst, diff);
    table.add({format_double(radii[i]), format_double(closed), format_double(hankel.values[i]), format_double(diff)});
  }
  summary["max_abs_diff"] = worst;
  summary["hankel_err_est"] = hankel.err_est;
  return table;
}

struct Check {
  std::string name;
  double value;
  double reference;
  double tolerance;
};

std::vector<Check> suite_telegraph(const json& config) {
  const json& tg = config.at("telegraph");
  const double lambda = tg.at("lambda").get<double>();
  const double nu = tg.at("nu").get<double>();
  const double c = tg.at("c").get<double>();
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  const ModelParams params{telegraph_spec(2, lambda, nu), 1.0, c, 1};
  params.validate();
  std::vector<Check> checks;
  for (double xi : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double closed = cf_telegraph_k2(lambda, c, nu, xi, t);
      const double inverted = cf_time(params, SpectralQuery::at_time(xi, t), 1e-8);
      checks.push_back({"k2 xi=" + format_double(xi) + " t=" + format_double(t), closed, inverted, 1e-5});
    }
  }
  return checks;
}

std::vector<Check> suite_special(const json&) {
  std::vector<Check> checks;
  checks.push_back({"E_{1,1}(1)", mittag_leffler(1.0, 1.0, 1.0), std::exp(1.0), 1e-13});
  checks.push_back({"E_{2,1}(-1)", mittag_leffler(2.0, 1.0, -1.0), std::cos(1.0), 1e-13});
  checks.push_back({"E_{1/2,1}(-1)", mittag_leffler(0.5, 1.0, -1.0), std::exp(1.0) * std::erfc(1.0), 1e-13});
  checks.push_back({"K_{1/2}(1)", bessel_k(0.5, 1.0), std::sqrt(kPi / 2.0) * std::exp(-1.0), 1e-13});
  const double nu = 1.5, x = 2.0;
  checks.push_back({"K recurrence", bessel_k(nu + 1, x) - bessel_k(nu - 1, x), 2.0 * nu / x * bessel_k(nu, x),
                    1e-9 * bessel_k(nu + 1, x)});
  checks.push_back({"cubic residual p=2 q=1", solve_depressed_cubic(2.0, 1.0).residual, 0.0, 2e-12});
  return checks;
}

std::vector<Check> suite_laplace(const json& config) {
  const ModelParams params = model_from(config);
  const double t = config.at("t").get<double>();
  const int depth = config.at("depth").get<int>();
  const long n_samples = config.at("n_samples").get<long>();
  if (n_samples < 2) throw InvalidArgument("n_samples must be at least 2");
  const auto draws = generate_ensemble<double>(n_samples, config.at("seed").get<std::uint64_t>(),
                                               resolve_workers(config),
                                               [&](RngStream& rng) { return sample_iterated_H(params.spec, depth, t, rng); });
  std::vector<Check> checks;
  for (double mu : number_list(config, "mu")) {
    std::vector<double> e(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) e[i] = std::exp(-mu * draws[i]);
    const MeanEstimate m = sample_mean(e);
    checks.push_back({"E exp(-mu H) mu=" + format_double(mu), m.mean,
                      std::exp(-t * params.spec.laplace_exponent(mu, depth)), 3.0 * m.std_error});
  }
  return checks;
}

std::vector<Check> suite_limit(const json& config) {
  const ModelParams params = model_from(config);
  const double s = params.spec.sum_lambda();
  std::vector<Check> checks;
  for (int n = 1; n <= 4; ++n) {
    const NormalizationResult r =
        check_radial_normalization([&](double rr) { return limit_density_radial(s, params.c, n, rr); }, n, 1e-8);
    checks.push_back({"mass n=" + std::to_string(n), r.mass, 1.0, 1e-8});
  }
  return checks;
}

Table run_verify(const json& config, json& summary, bool& all_pass) {
  const std::string suite = config.at("suite").get<std::string>();
  std::vector<Check> checks;
  if (suite == "telegraph") {
    checks = suite_telegraph(config);
  } else if (suite == "special") {
    checks = suite_special(config);
  } else if (suite == "laplace") {
    checks = suite_laplace(config);
  } else if (suite == "limit") {
    checks = suite_limit(config);
  } else {
    throw InvalidArgument("suite must be one of telegraph, special, laplace, limit");
  }
  Table table;
  table.header = {"check", "value", "reference", "abs_diff", "tolerance", "pass"};
  int passed = 0;
  for (const auto& ch : checks) {
    const double diff = std::abs(ch.value - ch.reference);
    const bool ok = diff <= ch.tolerance;
    passed += ok;
    table.add({"\"" + ch.name + "\"", format_double(ch.value), format_double(ch.reference), format_double(diff),
               format_double(ch.tolerance), ok ? "1" : "0"});
    std::printf("%-40s %s\n", ch.name.c_str(), ok ? "pass" : "FAIL");
  }
  std::printf("%s: %d/%zu passed\n", suite.c_str(), passed, checks.size());
  summary["passed"] = passed;
  summary["total"] = checks.size();
  all_pass = passed == static_cast<int>(checks.size());
  return table;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open output file " + path);
  out << text;
}

void report(const char* kind, const std::string& reason) {
  std::string line = reason;
  for (char& ch : line) {
    if (ch == '\n') ch = ' ';
  }
  std::fprintf(stderr, "error=%s reason=%s\n", kind, line.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable subordinators, inverse subordinators and space-time fractional Cauchy problems"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string suite;
  long long seed = -1;
  int workers = -1;
  app.add_option("command", command, "sample | solve | telegraph | limit | verify")
      ->required()
      ->check(CLI::IsMember({"sample", "solve", "telegraph", "limit", "verify"}));
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides, "override a configuration key: key=value (dotted paths allowed)");
  app.add_option("--out", out_path, "CSV output path (manifest written alongside)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--workers", workers, "worker threads for ensembles");
  app.add_option("--suite", suite, "verification suite: telegraph | special | laplace | limit");
  app.set_version_flag("--version", FRACSTABLE_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("validation", e.what());
    return kValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  json config = default_config();
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InvalidArgument("cannot read config file " + config_path);
      config.merge_patch(json::parse(in));
    }
    for (const auto& o : overrides) apply_override(config, o);
    if (seed >= 0) config["seed"] = seed;
    if (workers >= 0) config["workers"] = workers;
    if (!out_path.empty()) config["output"] = out_path;
    if (!suite.empty()) config["suite"] = suite;
    config["command"] = command;
  } catch (const json::exception& e) {
    report("validation", std::string("config: ") + e.what());
    return kValidation;
  } catch (const InvalidArgument& e) {
    report("validation", e.what());
    return kValidation;
  }

  // workers only change scheduling, never results, so they stay out of the hash
  json hashed = config;
  hashed.erase("workers");
  hashed.erase("output");
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx", static_cast<unsigned long long>(fnv1a64(hashed.dump())));

  json summary = json::object();
  Table table;
  bool all_pass = true;
  try {
    if (command == "sample") {
      table = run_sample(config, summary);
    } else if (command == "solve") {
      table = run_solve(config, summary);
    } else if (command == "telegraph") {
      table = run_telegraph(config, summary);
    } else if (command == "limit") {
      table = run_limit(config, summary);
    } else {
      table = run_verify(config, summary, all_pass);
    }
    std::string csv = config.at("output").get<std::string>();
    if (csv.empty()) csv = "fracstable-" + command + ".csv";
    write_file(csv, csv_text(table, hash_hex));

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json manifest{{"config", config},
                  {"config_hash", hash_hex},
                  {"seed", config.at("seed")},
                  {"version", FRACSTABLE_VERSION},
                  {"wall_time_s", wall},
                  {"csv", csv},
                  {"summary", summary},
                  {"status", all_pass ? "ok" : "verification-failure"}};
    write_file(manifest_path(csv), manifest.dump(2) + "\n");
  } catch (const json::exception& e) {
    report("validation", std::string("config: ") + e.what());
    return kValidation;
  } catch (const InvalidArgument& e) {
    report("validation", e.what());
    return kValidation;
  } catch (const DegenerateRoots& e) {
    report("validation", e.what());
    return kValidation;
  } catch (const AccuracyFailure& e) {
    report("accuracy", std::string(e.what()) + " estimate=" + format_double(e.estimate()) +
                           " bound=" + format_double(e.error_bound()));
    return kAccuracy;
  }
  if (!all_pass) {
    report("verification", "suite " + config.at("suite").get<std::string>() + " has failing checks");
    return kVerification;
  }
  return kOk;
}

}  // namespace fracstable::cli
