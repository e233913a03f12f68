#include "gq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gq/baselines.hpp"
#include "gq/eval.hpp"
#include "gq/highrate.hpp"
#include "gq/io.hpp"
#include "gq/lloydmax.hpp"
#include "gq/quadrature.hpp"
#include "gq/source_model.hpp"
#include "gq/voronoi.hpp"

namespace gq {

namespace {

/// JSON object as a CLI11 config source. Flat keys ({"sigma2": 2.0}) apply
/// to every subcommand that knows the option; nested objects address one
/// subcommand ({"gen": {"n": 256}}). Command-line flags take precedence and
/// keys a command does not know are ignored, so one config can serve several
/// commands.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::vector<std::string> subcommands)
      : subcommands_(std::move(subcommands)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::FileError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::FileError("config: top level must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        for (const auto& [name, inner] : value.items()) {
          CLI::ConfigItem item;
          item.parents = {key};
          item.name = name;
          item.inputs = {scalar_to_string(key + "." + name, inner)};
          items.push_back(std::move(item));
        }
        continue;
      }
      const std::string text = scalar_to_string(key, value);
      for (const std::string& sub : subcommands_) {
        CLI::ConfigItem item;
        item.parents = {sub};
        item.name = key;
        item.inputs = {text};
        items.push_back(std::move(item));
      }
    }
    return items;
  }

 private:
  static std::string scalar_to_string(const std::string& key,
                                      const nlohmann::json& value) {
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number()) return value.dump();
    throw CLI::FileError("config." + key + ": unsupported value type");
  }

  std::vector<std::string> subcommands_;
};

struct Options {
  std::string scheme;
  int n = 0;
  std::vector<std::string> schemes;
  std::vector<int> ns;
  std::string mode = "optimal";
  std::string convention = "midpoint";
  std::string init = "highrate";
  bool monotone = false;
  Real tol = 1e-7;
  int max_iter = 500;
  int grid_m = 0;        // 0 = default for N
  Real grid_extent = 0;  // 0 = 4.5 sigma
  Real sigma2 = 1.0;
  std::uint64_t seed = 1;
  std::int64_t samples = 1000000;
  std::vector<Real> rates;
  std::string codebook_path;
  std::string cells_path;
  std::string voronoi_path;
  std::string trace_path;
  std::string out;
};

QuadratureGrid make_grid(int n, Real sigma2, const Options& opt) {
  const QuadratureGrid def = QuadratureGrid::defaults_for(n, sigma2);
  return QuadratureGrid(opt.grid_extent > 0 ? opt.grid_extent : def.extent,
                        opt.grid_m > 0 ? opt.grid_m : def.resolution);
}

RadiusConvention parse_convention(const std::string& name) {
  if (name == "midpoint") return RadiusConvention::Midpoint;
  if (name == "rawclamplast") return RadiusConvention::RawClampLast;
  throw DomainError("unknown radius convention '" + name + "'");
}

BaselineMode parse_mode(const std::string& name) {
  if (name == "optimal") return BaselineMode::Optimal;
  if (name == "uniform") return BaselineMode::Uniform;
  throw DomainError("unknown mode '" + name + "'");
}

LmInit parse_init(const std::string& name) {
  if (name == "highrate") return LmInit::HighRate;
  if (name == "uniform") return LmInit::Uniform;
  throw DomainError("unknown init '" + name + "'");
}

/// Builds one codebook for gen/sweep; the trace pointer captures the
/// Lloyd-Max state when the caller wants the optimization trace.
Codebook build_scheme(Scheme scheme, int n, const Options& opt,
                      LloydMaxState* state_out = nullptr) {
  switch (scheme) {
    case Scheme::HighRateGQ:
      return build_highrate(n, opt.sigma2, parse_convention(opt.convention));
    case Scheme::LloydMaxGQ: {
      auto [cb, state] =
          optimize_lloydmax(n, opt.sigma2, parse_init(opt.init), opt.monotone,
                            opt.tol, opt.max_iter, make_grid(n, opt.sigma2, opt));
      if (state_out) *state_out = std::move(state);
      return std::move(cb);
    }
    case Scheme::RectProduct: {
      const int root = static_cast<int>(std::lround(std::sqrt(static_cast<Real>(n))));
      if (root * root != n)
        throw InvalidN("rect requires a perfect-square N (got " +
                       std::to_string(n) +
                       "); GQ schemes accept any N if that is what you need");
      return build_rect(root, opt.sigma2, parse_mode(opt.mode));
    }
    case Scheme::PolarProduct:
      return build_polar(n, opt.sigma2, parse_mode(opt.mode),
                         make_grid(n, opt.sigma2, opt))
          .first;
    case Scheme::LBG:
      return train_lbg(n, opt.sigma2, opt.samples, opt.seed);
  }
  throw InvalidScheme("unknown scheme");
}

Metadata common_echo(const std::string& command, const Options& opt) {
  Metadata echo;
  echo["command"] = command;
  echo["sigma2"] = opt.sigma2;
  echo["seed"] = static_cast<std::int64_t>(opt.seed);
  echo["samples"] = opt.samples;
  if (opt.grid_m > 0) echo["grid_m"] = static_cast<std::int64_t>(opt.grid_m);
  if (opt.grid_extent > 0) echo["grid_extent"] = opt.grid_extent;
  return echo;
}

int cmd_gen(const Options& opt) {
  const Scheme scheme = scheme_from_string(opt.scheme);
  LloydMaxState state;
  Codebook cb = build_scheme(scheme, opt.n, opt, &state);

  Metadata echo = common_echo("gen", opt);
  echo["scheme"] = to_string(scheme);
  echo["n"] = static_cast<std::int64_t>(opt.n);
  if (scheme == Scheme::RectProduct || scheme == Scheme::PolarProduct)
    echo["mode"] = opt.mode;
  for (const auto& [key, value] : echo)
    if (!cb.metadata.count(key)) cb.metadata[key] = value;

  if (scheme == Scheme::LloydMaxGQ && !opt.trace_path.empty())
    write_trace_csv(state, opt.trace_path, echo);
  save_codebook(cb, opt.out);

  std::ostringstream line;
  line << "gen: scheme=" << to_string(scheme) << " N=" << cb.size()
       << " rate=" << cb.rate_bits() << " bits";
  if (scheme == Scheme::HighRateGQ)
    line << " analytic_mse=" << analytic_distortion_hr(cb.size(), opt.sigma2);
  if (scheme == Scheme::LloydMaxGQ && !state.distortion_trace.empty())
    line << " final_mse=" << state.distortion_trace.back()
         << " converged=" << (state.converged ? "true" : "false");
  line << " -> " << opt.out;
  std::cout << line.str() << "\n";
  return 0;
}

int cmd_eval(const Options& opt) {
  const Codebook cb = load_codebook(opt.codebook_path);
  const SourceModel src(cb.sigma2);
  DistortionReport report = mc_distortion(cb, src, opt.samples, opt.seed);

  Metadata echo = common_echo("eval", opt);
  echo["sigma2"] = cb.sigma2;
  echo["codebook"] = opt.codebook_path;
  echo["scheme"] = to_string(cb.scheme);
  echo["n"] = static_cast<std::int64_t>(cb.size());

  if (!opt.cells_path.empty()) {
    const QuadratureGrid grid = make_grid(cb.size(), cb.sigma2, opt);
    write_cells_csv(cell_statistics(cb, src, grid), opt.cells_path, echo);
  }
  if (!opt.voronoi_path.empty()) {
    const Real extent = opt.grid_extent > 0 ? opt.grid_extent
                                            : 4.5 * std::sqrt(cb.sigma2);
    write_voronoi_csv(clipped_voronoi_cells(cb, extent), opt.voronoi_path,
                      echo);
  }
  save_report(report, opt.out, echo);
  std::printf("eval: N=%d mse=%.6e (%.3f dB) ci=%.2e rate=%.4f bits -> %s\n",
              cb.size(), report.mse, report.mse_db, report.ci_halfwidth,
              report.rate_bits, opt.out.c_str());
  return 0;
}

int cmd_sweep(const Options& opt) {
  std::vector<std::pair<Scheme, int>> entries;
  for (const std::string& name : opt.schemes)
    for (const int n : opt.ns) entries.emplace_back(scheme_from_string(name), n);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return static_cast<int>(a.first) < static_cast<int>(b.first);
    return a.second < b.second;
  });
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

  std::vector<SweepRow> rows;
  for (const auto& [scheme, n] : entries) {
    SweepRow row;
    row.scheme = scheme;
    row.N = n;
    try {
      const Codebook cb = build_scheme(scheme, n, opt);
      const SourceModel src(opt.sigma2);
      const DistortionReport report = mc_distortion(cb, src, opt.samples, opt.seed);
      row.rate_bits = report.rate_bits;
      row.mse = report.mse;
      row.mse_db = report.mse_db;
      row.ci_halfwidth = report.ci_halfwidth;
      row.seed = report.seed;
      const Real d_hr = analytic_distortion_hr(n, opt.sigma2);
      row.analytic_d_hr = d_hr;
      row.analytic_r_hr_bits = analytic_rate_hr(d_hr, opt.sigma2);
      row.analytic_r_echr_bits = analytic_rate_echr(d_hr, opt.sigma2);
      row.rd_bound_mse = opt.sigma2 * std::exp2(-report.rate_bits);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  write_sweep_csv(rows, opt.out, common_echo("sweep", opt));
  std::printf("sweep: %zu rows -> %s\n", rows.size(), opt.out.c_str());
  return 0;
}

int cmd_profile(const Options& opt) {
  const Scheme scheme = scheme_from_string(opt.scheme);
  if (scheme != Scheme::HighRateGQ && scheme != Scheme::LloydMaxGQ)
    throw InvalidScheme("profile: only GQ schemes have a magnitude profile");

  std::vector<ProfileRow> rows;
  for (const int n : opt.ns) {
    ArrayXr radii;
    if (scheme == Scheme::HighRateGQ) {
      radii = highrate_radii(n, opt.sigma2, parse_convention(opt.convention));
    } else {
      const Codebook cb = build_scheme(scheme, n, opt);
      radii = cb.centroids.abs();
    }
    for (int i = 0; i < n; ++i)
      rows.push_back({scheme, n, i + 1, radii[i]});
  }
  write_profile_csv(rows, opt.out, common_echo("profile", opt));
  std::printf("profile: %zu rows -> %s\n", rows.size(), opt.out.c_str());
  return 0;
}

int cmd_rd(const Options& opt) {
  const auto points = rd_reference(opt.sigma2, opt.rates);
  write_rd_csv(points, opt.sigma2, opt.out, common_echo("rd", opt));
  std::printf("rd: %zu points -> %s\n", points.size(), opt.out.c_str());
  return 0;
}

void add_grid_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--grid-m", opt.grid_m, "grid resolution per axis (default: fit to N)");
  cmd->add_option("--grid-extent", opt.grid_extent, "grid half-width (default: 4.5*sigma)");
}

void add_lm_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--init", opt.init, "lloydmax start: highrate|uniform")
      ->check(CLI::IsMember({"highrate", "uniform"}));
  cmd->add_flag("--monotone", opt.monotone, "enforce the growing-spiral constraint");
  cmd->add_option("--tol", opt.tol, "relative distortion tolerance");
  cmd->add_option("--max-iter", opt.max_iter, "iteration cap");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"golden-angle quantizers for the complex Gaussian source"};
  app.name("gq");
  app.require_subcommand(1);
  app.footer("GQ_THREADS caps the worker count (default: all cores).");
  app.config_formatter(std::make_shared<JsonConfig>(
      std::vector<std::string>{"gen", "eval", "sweep", "profile", "rd"}));
  app.set_config("--config", "", "JSON config file; flags take precedence");

  CLI::App* gen = app.add_subcommand("gen", "generate a codebook file");
  gen->add_option("--scheme", opt.scheme, "highrate|lloydmax|rect|polar|lbg")
      ->required();
  gen->add_option("--n", opt.n, "number of centroids")->required();
  gen->add_option("--mode", opt.mode, "rect/polar variant: optimal|uniform")
      ->check(CLI::IsMember({"optimal", "uniform"}));
  gen->add_option("--convention", opt.convention,
                  "high-rate radius convention: midpoint|rawclamplast")
      ->check(CLI::IsMember({"midpoint", "rawclamplast"}));
  gen->add_option("--sigma2", opt.sigma2, "total source variance");
  gen->add_option("--seed", opt.seed, "RNG seed (lbg training)");
  gen->add_option("--samples", opt.samples, "training samples (lbg)");
  gen->add_option("--trace", opt.trace_path, "lloydmax trace CSV path");
  add_lm_flags(gen, opt);
  add_grid_flags(gen, opt);
  gen->add_option("--out", opt.out, "output codebook JSON")->required();
  gen->fallthrough();
  gen->callback([&] { cmd_gen(opt); });

  CLI::App* eval = app.add_subcommand("eval", "evaluate a codebook file");
  eval->add_option("--codebook", opt.codebook_path, "codebook JSON")->required();
  eval->add_option("--samples", opt.samples, "Monte Carlo samples");
  eval->add_option("--seed", opt.seed, "RNG seed");
  eval->add_option("--cells", opt.cells_path, "per-cell statistics CSV path");
  eval->add_option("--voronoi", opt.voronoi_path, "Voronoi polyline CSV path");
  add_grid_flags(eval, opt);
  eval->add_option("--out", opt.out, "output report JSON")->required();
  eval->fallthrough();
  eval->callback([&] { cmd_eval(opt); });

  CLI::App* sweep = app.add_subcommand("sweep", "distortion-vs-rate sweep CSV");
  sweep->add_option("--schemes", opt.schemes, "comma list of schemes")
      ->required()
      ->delimiter(',');
  sweep->add_option("--ns", opt.ns, "comma list of N values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--sigma2", opt.sigma2, "total source variance");
  sweep->add_option("--seed", opt.seed, "RNG seed");
  sweep->add_option("--samples", opt.samples, "Monte Carlo samples");
  sweep->add_option("--mode", opt.mode, "rect/polar variant: optimal|uniform")
      ->check(CLI::IsMember({"optimal", "uniform"}));
  add_lm_flags(sweep, opt);
  add_grid_flags(sweep, opt);
  sweep->add_option("--out", opt.out, "output CSV")->required();
  sweep->fallthrough();
  sweep->callback([&] { cmd_sweep(opt); });

  CLI::App* profile = app.add_subcommand("profile", "magnitude-profile CSV");
  profile->add_option("--scheme", opt.scheme, "highrate|lloydmax")->required();
  profile->add_option("--ns", opt.ns, "comma list of N values")
      ->required()
      ->delimiter(',');
  profile->add_option("--sigma2", opt.sigma2, "total source variance");
  profile->add_option("--convention", opt.convention,
                      "high-rate radius convention: midpoint|rawclamplast")
      ->check(CLI::IsMember({"midpoint", "rawclamplast"}));
  add_lm_flags(profile, opt);
  add_grid_flags(profile, opt);
  profile->add_option("--out", opt.out, "output CSV")->required();
  profile->fallthrough();
  profile->callback([&] { cmd_profile(opt); });

  CLI::App* rd = app.add_subcommand("rd", "rate-distortion reference CSV");
  rd->add_option("--sigma2", opt.sigma2, "total source variance");
  rd->add_option("--rates", opt.rates, "comma list of rates in bits")
      ->required()
      ->delimiter(',');
  rd->add_option("--out", opt.out, "output CSV")->required();
  rd->fallthrough();
  rd->callback([&] { cmd_rd(opt); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gq");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace gq
