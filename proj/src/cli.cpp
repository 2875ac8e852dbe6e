#include "nstars/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "nstars/analytic.hpp"
#include "nstars/errors.hpp"
#include "nstars/io.hpp"
#include "nstars/params.hpp"
#include "nstars/simulator.hpp"
#include "nstars/stats.hpp"

#ifndef NSTARS_VERSION
#define NSTARS_VERSION "0.0.0"
#endif

namespace nstars::cli {
namespace {

namespace fs = std::filesystem;
using io::format_double;

std::string report_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string hex_digest(std::uint64_t digest) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016" PRIx64, digest);
  return buf;
}

const char* boolean(bool v) { return v ? "true" : "false"; }

struct Options {
  ModelParams params;
  bool params_given = false;
  fs::path out_dir = ".";
  int w1_max = 64;
  int w2_max = 512;
  std::uint64_t steps = 0;
  std::uint64_t seed = 1;
  unsigned seeds = 1;
  unsigned jobs = 0;
  std::uint64_t min_count = 30;
  std::uint64_t sim_min_count = 1;
  std::string axis = "w1";
  fs::path moments;
};

void add_param_flags(CLI::App* cmd, Options& o, bool required) {
  auto* n = cmd->add_option("--N", o.params.N, "star size (>= 3)");
  auto* p = cmd->add_option("--p", o.params.p, "probability of adding a vertex");
  auto* q = cmd->add_option("--q", o.params.q, "preferential re-activation probability");
  auto* r = cmd->add_option("--r", o.params.r, "new vertex joins as peripheral");
  if (required) {
    for (auto* opt : {n, p, q, r}) opt->required();
  }
}

stats::Axis parse_axis(const std::string& text) {
  if (text == "w1") return stats::Axis::kFixW1;
  if (text == "w2") return stats::Axis::kFixW2;
  throw InvalidParams("axis must be w1 or w2");
}

// View in which the fixed coordinate of `axis` plays the role of w1.
DerivedParams view_for(const DerivedParams& d, stats::Axis axis) {
  return axis == stats::Axis::kFixW1 ? d : swap_roles(d);
}

void write_params(io::TextFile& f, const ModelParams& p) {
  f.key_value("N", std::to_string(p.N));
  f.key_value("p", format_double(p.p));
  f.key_value("q", format_double(p.q));
  f.key_value("r", format_double(p.r));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidParams("cannot create directory " + dir.string());
}

int cmd_derive(const Options& o, std::ostream& out) {
  const DerivedParams d = derive(o.params);
  const ConditionReport c = check_conditions(d);
  out << "N=" << o.params.N << '\n'
      << "p=" << report_number(o.params.p) << '\n'
      << "q=" << report_number(o.params.q) << '\n'
      << "r=" << report_number(o.params.r) << '\n'
      << "alpha11=" << report_number(d.a11) << '\n'
      << "alpha12=" << report_number(d.a12) << '\n'
      << "alpha1=" << report_number(d.a1) << '\n'
      << "alpha2=" << report_number(d.a2) << '\n'
      << "beta1=" << report_number(d.b1) << '\n'
      << "beta2=" << report_number(d.b2) << '\n'
      << "alpha=" << report_number(d.a) << '\n'
      << "beta=" << report_number(d.b) << '\n'
      << "e_finite=" << boolean(c.e_finite) << '\n'
      << "m_finite=" << boolean(c.m_finite) << '\n'
      << "m_finite_swapped=" << boolean(c.m_finite_swapped) << '\n'
      << "e_exponent=" << report_number(c.e_exponent) << '\n'
      << "m_exponent=" << report_number(c.m_exponent) << '\n';
  return kExitOk;
}

void write_analytic_moments(const fs::path& path, const DerivedParams& view,
                            int max_index, const char* label) {
  const bool e_finite = check_conditions(view).e_finite;
  io::TextFile f(path);
  f.line({label, "marginal", "E", "M"});
  for (int w = 0; w <= max_index; ++w) {
    const double marginal = analytic::marginal_closed(view, w);
    std::string e = "div";
    std::string m = "div";
    if (e_finite) {
      e = format_double(analytic::expectation_closed(view, w));
      m = io::format_moment(analytic::second_moment_closed(view, w));
    }
    f.line({std::to_string(w), format_double(marginal), e, m});
  }
  f.close();
}

int cmd_analytic(const Options& o, std::ostream& out) {
  validate_for_analytic(o.params);
  if (o.w1_max < 1 || o.w2_max < 1) {
    throw InvalidParams("--w1max and --w2max must be at least 1");
  }
  const DerivedParams d = derive(o.params);
  ensure_dir(o.out_dir);

  const auto table = analytic::joint_table(d, o.w1_max, o.w2_max);
  {
    io::TextFile f(o.out_dir / "joint.csv");
    f.line({"w1", "w2", "x"});
    for (int w1 = 0; w1 <= o.w1_max; ++w1) {
      for (int w2 = 0; w2 <= o.w2_max; ++w2) {
        f.line({std::to_string(w1), std::to_string(w2),
                format_double(table.at(w1, w2))});
      }
    }
    f.close();
  }
  write_analytic_moments(o.out_dir / "moments.csv", d, o.w1_max, "w1");
  write_analytic_moments(o.out_dir / "moments_w2.csv", swap_roles(d), o.w2_max,
                         "w2");
  {
    io::TextFile f(o.out_dir / "tails.csv");
    f.line({"index", "A", "C"});
    for (int i = 0; i <= std::max(o.w1_max, o.w2_max); ++i) {
      const auto t = analytic::tail_coefficients(d, i, i);
      f.line({std::to_string(i), format_double(t.A_of_w2), format_double(t.C_of_w1)});
    }
    f.close();
  }
  const auto taylor = analytic::taylor_constant(d);
  const auto taylor_swapped = analytic::taylor_constant(swap_roles(d));
  {
    io::TextFile f(o.out_dir / "manifest.txt");
    f.key_value("command", "analytic");
    write_params(f, o.params);
    f.key_value("w1max", std::to_string(o.w1_max));
    f.key_value("w2max", std::to_string(o.w2_max));
    f.key_value("version", NSTARS_VERSION);
    f.key_value("taylor_C", io::format_moment(taylor));
    f.key_value("taylor_C_swapped", io::format_moment(taylor_swapped));
    f.close();
  }
  out << "taylor_C=" << (taylor ? report_number(*taylor) : "div") << '\n'
      << "taylor_C_swapped="
      << (taylor_swapped ? report_number(*taylor_swapped) : "div") << '\n'
      << "out=" << o.out_dir.string() << '\n';
  return kExitOk;
}

void write_simulation(const fs::path& dir, const Options& o, std::uint64_t seed,
                      const RunResult& result) {
  ensure_dir(dir);
  const auto joint = stats::empirical_joint(result.state);
  {
    io::TextFile f(dir / "empirical_joint.csv");
    f.line({"w1", "w2", "count"});
    for (const auto& [key, count] : joint.counts) {
      f.line({std::to_string(key.first), std::to_string(key.second),
              std::to_string(count)});
    }
    f.close();
  }
  io::write_moment_rows(dir / "moments_w1.csv",
                        stats::Axis::kFixW1,
                        stats::conditional_moments(joint, stats::Axis::kFixW1,
                                                   o.sim_min_count));
  io::write_moment_rows(dir / "moments_w2.csv",
                        stats::Axis::kFixW2,
                        stats::conditional_moments(joint, stats::Axis::kFixW2,
                                                   o.sim_min_count));
  const RunSummary& s = result.summary;
  io::TextFile f(dir / "manifest.txt");
  f.key_value("command", "simulate");
  write_params(f, o.params);
  f.key_value("steps", std::to_string(o.steps));
  f.key_value("seed", std::to_string(seed));
  f.key_value("min_count", std::to_string(o.sim_min_count));
  f.key_value("version", NSTARS_VERSION);
  f.key_value("digest", hex_digest(s.digest));
  f.key_value("vertices", std::to_string(s.vertices));
  f.key_value("nstar_count", std::to_string(s.nstar_count));
  f.key_value("n1star_count", std::to_string(s.n1star_count));
  for (std::size_t k = 0; k < s.branch_counts.size(); ++k) {
    f.key_value(std::string("branch_") + step_kind_name(static_cast<StepKind>(k)),
                std::to_string(s.branch_counts[k]));
  }
  f.close();
}

int cmd_simulate(const Options& o, std::ostream& out) {
  validate_for_simulation(o.params);
  if (o.sim_min_count < 1) throw InvalidParams("--min-count must be at least 1");
  if (o.seeds < 1) throw InvalidParams("--seeds must be at least 1");
  ensure_dir(o.out_dir);

  std::vector<std::uint64_t> seeds;
  for (unsigned i = 0; i < o.seeds; ++i) seeds.push_back(o.seed + i);
  auto dir_for = [&](std::uint64_t seed) {
    return o.seeds == 1 ? o.out_dir : o.out_dir / ("seed_" + std::to_string(seed));
  };

  std::vector<std::optional<RunSummary>> summaries(seeds.size());
  std::vector<std::string> failures(seeds.size());
  std::size_t next = 0;
  std::mutex lock;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> guard(lock);
        if (next >= seeds.size()) return;
        i = next++;
      }
      try {
        SimConfig config{o.params, o.steps, seeds[i]};
        RunResult result = run(config);
        write_simulation(dir_for(seeds[i]), o, seeds[i], result);
        summaries[i] = result.summary;
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    }
  };
  unsigned jobs = o.jobs > 0 ? o.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!summaries[i]) throw InvalidParams(failures[i]);
    const RunSummary& s = *summaries[i];
    out << "seed=" << seeds[i] << " steps=" << s.steps
        << " vertices=" << s.vertices << " digest=" << hex_digest(s.digest)
        << " wall_seconds=" << report_number(s.wall_seconds)
        << " out=" << dir_for(seeds[i]).string() << '\n';
  }
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const io::MomentFile file = io::read_moment_rows(o.moments);
  std::optional<DerivedParams> view;
  if (o.params_given) {
    validate_for_analytic(o.params);
    view = view_for(derive(o.params), file.axis);
  }
  stats::TaylorFit fit = stats::loglog_fit(file.rows, o.min_count);
  if (view) fit.theoretical_C = analytic::taylor_constant(*view);

  out << "axis=" << (file.axis == stats::Axis::kFixW1 ? "w1" : "w2") << '\n'
      << "slope=" << report_number(fit.slope) << '\n'
      << "intercept=" << report_number(fit.intercept) << '\n'
      << "r_squared=" << report_number(fit.r_squared) << '\n'
      << "points_used=" << fit.points_used << '\n'
      << "rows_nonpositive=" << fit.rows_nonpositive << '\n';
  if (view) {
    out << "theoretical_C="
        << (fit.theoretical_C ? report_number(*fit.theoretical_C) : "div") << '\n';
  }
  return kExitOk;
}

std::string relative_error(double empirical, double analytic) {
  return format_double(std::fabs(empirical - analytic) / std::fabs(analytic));
}

int cmd_compare(const Options& o, std::ostream& out) {
  validate_for_analytic(o.params);
  if (o.min_count < 1) throw InvalidParams("--min-count must be at least 1");
  const stats::Axis axis = parse_axis(o.axis);
  const DerivedParams view = view_for(derive(o.params), axis);
  const bool e_finite = check_conditions(view).e_finite;
  ensure_dir(o.out_dir);

  SimConfig config{o.params, o.steps, o.seed};
  const RunResult result = run(config);
  const auto joint = stats::empirical_joint(result.state);
  const auto rows = stats::conditional_moments(joint, axis, o.min_count);

  io::TextFile f(o.out_dir / "compare.csv");
  f.line({o.axis, "analytic_marginal", "empirical_marginal", "rel_err",
          "analytic_E", "empirical_E", "rel_err_E", "analytic_M", "empirical_M",
          "rel_err_M"});
  std::size_t written = 0;
  for (const auto& row : rows) {
    if (row.fixed > static_cast<std::uint64_t>(o.w1_max)) break;
    const int w = static_cast<int>(row.fixed);
    const double marginal = analytic::marginal_closed(view, w);
    std::vector<std::string> line{std::to_string(row.fixed), format_double(marginal),
                                  format_double(row.marginal),
                                  relative_error(row.marginal, marginal)};
    if (e_finite) {
      const double e = analytic::expectation_closed(view, w);
      line.insert(line.end(), {format_double(e), format_double(row.mean),
                               relative_error(row.mean, e)});
      const auto m = analytic::second_moment_closed(view, w);
      line.insert(line.end(), {io::format_moment(m), format_double(row.second_moment),
                               m ? relative_error(row.second_moment, *m) : ""});
    } else {
      line.insert(line.end(), {"div", format_double(row.mean), "", "div",
                               format_double(row.second_moment), ""});
    }
    f.line(line);
    ++written;
  }
  f.close();

  io::TextFile m(o.out_dir / "manifest.txt");
  m.key_value("command", "compare");
  write_params(m, o.params);
  m.key_value("steps", std::to_string(o.steps));
  m.key_value("seed", std::to_string(o.seed));
  m.key_value("axis", o.axis);
  m.key_value("w1max", std::to_string(o.w1_max));
  m.key_value("min_count", std::to_string(o.min_count));
  m.key_value("version", NSTARS_VERSION);
  m.key_value("digest", hex_digest(result.summary.digest));
  m.close();

  if (written == 0) {
    throw InsufficientData("no bin reached --min-count; nothing to compare");
  }
  out << "rows=" << written << '\n'
      << "digest=" << hex_digest(result.summary.digest) << '\n'
      << "out=" << o.out_dir.string() << '\n';
  return kExitOk;
}

// Splices `--config <file>` entries in as `--key value` flags. Flags given on
// the command line take precedence over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config;
  std::set<std::string> explicit_flags;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      continue;
    }
    if (args[i].rfind("--", 0) == 0) {
      explicit_flags.insert(args[i].substr(2, args[i].find('=') - 2));
    }
    rest.push_back(args[i]);
  }
  if (!config) return rest;

  // Config flags go right after the subcommand name (args[1]).
  std::vector<std::string> spliced;
  for (const auto& [key, value] : io::read_key_values(*config)) {
    if (explicit_flags.count(key) != 0) continue;
    spliced.push_back("--" + key);
    spliced.push_back(value);
  }
  const std::size_t at = std::min<std::size_t>(2, rest.size());
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), spliced.begin(),
              spliced.end());
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"N-stars network evolution: simulation and limit formulas", "nstars"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NSTARS_VERSION);

  auto* derive_cmd = app.add_subcommand("derive", "print derived constants and finiteness conditions");
  add_param_flags(derive_cmd, o, true);

  auto* analytic_cmd = app.add_subcommand("analytic", "write limit-distribution tables");
  add_param_flags(analytic_cmd, o, true);
  analytic_cmd->add_option("--w1max", o.w1_max, "largest central weight")->capture_default_str();
  analytic_cmd->add_option("--w2max", o.w2_max, "largest peripheral weight")->capture_default_str();
  analytic_cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "run the evolution and write empirical tables");
  add_param_flags(simulate_cmd, o, true);
  simulate_cmd->add_option("--steps", o.steps, "number of evolution steps")->required();
  simulate_cmd->add_option("--seed", o.seed, "generator seed")->required();
  simulate_cmd->add_option("--seeds", o.seeds, "batch size; runs seed, seed+1, ...")->capture_default_str();
  simulate_cmd->add_option("--jobs", o.jobs, "concurrent runs in batch mode (0 = cores)");
  simulate_cmd->add_option("--min-count", o.sim_min_count, "smallest bin written to moments files")->capture_default_str();
  simulate_cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "fit log10 M against log10 E");
  fit_cmd->add_option("--moments", o.moments, "moments_w1.csv or moments_w2.csv")->required();
  fit_cmd->add_option("--min-count", o.min_count, "smallest bin used in the fit")->capture_default_str();
  add_param_flags(fit_cmd, o, false);

  auto* compare_cmd = app.add_subcommand("compare", "simulate and join with the limit formulas");
  add_param_flags(compare_cmd, o, true);
  compare_cmd->add_option("--steps", o.steps, "number of evolution steps")->required();
  compare_cmd->add_option("--seed", o.seed, "generator seed")->required();
  compare_cmd->add_option("--min-count", o.min_count, "smallest bin compared")->capture_default_str();
  compare_cmd->add_option("--w1max", o.w1_max, "largest fixed-coordinate value compared")->capture_default_str();
  compare_cmd->add_option("--axis", o.axis, "w1 or w2")->capture_default_str();
  compare_cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();

  try {
    const auto args = expand_config(raw_args);
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  o.params_given = fit_cmd->count("--N") + fit_cmd->count("--p") +
                       fit_cmd->count("--q") + fit_cmd->count("--r") >
                   0;

  try {
    if (*derive_cmd) return cmd_derive(o, out);
    if (*analytic_cmd) return cmd_analytic(o, out);
    if (*simulate_cmd) return cmd_simulate(o, out);
    if (*fit_cmd) return cmd_fit(o, out);
    if (*compare_cmd) return cmd_compare(o, out);
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kExitInsufficientData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace nstars::cli
