#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "nrt/errors.hpp"
#include "output.hpp"
#include "plot.hpp"

namespace nrt::cli {

namespace {

OutputFormat resolve_format(const Options& opt, const RunConfig& cfg, const std::string& path) {
  if (opt.format == "csv") return OutputFormat::kCsv;
  if (opt.format == "json") return OutputFormat::kJson;
  if (!opt.format.empty()) throw ConfigError("--format", "expected csv or json");
  if (path.size() > 5 && path.ends_with(".json")) return OutputFormat::kJson;
  return cfg.output.format;
}

std::string resolve_out(const Options& opt, const RunConfig& cfg) {
  return opt.out.empty() ? cfg.output.path : opt.out;
}

// Writes through a temporary so that a failed run never leaves half a file.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".part";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw ConfigError("--out", "cannot write '" + path + "'");
    write(f);
    if (!f) throw ConfigError("--out", "write failed for '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
  spdlog::info("wrote {}", path);
}

void log_quadrature(const Spectrum& s) {
  const auto& q = s.meta.quadrature;
  spdlog::info("{} points; max excluded Maxwell weight {:.3e}; max quadrature error estimate {:.3e}",
               s.records.size(), s.meta.max_excluded_weight, s.meta.max_quadrature_error);
  if (s.meta.max_quadrature_error > q.rel_tol) {
    spdlog::warn(
        "quadrature error estimate {:.3e} exceeds rel_tol {:.1e}; narrow off-resonant lines are "
        "under-resolved, consider --quad-scheme adaptive or more nodes",
        s.meta.max_quadrature_error, q.rel_tol);
  }
  if (s.meta.max_excluded_weight > 1e-3) {
    spdlog::warn("up to {:.3e} of the Maxwell weight lies outside the far-detuned window",
                 s.meta.max_excluded_weight);
  }
}

void plot_spectrum(const std::string& path, const Spectrum& s, SweepVariable axis,
                   const CriteriaSpec& crit) {
  const AxisUnit u = axis_unit(axis);
  std::vector<double> x;
  Series af{"alpha+", {}}, ab{"alpha-", {}}, tf{"T+", {}}, tb{"T-", {}}, ir{"IR", {}}, il{"IL", {}};
  for (const auto& r : s.records) {
    x.push_back(r.axis * u.per_si);
    af.y.push_back(r.alpha_fwd * 1e-2);
    ab.y.push_back(r.alpha_bwd * 1e-2);
    tf.y.push_back(r.t_fwd);
    tb.y.push_back(r.t_bwd);
    ir.y.push_back(r.ir_db);
    il.y.push_back(r.il_db);
  }
  std::vector<Panel> panels{{"alpha (1/cm)", {af, ab}, {}, false},
                            {"T", {tf, tb}, {}, false},
                            {"IR (dB)", {ir}, {crit.ir_min_db}, false},
                            {"IL (dB)", {il}, {crit.il_max_db}, false}};
  std::ofstream f(path);
  if (!f) throw ConfigError("--plot", "cannot write '" + path + "'");
  write_svg(f, fmt::format("{} ({})", sweep_variable_name(axis), u.symbol), x, panels);
  spdlog::info("wrote {}", path);
}

void verify_row(const RunConfig& cfg, const SweepPlan& plan, const Spectrum& s) {
  std::random_device rd;
  std::mt19937_64 rng(rd());
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, s.records.size() - 1)(rng);
  const Scenario sc = apply_sweep_value(cfg.scenario, plan, plan.values[i]);
  PointResult again = evaluate_point(sc, Parallelism{1});
  again.record.axis = plan.values[i];
  const std::string a = format_row(s.records[i], plan.variable);
  const std::string b = format_row(again.record, plan.variable);
  if (a != b) {
    throw NumericalError(fmt::format("verify: row {} differs on re-run\n  {}\n  {}", i, a, b), 0.0);
  }
  spdlog::info("verify: row {} reproduced exactly", i);
}

int run_table(const Options& opt, bool spectrum_only) {
  const RunConfig cfg = load_config(opt);
  if (!cfg.sweep.present) throw ConfigError("sweep", "missing [sweep] section");
  if (spectrum_only && cfg.sweep.variable != SweepVariable::kDeltaP) {
    throw ConfigError("sweep.variable", "spectrum sweeps delta_p; use the sweep command for other variables");
  }
  const SweepPlan plan = cfg.sweep.plan();
  const Parallelism par = parallelism(opt);
  spdlog::info("sweeping {} over {} points on {} threads", sweep_variable_name(plan.variable),
               plan.values.size(), par.threads);

  Spectrum s = run_sweep(cfg.scenario, plan, par);
  s.meta.config_hash = config_hash(cfg);
  s.meta.timestamp = utc_timestamp();
  log_quadrature(s);

  const std::string out = resolve_out(opt, cfg);
  const OutputFormat fmt_out = resolve_format(opt, cfg, out);
  emit(out, [&](std::ostream& os) {
    if (fmt_out == OutputFormat::kCsv) {
      write_csv(os, s, plan.variable);
    } else {
      write_json(os, s, plan.variable);
    }
  });
  const std::string plot = opt.plot.empty() ? cfg.output.plot : opt.plot;
  if (!plot.empty()) plot_spectrum(plot, s, plan.variable, cfg.criteria);
  if (opt.verify) verify_row(cfg, plan, s);
  return kExitOk;
}

}  // namespace

Tree load_tree(const Options& opt) {
  Tree tree;
  if (!opt.preset.empty()) merge_tree(tree, read_tree(preset_path(opt.preset)));
  if (!opt.config.empty()) merge_tree(tree, read_tree(std::filesystem::path(opt.config)));
  for (const auto& s : opt.sets) apply_override(tree, s);
  if (opt.quad_nodes) apply_override(tree, fmt::format("quadrature.nodes={}", *opt.quad_nodes));
  if (opt.quad_span) apply_override(tree, fmt::format("quadrature.span={:.17g}", *opt.quad_span));
  if (opt.quad_tol) apply_override(tree, fmt::format("quadrature.rel_tol={:.17g}", *opt.quad_tol));
  if (!opt.quad_scheme.empty()) apply_override(tree, "quadrature.scheme=" + opt.quad_scheme);
  return tree;
}

RunConfig load_config(const Options& opt) {
  if (opt.preset.empty() && opt.config.empty()) {
    throw ConfigError("", "give --config or --preset");
  }
  std::filesystem::path base;
  if (!opt.config.empty()) {
    base = std::filesystem::path(opt.config).parent_path();
  } else {
    base = preset_dir();
  }
  return interpret(load_tree(opt), base);
}

Parallelism parallelism(const Options& opt) {
  return opt.threads == 0 ? Parallelism::hardware() : Parallelism{opt.threads};
}

int cmd_spectrum(const Options& opt) { return run_table(opt, true); }

int cmd_sweep(const Options& opt) { return run_table(opt, false); }

int cmd_validate(const Options& opt) {
  const RunConfig cfg = load_config(opt);
  const ValidateSpec& v = cfg.validate;
  const EliminationReport report =
      elimination_check(cfg.scenario, v.ratio, v.half_window, v.points, parallelism(opt));
  const std::string hash = config_hash(cfg);
  const bool pass = report.max_deviation <= v.max_deviation;
  spdlog::info("ratio {:g}: Delta_c2 = {:.6f} MHz; {} samples, {} on single-photon poles",
               report.ratio, report.drive.delta_c2 * 1e-6, report.samples.size(),
               report.singular_samples);
  spdlog::info("max relative deviation reduced vs five-level {:.4e} (closed form {:.4e}); "
               "threshold {:.3g}: {}",
               report.max_deviation, report.max_deviation_closed, v.max_deviation,
               pass ? "PASS" : "FAIL");
  if (v.ratio < 10.0) {
    spdlog::warn("detuning/Rabi ratio {:g} is outside the far-detuned regime", v.ratio);
  }
  const std::string out = resolve_out(opt, cfg);
  const OutputFormat f = resolve_format(opt, cfg, out);
  emit(out, [&](std::ostream& os) {
    if (f == OutputFormat::kCsv) {
      write_validation_csv(os, report, hash);
    } else {
      os << validation_json(report, v.max_deviation, hash) << '\n';
    }
  });
  return kExitOk;
}

int cmd_optimize(const Options& opt) {
  const RunConfig cfg = load_config(opt);
  if (cfg.optimize.dims.empty()) throw ConfigError("optimize", "no search bounds given");
  TradeoffProblem p;
  p.base = cfg.scenario;
  p.dims = cfg.optimize.dims;
  p.il_max_db = cfg.criteria.il_max_db;
  p.grid_points = cfg.optimize.grid_points;
  p.max_cycles = cfg.optimize.max_cycles;
  const TradeoffResult r = tradeoff_search(p, parallelism(opt));
  spdlog::info("{} evaluations, {} failed", r.evaluations, r.failed_evaluations);
  if (r.feasible) {
    spdlog::info("best IR {:.4f} dB at IL {:.4f} dB", r.best.ir_db, r.best.il_db);
  } else {
    spdlog::error("no point in the box has IL <= {:g} dB; lowest IL {:.4f} dB", p.il_max_db,
                  r.best_il.il_db);
  }
  if (opt.format == "csv") throw ConfigError("--format", "optimize writes JSON only");
  emit(resolve_out(opt, cfg), [&](std::ostream& os) { os << tradeoff_json(p, r, config_hash(cfg)) << '\n'; });
  return r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_bandwidth(const Options& opt) {
  if (opt.input.empty()) throw ConfigError("--input", "required");
  const Tree tree = load_tree(opt);
  const CriteriaSpec crit = interpret_criteria(tree);
  std::ifstream in(opt.input);
  if (!in) throw ConfigError("--input", "cannot open '" + opt.input + "'");
  const CsvSpectrum csv = read_csv(in, opt.input);
  const BandwidthResult b = bandwidth(csv.spectrum, crit.ir_min_db, crit.il_max_db);
  const AxisUnit u = axis_unit(csv.axis);
  spdlog::info("{} interval(s), total width {:.6g} {}", b.intervals.size(), b.total_width * u.per_si,
               u.symbol);
  std::string out = opt.out;
  if (out.empty() && tree.find("output") != tree.not_found()) {
    out = tree.get_child("output").get<std::string>("path", "");
  }
  if (opt.format == "csv") throw ConfigError("--format", "bandwidth writes JSON only");
  emit(out, [&](std::ostream& os) {
    os << bandwidth_json(b, csv.axis, crit.ir_min_db, crit.il_max_db, csv.spectrum.meta.config_hash)
       << '\n';
  });
  return kExitOk;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    spdlog::error("config: {}", e.what());
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    spdlog::error("infeasible: {}", e.what());
    return kExitInfeasible;
  } catch (const QuadratureError& e) {
    spdlog::error("quadrature: {} (estimate {:.6e}, relative error {:.3e})", e.what(), e.estimate(),
                  e.achieved_relative_error());
    return kExitNumerical;
  } catch (const NumericalError& e) {
    spdlog::error("numerical: {} (condition estimate {:.3e})", e.what(), e.condition_estimate());
    return kExitNumerical;
  } catch (const Error& e) {
    spdlog::error("numerical: {}", e.what());
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    spdlog::error("io: {}", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    spdlog::error("internal: {}", e.what());
    return 1;
  }
}

}  // namespace nrt::cli
