#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_common(CLI::App* sub, nrt::cli::Options& opt) {
  sub->add_option("--config,-c", opt.config, "INI run configuration");
  sub->add_option("--preset,-p", opt.preset, "shipped figure preset, e.g. fig3");
  sub->add_option("--set", opt.sets, "override section.key=value (repeatable)");
  sub->add_option("--out,-o", opt.out, "output file (default: stdout)");
  sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads,-j", opt.threads, "worker threads (default: hardware)");
}

void add_quadrature(CLI::App* sub, nrt::cli::Options& opt) {
  sub->add_option("--quad-nodes", opt.quad_nodes, "trapezoid node count (odd)");
  sub->add_option("--quad-span", opt.quad_span, "velocity half-span in units of v_p");
  sub->add_option("--quad-tol", opt.quad_tol, "relative tolerance of the adaptive scheme");
  sub->add_option("--quad-scheme", opt.quad_scheme, "trapezoid or adaptive")
      ->check(CLI::IsMember({"trapezoid", "adaptive"}));
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("nrt");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  CLI::App app{"Direction-dependent probe absorption in a thermal five-level Lambda medium"};
  app.require_subcommand(1);
  app.fallthrough();  // -q is accepted after the subcommand too
  bool quiet = false;
  bool list = false;
  app.add_flag("--quiet,-q", quiet, "only log warnings and errors");
  app.add_flag("--list-presets", list, "print the shipped presets and exit");

  nrt::cli::Options opt;
  auto* spectrum = app.add_subcommand("spectrum", "alpha, T, IR and IL against probe detuning");
  auto* sweep = app.add_subcommand("sweep", "the same quantities against any configured variable");
  auto* validate = app.add_subcommand("validate", "reduced vs five-level absorption at v = 0");
  auto* optimize = app.add_subcommand("optimize", "maximize IR subject to IL <= il_max");
  auto* bandwidth = app.add_subcommand("bandwidth", "intervals meeting the IR/IL criteria in a CSV");
  for (auto* sub : {spectrum, sweep, validate, optimize, bandwidth}) add_common(sub, opt);
  for (auto* sub : {spectrum, sweep, optimize}) add_quadrature(sub, opt);
  for (auto* sub : {spectrum, sweep}) {
    sub->add_option("--plot", opt.plot, "also render an SVG plot");
    sub->add_flag("--verify", opt.verify, "re-run one random row and compare");
  }
  bandwidth->add_option("--input,-i", opt.input, "spectrum CSV written by spectrum or sweep")->required();

  if (argc > 1 && std::string_view(argv[1]) == "--list-presets") {
    for (const auto& name : nrt::cli::preset_names()) std::cout << name << '\n';
    return 0;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nrt::cli::kExitConfig;
  }
  if (quiet) spdlog::set_level(spdlog::level::warn);

  return nrt::cli::guarded([&] {
    if (*spectrum) return nrt::cli::cmd_spectrum(opt);
    if (*sweep) return nrt::cli::cmd_sweep(opt);
    if (*validate) return nrt::cli::cmd_validate(opt);
    if (*optimize) return nrt::cli::cmd_optimize(opt);
    return nrt::cli::cmd_bandwidth(opt);
  });
}
