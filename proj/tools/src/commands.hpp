#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "nrt/parallel.hpp"

namespace nrt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInfeasible = 4;

struct Options {
  std::string config;
  std::string preset;
  std::vector<std::string> sets;
  std::string out;
  std::string format;  // csv | json, empty: from config or extension
  std::optional<std::size_t> quad_nodes;
  std::optional<double> quad_span;
  std::optional<double> quad_tol;
  std::string quad_scheme;
  unsigned threads = 0;  // 0: hardware
  std::string plot;
  bool verify = false;
  std::string input;  // bandwidth only
};

// Preset, then config file, then --set and --quad-* overrides.
Tree load_tree(const Options& opt);
RunConfig load_config(const Options& opt);

Parallelism parallelism(const Options& opt);

int cmd_spectrum(const Options& opt);
int cmd_sweep(const Options& opt);
int cmd_validate(const Options& opt);
int cmd_optimize(const Options& opt);
int cmd_bandwidth(const Options& opt);

// Logs the exception in flight and maps it to an exit code.
int exit_code_for_current_exception();

// Runs fn, logging any library error and mapping it to an exit code.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (...) {
    return exit_code_for_current_exception();
  }
}

}  // namespace nrt::cli
