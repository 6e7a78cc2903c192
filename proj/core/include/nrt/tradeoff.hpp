#pragma once

#include <cstddef>
#include <vector>

#include "nrt/parallel.hpp"
#include "nrt/pipeline.hpp"

namespace nrt {

struct SearchDimension {
  SweepVariable variable = SweepVariable::kTheta;
  double lo = 0.0;
  double hi = 0.0;          // lo == hi pins the coordinate
  double resolution = 0.0;  // 0 means (hi - lo) / 1000
};

struct TradeoffProblem {
  Scenario base;  // supplies Delta_p and every coordinate not searched
  std::vector<SearchDimension> dims;
  double il_max_db = 1.0;
  std::size_t grid_points = 9;  // per free coordinate
  std::size_t max_cycles = 40;

  void validate() const;
};

struct TradeoffPoint {
  std::vector<double> x;  // one value per dimension, SI units
  double ir_db = 0.0;
  double il_db = 0.0;
};

struct TradeoffResult {
  bool feasible = false;
  TradeoffPoint best;     // max IR with IL <= il_max when feasible
  TradeoffPoint best_il;  // lowest IL seen anywhere
  std::size_t evaluations = 0;
  std::size_t failed_evaluations = 0;
};

// Maximizes IR subject to IL <= il_max over the box. An infeasible box is
// reported through feasible = false with best_il filled in.
TradeoffResult tradeoff_search(const TradeoffProblem& problem, Parallelism par = {});

}  // namespace nrt
