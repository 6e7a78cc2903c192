#include "nrt/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "nrt/errors.hpp"

namespace nrt {

void TradeoffProblem::validate() const {
  if (dims.empty()) throw ConfigError("optimize", "no search coordinates given");
  if (!(il_max_db > 0.0)) throw ConfigError("criteria.il_max", "IL_max must be positive");
  if (grid_points < 2) throw ConfigError("optimize.grid_points", "need at least two grid points");
  for (const auto& d : dims) {
    if (!(d.lo <= d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
      throw ConfigError("optimize." + std::string(sweep_variable_name(d.variable)),
                        "bounds must be finite with lo <= hi");
    }
    if (d.resolution < 0.0) {
      throw ConfigError("optimize." + std::string(sweep_variable_name(d.variable)),
                        "resolution must be non-negative");
    }
  }
  base.validate();
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Search {
 public:
  Search(const TradeoffProblem& p, Parallelism par) : p_(p), par_(par) {}

  TradeoffPoint evaluate(const std::vector<double>& x, Parallelism inner) const {
    Scenario sc = p_.base;
    for (std::size_t i = 0; i < x.size(); ++i) set_variable(sc, p_.dims[i].variable, x[i]);
    TradeoffPoint tp{x, kNaN, kNaN};
    try {
      sc.validate();
      const auto r = evaluate_point(sc, inner);
      tp.ir_db = r.record.ir_db;
      tp.il_db = r.record.il_db;
    } catch (const Error&) {
      // Left as NaN; counted as a failed evaluation.
    }
    return tp;
  }

  bool feasible(const TradeoffPoint& t) const {
    return std::isfinite(t.il_db) && t.il_db <= p_.il_max_db;
  }

  // Golden-section objective: IR inside the feasible set, a steep descent
  // towards it outside.
  double merit(const TradeoffPoint& t) const {
    if (!std::isfinite(t.ir_db)) return -std::numeric_limits<double>::max();
    if (feasible(t)) return t.ir_db;
    return -1e6 - t.il_db;
  }

  void record(const TradeoffPoint& t, TradeoffResult& res) const {
    ++res.evaluations;
    if (!std::isfinite(t.il_db)) {
      ++res.failed_evaluations;
      return;
    }
    if (!std::isfinite(res.best_il.il_db) || t.il_db < res.best_il.il_db) res.best_il = t;
    if (feasible(t) && (!res.feasible || t.ir_db > res.best.ir_db)) {
      res.feasible = true;
      res.best = t;
    }
  }

  TradeoffResult run() {
    const std::size_t nd = p_.dims.size();
    TradeoffResult res;
    res.best_il.il_db = kNaN;

    // Coarse grid, lexicographic order.
    std::vector<std::vector<double>> axes(nd);
    std::size_t total = 1;
    for (std::size_t i = 0; i < nd; ++i) {
      const auto& d = p_.dims[i];
      axes[i] = d.lo == d.hi ? std::vector<double>{d.lo} : linspace(d.lo, d.hi, p_.grid_points);
      total *= axes[i].size();
    }
    std::vector<TradeoffPoint> grid(total);
    parallel_for(total, par_, [&](std::size_t k) {
      std::vector<double> x(nd);
      std::size_t rem = k;
      for (std::size_t i = nd; i-- > 0;) {
        x[i] = axes[i][rem % axes[i].size()];
        rem /= axes[i].size();
      }
      grid[k] = evaluate(x, Parallelism{1});
    });
    for (const auto& g : grid) record(g, res);

    TradeoffPoint current = res.feasible ? res.best : res.best_il;
    if (!std::isfinite(current.il_db)) return res;

    std::vector<double> step(nd), resolution(nd);
    for (std::size_t i = 0; i < nd; ++i) {
      const auto& d = p_.dims[i];
      step[i] = d.lo == d.hi ? 0.0 : (d.hi - d.lo) / static_cast<double>(p_.grid_points - 1);
      resolution[i] = d.resolution > 0.0 ? d.resolution : (d.hi - d.lo) / 1000.0;
    }

    for (std::size_t cycle = 0; cycle < p_.max_cycles; ++cycle) {
      bool active = false;
      for (std::size_t i = 0; i < nd; ++i) {
        if (step[i] < resolution[i] || step[i] == 0.0) continue;
        active = true;
        const auto& d = p_.dims[i];
        current = refine(current, i, std::max(d.lo, current.x[i] - step[i]),
                         std::min(d.hi, current.x[i] + step[i]), resolution[i], res);
        step[i] *= 0.5;
      }
      if (!active) break;
    }
    return res;
  }

 private:
  TradeoffPoint refine(const TradeoffPoint& start, std::size_t dim, double a, double b,
                       double tol, TradeoffResult& res) const {
    const double inv_phi = 1.0 / std::numbers::phi;
    auto at = [&](double v) {
      std::vector<double> x = start.x;
      x[dim] = v;
      const auto t = evaluate(x, par_);
      record(t, res);
      return t;
    };
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    TradeoffPoint tc = at(c);
    TradeoffPoint td = at(d);
    while (b - a > tol) {
      if (merit(tc) >= merit(td)) {
        b = d;
        d = c;
        td = tc;
        c = b - (b - a) * inv_phi;
        tc = at(c);
      } else {
        a = c;
        c = d;
        tc = td;
        d = a + (b - a) * inv_phi;
        td = at(d);
      }
    }
    TradeoffPoint best = start;
    for (const auto* t : {&tc, &td}) {
      if (merit(*t) > merit(best)) best = *t;
    }
    return best;
  }

  const TradeoffProblem& p_;
  Parallelism par_;
};

}  // namespace

TradeoffResult tradeoff_search(const TradeoffProblem& problem, Parallelism par) {
  problem.validate();
  return Search(problem, par).run();
}

}  // namespace nrt
