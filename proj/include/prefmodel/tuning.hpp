#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "prefmodel/featurize.hpp"
#include "prefmodel/learners.hpp"

namespace prefmodel {

// Exponential two-parameter grid: candidate values are 2^c and 2^g.
struct GridSpec {
  std::vector<int> c_exponents;
  std::vector<int> g_exponents;

  static GridSpec standard();
  std::size_t size() const {
    return c_exponents.size() * g_exponents.size();
  }
};

struct GridCell {
  int c_exp = 0;
  int g_exp = 0;
  double accuracy = 0.0;
  double wall_time = 0.0;  // seconds
  bool failed = false;
  std::string message;
};

struct GridResult {
  int best_c_exp = 0;
  int best_g_exp = 0;
  double best_accuracy = 0.0;
  std::vector<GridCell> cells;  // in scan order

  double best_cost() const;
  double best_gamma() const;
};

using HyperTrainer = std::function<TrainedModel(
    const std::vector<Instance>&, double cost, double gamma)>;

// Evaluates every (c, g) pair, outer loop over c, inner over g. The first
// pair attaining the maximum validation accuracy wins (strict improvement
// only). Cells whose trainer throws count as accuracy 0 and the search
// continues; a warning is written to `warnings` when non-null.
GridResult grid_search(const HyperTrainer& trainer,
                       const std::vector<Instance>& train,
                       const std::vector<Instance>& validation,
                       const GridSpec& grid, int jobs = 1,
                       std::ostream* warnings = nullptr);

void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells);

}  // namespace prefmodel
