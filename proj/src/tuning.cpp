#include "prefmodel/tuning.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <utility>

namespace prefmodel {

GridSpec GridSpec::standard() {
  GridSpec g;
  for (int c = -5; c <= 15; c += 2) g.c_exponents.push_back(c);
  for (int e = 3; e >= -15; e -= 2) g.g_exponents.push_back(e);
  return g;
}

double GridResult::best_cost() const { return std::ldexp(1.0, best_c_exp); }
double GridResult::best_gamma() const { return std::ldexp(1.0, best_g_exp); }

namespace {

void check_disjoint(const std::vector<Instance>& train,
                    const std::vector<Instance>& validation) {
  std::set<std::pair<std::string, int>> seen;
  for (const Instance& inst : train) seen.emplace(inst.match_id, inst.turn);
  for (const Instance& inst : validation)
    if (seen.count({inst.match_id, inst.turn}))
      throw ContractError("train and validation sets overlap at " +
                          inst.match_id + " turn " +
                          std::to_string(inst.turn));
}

double validation_accuracy(const TrainedModel& model,
                           const std::vector<Instance>& validation) {
  std::size_t correct = 0;
  for (const Instance& inst : validation)
    if (predict(model, inst.features) == inst.label) ++correct;
  return static_cast<double>(correct) / validation.size();
}

}  // namespace

GridResult grid_search(const HyperTrainer& trainer,
                       const std::vector<Instance>& train,
                       const std::vector<Instance>& validation,
                       const GridSpec& grid, int jobs,
                       std::ostream* warnings) {
  if (grid.c_exponents.empty() || grid.g_exponents.empty())
    throw DomainError("empty hyperparameter grid");
  if (validation.empty()) throw DomainError("empty validation set");
  check_disjoint(train, validation);

  GridResult result;
  result.cells.resize(grid.size());
  for (std::size_t ci = 0; ci < grid.c_exponents.size(); ++ci)
    for (std::size_t gi = 0; gi < grid.g_exponents.size(); ++gi) {
      GridCell& cell = result.cells[ci * grid.g_exponents.size() + gi];
      cell.c_exp = grid.c_exponents[ci];
      cell.g_exp = grid.g_exponents[gi];
    }

  parallel_for(result.cells.size(), jobs, [&](std::size_t idx) {
    GridCell& cell = result.cells[idx];
    const auto start = std::chrono::steady_clock::now();
    try {
      TrainedModel model = trainer(train, std::ldexp(1.0, cell.c_exp),
                                   std::ldexp(1.0, cell.g_exp));
      cell.accuracy = validation_accuracy(model, validation);
    } catch (const Error& e) {
      cell.failed = true;
      cell.accuracy = 0.0;
      cell.message = e.what();
    }
    cell.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  });

  bool first = true;
  for (const GridCell& cell : result.cells) {
    if (cell.failed && warnings)
      *warnings << "warning: grid cell c=2^" << cell.c_exp << " g=2^"
                << cell.g_exp << " failed: " << cell.message << "\n";
    if (first || cell.accuracy > result.best_accuracy) {
      result.best_accuracy = cell.accuracy;
      result.best_c_exp = cell.c_exp;
      result.best_g_exp = cell.g_exp;
      first = false;
    }
  }
  return result;
}

void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells) {
  out << "c_exp,g_exp,accuracy,wall_time\n";
  char buf[32];
  for (const GridCell& cell : cells) {
    std::snprintf(buf, sizeof(buf), "%.3f", cell.wall_time);
    out << cell.c_exp << ',' << cell.g_exp << ','
        << format_double(cell.accuracy) << ',' << buf << '\n';
  }
}

}  // namespace prefmodel
