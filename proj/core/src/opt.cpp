#include "ordmatch/opt.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordmatch {
namespace {

// Minimum-cost assignment of every row to a distinct column, rows <= cols.
// Classic O(rows^2 * cols) potential-based Hungarian method; returns the
// column chosen for each row.
std::vector<std::size_t> hungarian_min(const std::vector<double>& cost, std::size_t rows,
                                       std::size_t cols) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internally; column 0 is the virtual start column.
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0), minv(cols + 1);
  std::vector<std::size_t> row_of(cols + 1, 0), way(cols + 1, 0);
  std::vector<char> used(cols + 1);

  for (std::size_t r = 1; r <= rows; ++r) {
    row_of[0] = r;
    std::size_t c0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[c0] = 1;
      const std::size_t r0 = row_of[c0];
      double delta = kInf;
      std::size_t c1 = 0;
      for (std::size_t c = 1; c <= cols; ++c) {
        if (used[c]) continue;
        const double reduced = cost[(r0 - 1) * cols + (c - 1)] - u[r0] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = c0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          c1 = c;
        }
      }
      for (std::size_t c = 0; c <= cols; ++c) {
        if (used[c]) {
          u[row_of[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      c0 = c1;
    } while (row_of[c0] != 0);
    do {
      const std::size_t c1 = way[c0];
      row_of[c0] = row_of[c1];
      c0 = c1;
    } while (c0 != 0);
  }

  std::vector<std::size_t> col_of_row(rows, 0);
  for (std::size_t c = 1; c <= cols; ++c) {
    if (row_of[c] != 0) col_of_row[row_of[c] - 1] = c - 1;
  }
  return col_of_row;
}

void brute_force(const Instance& inst, const ValuationProfile& values, ItemIndex g,
                 std::vector<std::size_t>& residual, double acc, double& best) {
  if (g == inst.num_items()) {
    best = std::max(best, acc);
    return;
  }
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    if (residual[i] == 0) continue;
    --residual[i];
    brute_force(inst, values, g + 1, residual, acc + values.value(i, g), best);
    ++residual[i];
  }
}

}  // namespace

OptResult optimal_matching(const Instance& inst, const ValuationProfile& values) {
  values.check_dimensions(inst);
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();

  std::vector<ItemIndex> items;
  std::vector<char> item_used(m, 0);
  std::vector<AgentIndex> agents;
  for (AgentIndex i = 0; i < n; ++i) {
    bool any = false;
    const auto row = values.row(i);
    for (ItemIndex g = 0; g < m; ++g) {
      if (row[g] > 0.0) {
        any = true;
        item_used[g] = 1;
      }
    }
    if (any) agents.push_back(i);
  }
  for (ItemIndex g = 0; g < m; ++g) {
    if (item_used[g]) items.push_back(g);
  }

  Matching partial(m);
  if (!items.empty()) {
    // Slot expansion; an agent never needs more slots than there are useful items.
    std::vector<AgentIndex> slot_agent;
    for (AgentIndex i : agents) {
      slot_agent.insert(slot_agent.end(), std::min(inst.quota(i), items.size()), i);
    }
    const std::size_t rows = slot_agent.size();
    const std::size_t cols = std::max(rows, items.size());  // extra columns are dummies
    std::vector<double> cost(rows * cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = values.row(slot_agent[r]);
      for (std::size_t c = 0; c < items.size(); ++c) cost[r * cols + c] = -row[items[c]];
    }
    const auto col_of_row = hungarian_min(cost, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t c = col_of_row[r];
      if (c < items.size() && values.value(slot_agent[r], items[c]) > 0.0) {
        partial.assign(items[c], slot_agent[r]);
      }
    }
  }

  Matching full = complete_matching(partial, inst);
  const double value = social_welfare(full, values);
  return {std::move(full), value};
}

double brute_force_opt(const Instance& inst, const ValuationProfile& values) {
  values.check_dimensions(inst);
  if (inst.num_items() > kBruteForceMaxItems) {
    throw std::invalid_argument("brute_force_opt: m = " + std::to_string(inst.num_items()) +
                                " exceeds the enumeration limit of 8");
  }
  std::vector<std::size_t> residual(inst.quotas().begin(), inst.quotas().end());
  double best = 0.0;
  brute_force(inst, values, 0, residual, 0.0, best);
  return best;
}

}  // namespace ordmatch
