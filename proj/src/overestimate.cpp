#include "tmcm/overestimate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tmcm {

IntervalProblem::IntervalProblem(const Model& model, Labeling current,
                                 Label first, Label last)
    : model_(&model), current_(std::move(current)), first_(first), last_(last) {
  if (first < 1 || last > model.num_labels() || first > last) {
    throw std::invalid_argument(
        "interval [" + std::to_string(first) + ", " + std::to_string(last) +
        "] is not within [1, " + std::to_string(model.num_labels()) + "]");
  }
  model.check_labeling(current_);
}

void IntervalProblem::check_move(std::span<const int> y) const {
  if (y.size() != current_.size()) {
    throw std::invalid_argument("move labeling has wrong length");
  }
  for (int v : y) {
    if (v < 0 || v > width()) {
      throw std::invalid_argument("move label " + std::to_string(v) +
                                  " outside [0, " + std::to_string(width()) +
                                  "]");
    }
  }
}

Labeling map_to_full(const IntervalProblem& problem, std::span<const int> y) {
  problem.check_move(y);
  Labeling x(y.size());
  for (std::size_t a = 0; a < y.size(); ++a) {
    x[a] = problem.full_label(static_cast<int>(a), y[a]);
  }
  return x;
}

Energy delta(int ya, int yb, Label current_a, Label current_b,
             const DistanceSpec& dist) {
  if (ya == 0 && yb == 0) {
    return dist.truncated(current_a - current_b);
  }
  if (ya == 0) {
    return dist.truncation + dist(yb - 1);
  }
  if (yb == 0) {
    return dist.truncation + dist(ya - 1);
  }
  return dist(ya - yb);
}

std::vector<int> move_order(const IntervalProblem& problem,
                            const Clique& clique, std::span<const int> y) {
  const auto& current = problem.current();
  std::vector<int> retained;
  std::vector<int> moved;
  for (int a : clique.members) {
    (y[a] == 0 ? retained : moved).push_back(a);
  }
  std::sort(retained.begin(), retained.end(), [&](int a, int b) {
    return std::tie(current[a], a) < std::tie(current[b], b);
  });
  std::sort(moved.begin(), moved.end(), [&](int a, int b) {
    return std::tie(y[a], a) < std::tie(y[b], b);
  });

  std::vector<int> order;
  order.reserve(clique.size());
  const std::size_t u = moved.size();
  if (u < retained.size()) {
    // Pull a block of u members out of the middle of the retained labels.
    const std::size_t keep = retained.size() - u;
    const auto mid = retained.begin() + static_cast<std::ptrdiff_t>((keep + 1) / 2);
    order.insert(order.end(), mid, mid + static_cast<std::ptrdiff_t>(u));
    order.insert(order.end(), retained.begin(), mid);
    order.insert(order.end(), mid + static_cast<std::ptrdiff_t>(u), retained.end());
  } else {
    order = retained;
  }
  order.insert(order.end(), moved.begin(), moved.end());
  return order;
}

Energy overestimate_clique(const IntervalProblem& problem, const Clique& clique,
                           std::span<const int> y) {
  const auto& dist = problem.model().dist();
  const int pairs = dist.pairs_for(clique.size());
  if (pairs == 0 || clique.weight == 0) {
    return 0;
  }
  const auto q = move_order(problem, clique, y);
  const auto& current = problem.current();
  const std::size_t c = q.size();
  Energy sum = 0;
  for (int i = 0; i < pairs; ++i) {
    const int a = q[i];
    const int b = q[c - 1 - i];
    sum += delta(y[a], y[b], current[a], current[b], dist);
  }
  return clique.weight * sum;
}

Energy overestimate_unary(const IntervalProblem& problem, int var, int y) {
  return problem.model().unary(var, problem.full_label(var, y));
}

Energy overestimate_energy(const IntervalProblem& problem,
                           std::span<const int> y) {
  problem.check_move(y);
  Energy sum = 0;
  for (int a = 0; a < static_cast<int>(y.size()); ++a) {
    sum += overestimate_unary(problem, a, y[a]);
  }
  for (const auto& clique : problem.model().cliques()) {
    sum += overestimate_clique(problem, clique, y);
  }
  return sum;
}

}  // namespace tmcm
