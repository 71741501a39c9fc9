#pragma once

#include <span>
#include <vector>

#include "tmcm/model.hpp"

namespace tmcm {

/// Move label per variable over L' = {0, ..., h'}: 0 keeps the current label,
/// i >= 1 takes label f + i - 1 of the interval.
using MoveLabeling = std::vector<int>;

/// One range move: the current labeling and the interval [first, last].
/// Holds a reference to the model, which must outlive the problem.
class IntervalProblem {
 public:
  IntervalProblem(const Model& model, Labeling current, Label first,
                  Label last);

  const Model& model() const noexcept { return *model_; }
  const Labeling& current() const noexcept { return current_; }
  Label first() const noexcept { return first_; }
  Label last() const noexcept { return last_; }

  /// h' = last - first + 1
  int width() const noexcept { return last_ - first_ + 1; }

  /// Label of variable `var` under move label y.
  Label full_label(int var, int y) const {
    return y == 0 ? current_[var] : first_ + y - 1;
  }

  /// Throws std::invalid_argument unless y has n entries in [0, h'].
  void check_move(std::span<const int> y) const;

 private:
  const Model* model_;
  Labeling current_;
  Label first_;
  Label last_;
};

Labeling map_to_full(const IntervalProblem& problem, std::span<const int> y);

/// Submodular overestimate of min{d(x_a - x_b), M} over move labels:
///   both retained : min{d(xa - xb), M}
///   one retained  : M + d(y_moved - 1)
///   both moved    : d(ya - yb)
Energy delta(int ya, int yb, Label current_a, Label current_b,
             const DistanceSpec& dist);

/// Order of clique members used to pair them. Moved members come last in
/// ascending (move label, id) order. Retained members come first: with u
/// members moved, the u retained members that sit in the middle of the
/// retained labels (sorted by current label, then id) lead, so they are the
/// ones paired with moved members; the rest follow in sorted order and pair
/// with each other from the outside in. This keeps E'(y) >= E(x(y)).
std::vector<int> move_order(const IntervalProblem& problem,
                            const Clique& clique, std::span<const int> y);

/// theta'_c(y_c) = w_c * sum_{i=1}^{m_c} delta(p_i, p_{c-i+1}) over the
/// move_order() pairing. `y` is the full move labeling.
Energy overestimate_clique(const IntervalProblem& problem, const Clique& clique,
                           std::span<const int> y);

/// theta'_a(y_a); unaries are already non-negative so kappa_a = 0.
Energy overestimate_unary(const IntervalProblem& problem, int var, int y);

/// E'(y)
Energy overestimate_energy(const IntervalProblem& problem,
                           std::span<const int> y);

}  // namespace tmcm
