#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmcm/distance.hpp"

namespace tmcm {

/// One label per variable, each in [1, h].
using Labeling = std::vector<Label>;

/// A high-order clique: at least two distinct variables and a weight.
struct Clique {
  std::vector<int> members;
  Energy weight = 0;

  std::size_t size() const noexcept { return members.size(); }
  bool operator==(const Clique&) const = default;
};

/// Truncated max-of-convex energy
///
///   E(x) = sum_a theta_a(x_a) + sum_c theta_c(x_c),
///   theta_c(x_c) = w_c * sum_{i=1}^{m_c} min{d(p_i - p_{c-i+1}), M},
///
/// where p is the ascending sort of the clique labels. Immutable once built.
class Model {
 public:
  /// Builds and validates a model. `unary` holds one row of h values per
  /// variable; rows with negative entries are shifted up so their minimum is
  /// zero and the total shift is kept in unary_shift().
  Model(int num_labels, std::vector<std::vector<Energy>> unary,
        std::vector<Clique> cliques, DistanceSpec dist, Energy scale = 1);

  int num_vars() const noexcept { return num_vars_; }
  int num_labels() const noexcept { return num_labels_; }

  Energy unary(int var, Label label) const {
    return unary_[static_cast<std::size_t>(var) * num_labels_ + label - 1];
  }
  std::span<const Energy> unary_row(int var) const {
    return {unary_.data() + static_cast<std::size_t>(var) * num_labels_,
            static_cast<std::size_t>(num_labels_)};
  }

  const std::vector<Clique>& cliques() const noexcept { return cliques_; }
  const DistanceSpec& dist() const noexcept { return dist_; }

  /// Sum of the per-variable constants added to make unaries non-negative.
  /// Raw energy = energy() - unary_shift().
  Energy unary_shift() const noexcept { return unary_shift_; }

  /// Factor by which the caller pre-scaled its energies (metadata only).
  Energy scale() const noexcept { return scale_; }

  int pairs_for(const Clique& clique) const {
    return dist_.pairs_for(clique.size());
  }
  std::size_t max_clique_size() const noexcept;

  /// Throws std::invalid_argument unless x has n entries in [1, h].
  void check_labeling(std::span<const Label> x) const;

 private:
  int num_vars_ = 0;
  int num_labels_ = 0;
  std::vector<Energy> unary_;
  std::vector<Clique> cliques_;
  DistanceSpec dist_;
  Energy unary_shift_ = 0;
  Energy scale_ = 1;
};

/// w * sum over the m_c extreme disjoint pairs of the sorted labels of the
/// truncated distance; m_c = min(m, floor(c/2)).
Energy clique_potential(std::span<const Label> clique_labels,
                        const DistanceSpec& dist, Energy weight);

/// theta_c evaluated on the clique's members under x.
Energy clique_energy(const Model& model, const Clique& clique,
                     std::span<const Label> x);

Energy unary_energy(const Model& model, std::span<const Label> x);
Energy clique_energy_total(const Model& model, std::span<const Label> x);

/// Full energy E(x).
Energy energy(const Model& model, std::span<const Label> x);

}  // namespace tmcm
