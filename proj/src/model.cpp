#include "tmcm/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tmcm {

Model::Model(int num_labels, std::vector<std::vector<Energy>> unary,
             std::vector<Clique> cliques, DistanceSpec dist, Energy scale)
    : num_vars_(static_cast<int>(unary.size())),
      num_labels_(num_labels),
      cliques_(std::move(cliques)),
      dist_(std::move(dist)),
      scale_(scale) {
  if (num_labels_ < 1) {
    throw std::invalid_argument("label count must be at least 1");
  }
  if (scale_ < 1) {
    throw std::invalid_argument("scale must be positive");
  }
  validate_distance(dist_);
  if (dist_.kind == DistanceKind::table &&
      dist_.table.size() < static_cast<std::size_t>(num_labels_)) {
    throw std::invalid_argument(
        "distance table must cover d(0..h-1): have " +
        std::to_string(dist_.table.size()) + " entries for h = " +
        std::to_string(num_labels_));
  }

  unary_.reserve(unary.size() * static_cast<std::size_t>(num_labels_));
  for (std::size_t a = 0; a < unary.size(); ++a) {
    auto& row = unary[a];
    if (row.size() != static_cast<std::size_t>(num_labels_)) {
      throw std::invalid_argument("unary row " + std::to_string(a) + " has " +
                                  std::to_string(row.size()) +
                                  " entries, expected " +
                                  std::to_string(num_labels_));
    }
    const Energy low = *std::min_element(row.begin(), row.end());
    if (low < 0) {
      for (auto& v : row) {
        v -= low;
      }
      unary_shift_ -= low;
    }
    unary_.insert(unary_.end(), row.begin(), row.end());
  }

  for (std::size_t c = 0; c < cliques_.size(); ++c) {
    const auto& clique = cliques_[c];
    const std::string where = "clique " + std::to_string(c);
    if (clique.size() < 2) {
      throw std::invalid_argument(where + " has fewer than two members");
    }
    if (clique.weight < 0) {
      throw std::invalid_argument(where + " has a negative weight");
    }
    auto sorted = clique.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(where + " has duplicate members");
    }
    if (sorted.front() < 0 || sorted.back() >= num_vars_) {
      throw std::invalid_argument(where + " references an unknown variable");
    }
  }
}

std::size_t Model::max_clique_size() const noexcept {
  std::size_t best = 0;
  for (const auto& c : cliques_) {
    best = std::max(best, c.size());
  }
  return best;
}

void Model::check_labeling(std::span<const Label> x) const {
  if (x.size() != static_cast<std::size_t>(num_vars_)) {
    throw std::invalid_argument("labeling has " + std::to_string(x.size()) +
                                " entries, expected " +
                                std::to_string(num_vars_));
  }
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] < 1 || x[a] > num_labels_) {
      throw std::invalid_argument("label " + std::to_string(x[a]) +
                                  " of variable " + std::to_string(a) +
                                  " is outside [1, " +
                                  std::to_string(num_labels_) + "]");
    }
  }
}

Energy clique_potential(std::span<const Label> clique_labels,
                        const DistanceSpec& dist, Energy weight) {
  const int pairs = dist.pairs_for(clique_labels.size());
  if (pairs == 0 || weight == 0) {
    return 0;
  }
  std::vector<Label> p(clique_labels.begin(), clique_labels.end());
  std::sort(p.begin(), p.end());
  const std::size_t c = p.size();
  Energy sum = 0;
  for (int i = 0; i < pairs; ++i) {
    sum += dist.truncated(p[c - 1 - i] - p[i]);
  }
  return weight * sum;
}

Energy clique_energy(const Model& model, const Clique& clique,
                     std::span<const Label> x) {
  std::vector<Label> labels;
  labels.reserve(clique.size());
  for (int a : clique.members) {
    labels.push_back(x[a]);
  }
  return clique_potential(labels, model.dist(), clique.weight);
}

Energy unary_energy(const Model& model, std::span<const Label> x) {
  Energy sum = 0;
  for (int a = 0; a < model.num_vars(); ++a) {
    sum += model.unary(a, x[a]);
  }
  return sum;
}

Energy clique_energy_total(const Model& model, std::span<const Label> x) {
  Energy sum = 0;
  for (const auto& clique : model.cliques()) {
    sum += clique_energy(model, clique, x);
  }
  return sum;
}

Energy energy(const Model& model, std::span<const Label> x) {
  return unary_energy(model, x) + clique_energy_total(model, x);
}

}  // namespace tmcm
