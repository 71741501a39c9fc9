#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tmcm/model.hpp"

namespace tmcm {

/// Square-lattice benchmark: every variable takes one of `labels` labels,
/// every axis-aligned window x window block (stride 1) is a clique, and
/// unaries are drawn uniformly from [unary_lo, unary_hi].
struct SyntheticSpec {
  int side = 30;
  int labels = 8;
  int window = 5;
  Energy unary_lo = 1;
  Energy unary_hi = 100;
  Energy weight = 5;
  DistanceKind kind = DistanceKind::linear;
  Energy truncation = 5;
  int max_pairs = 1;
  std::uint64_t seed = 1;
  int instances = 1;
};

/// Deterministic for a given spec. Unaries come from std::mt19937_64 seeded
/// with `seed`, reduced into the range by modulo, in row-major order.
Model generate(const SyntheticSpec& spec);

/// Instance k of a sweep uses seed `spec.seed + k`.
Model generate_instance(const SyntheticSpec& spec, int k);

struct SweepRow {
  int interval_length = 0;
  Energy truncation = 0;
  int max_pairs = 0;
  Energy weight = 0;
  double mean_energy = 0;
  double mean_seconds = 0;
  int instances = 0;
  std::uint64_t seed0 = 0;
  std::vector<Energy> energies;  // per instance, in instance order
};

/// Runs range expansion on every instance for each interval length.
/// Instances run on up to `jobs` threads; results are merged in instance
/// order so the output does not depend on scheduling.
std::vector<SweepRow> sweep(const SyntheticSpec& spec,
                            std::span<const int> interval_lengths,
                            int jobs = 1);

/// `h_prime,M,m,omega,mean_energy,mean_seconds,instances,seed0`. With
/// `timing` off the seconds column is written as 0 so identical specs give
/// byte-identical output.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     const std::vector<std::string>& comments = {},
                     bool timing = true);

/// Family of tiny random models for brute-force audits.
struct TinyFamily {
  int min_vars = 2;
  int max_vars = 6;
  int min_labels = 2;
  int max_labels = 5;
  int max_clique_size = 4;
  int max_cliques = 3;
  int max_pairs = 2;
  std::vector<Energy> truncations{1, 2, 3};
  Energy max_weight = 5;
  Energy max_unary = 100;
  DistanceKind kind = DistanceKind::linear;
};

/// Deterministic draw from the family; cliques have distinct random members.
Model random_tiny_model(std::uint64_t seed, const TinyFamily& family = {});

}  // namespace tmcm
