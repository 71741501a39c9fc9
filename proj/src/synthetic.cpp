#include "tmcm/synthetic.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "tmcm/range_expansion.hpp"

namespace tmcm {

Model generate(const SyntheticSpec& spec) {
  if (spec.side < 1 || spec.labels < 1 || spec.window < 1 ||
      spec.window > spec.side) {
    throw std::invalid_argument("synthetic lattice needs 1 <= window <= side");
  }
  if (spec.unary_lo < 0 || spec.unary_hi < spec.unary_lo) {
    throw std::invalid_argument("synthetic unary range is empty or negative");
  }
  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(spec.unary_hi - spec.unary_lo) + 1;
  const int n = spec.side * spec.side;
  std::vector<std::vector<Energy>> unary(n, std::vector<Energy>(spec.labels));
  for (auto& row : unary) {
    for (auto& v : row) {
      v = spec.unary_lo + static_cast<Energy>(rng() % span);
    }
  }

  std::vector<Clique> cliques;
  const int last = spec.side - spec.window;
  for (int top = 0; top <= last; ++top) {
    for (int left = 0; left <= last; ++left) {
      Clique c{{}, spec.weight};
      c.members.reserve(static_cast<std::size_t>(spec.window) * spec.window);
      for (int dy = 0; dy < spec.window; ++dy) {
        for (int dx = 0; dx < spec.window; ++dx) {
          c.members.push_back((top + dy) * spec.side + left + dx);
        }
      }
      if (c.size() >= 2) cliques.push_back(std::move(c));
    }
  }
  DistanceSpec dist{spec.kind, {}, spec.truncation, spec.max_pairs};
  return Model(spec.labels, std::move(unary), std::move(cliques),
               std::move(dist));
}

Model generate_instance(const SyntheticSpec& spec, int k) {
  auto copy = spec;
  copy.seed = spec.seed + static_cast<std::uint64_t>(k);
  return generate(copy);
}

std::vector<SweepRow> sweep(const SyntheticSpec& spec,
                            std::span<const int> interval_lengths, int jobs) {
  if (spec.instances < 1) {
    throw std::invalid_argument("a sweep needs at least one instance");
  }
  const std::size_t rows = interval_lengths.size();
  const std::size_t instances = static_cast<std::size_t>(spec.instances);
  std::vector<Energy> energies(rows * instances);
  std::vector<double> seconds(rows * instances);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < instances; k = next++) {
      const auto model = generate_instance(spec, static_cast<int>(k));
      for (std::size_t r = 0; r < rows; ++r) {
        SolverConfig config;
        config.interval_length = interval_lengths[r];
        const auto result = run(model, config);
        energies[r * instances + k] = result.energy;
        seconds[r * instances + k] =
            result.log.records.empty() ? 0.0 : result.log.records.back().seconds;
      }
    }
  };
  const int threads = std::clamp(jobs, 1, spec.instances);
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<SweepRow> out;
  for (std::size_t r = 0; r < rows; ++r) {
    SweepRow row;
    row.interval_length = interval_lengths[r];
    row.truncation = spec.truncation;
    row.max_pairs = spec.max_pairs;
    row.weight = spec.weight;
    row.instances = spec.instances;
    row.seed0 = spec.seed;
    double energy_sum = 0;
    double seconds_sum = 0;
    for (std::size_t k = 0; k < instances; ++k) {
      row.energies.push_back(energies[r * instances + k]);
      energy_sum += static_cast<double>(energies[r * instances + k]);
      seconds_sum += seconds[r * instances + k];
    }
    row.mean_energy = energy_sum / static_cast<double>(instances);
    row.mean_seconds = seconds_sum / static_cast<double>(instances);
    out.push_back(std::move(row));
  }
  return out;
}

Model random_tiny_model(std::uint64_t seed, const TinyFamily& family) {
  std::mt19937_64 rng(seed);
  const auto pick = [&rng](Energy lo, Energy hi) {
    return lo + static_cast<Energy>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const int n = static_cast<int>(pick(family.min_vars, family.max_vars));
  const int h = static_cast<int>(pick(family.min_labels, family.max_labels));
  const Energy truncation = family.truncations[static_cast<std::size_t>(
      pick(0, static_cast<Energy>(family.truncations.size()) - 1))];
  const int max_pairs = static_cast<int>(pick(1, family.max_pairs));

  std::vector<std::vector<Energy>> unary(n, std::vector<Energy>(h));
  for (auto& row : unary) {
    for (auto& v : row) v = pick(0, family.max_unary);
  }
  std::vector<Clique> cliques;
  const int count = n >= 2 ? static_cast<int>(pick(1, family.max_cliques)) : 0;
  for (int k = 0; k < count; ++k) {
    const int size = static_cast<int>(
        pick(2, std::min(family.max_clique_size, n)));
    std::vector<int> vars(n);
    for (int a = 0; a < n; ++a) vars[a] = a;
    // Partial Fisher-Yates with the same generator keeps draws portable.
    for (int i = 0; i < size; ++i) {
      std::swap(vars[i], vars[static_cast<std::size_t>(pick(i, n - 1))]);
    }
    vars.resize(size);
    cliques.push_back({std::move(vars), pick(0, family.max_weight)});
  }
  return Model(h, std::move(unary), std::move(cliques),
               DistanceSpec{family.kind, {}, truncation, max_pairs});
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     const std::vector<std::string>& comments, bool timing) {
  for (const auto& line : comments) out << "# " << line << '\n';
  out << "h_prime,M,m,omega,mean_energy,mean_seconds,instances,seed0\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const auto& r : rows) {
    out << r.interval_length << ',' << r.truncation << ',' << r.max_pairs << ','
        << r.weight << ',' << std::fixed << std::setprecision(3)
        << r.mean_energy << ',' << std::setprecision(6)
        << (timing ? r.mean_seconds : 0.0) << ','
        << r.instances << ',' << r.seed0 << '\n';
    out.flags(flags);
  }
  out.precision(precision);
}

}  // namespace tmcm
