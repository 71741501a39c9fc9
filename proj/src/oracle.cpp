#include "tmcm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>

namespace tmcm {

namespace {

Energy ref_distance(const DistanceSpec& dist, int y) {
  const Energy a = y < 0 ? -static_cast<Energy>(y) : y;
  if (dist.kind == DistanceKind::linear) return a;
  if (dist.kind == DistanceKind::quadratic) return a * a;
  return dist.table.at(static_cast<std::size_t>(a));
}

Energy ref_truncated(const DistanceSpec& dist, int y) {
  const Energy d = ref_distance(dist, y);
  return d < dist.truncation ? d : dist.truncation;
}

int ref_pairs(const DistanceSpec& dist, std::size_t size) {
  int m = dist.max_pairs;
  while (m > 0 && static_cast<std::size_t>(2 * m) > size) --m;
  return m;
}

// Removes and returns the index (into keys) of the smallest remaining key;
// ties go to the earliest position.
template <typename Key>
std::size_t take_min(std::vector<Key>& keys, std::vector<bool>& used) {
  std::size_t best = keys.size();
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!used[k] && (best == keys.size() || keys[k] < keys[best])) best = k;
  }
  used[best] = true;
  return best;
}

// Ties go to the latest position, mirroring take_min.
template <typename Key>
std::size_t take_max(std::vector<Key>& keys, std::vector<bool>& used) {
  std::size_t best = keys.size();
  for (std::size_t k = keys.size(); k-- > 0;) {
    if (!used[k] && (best == keys.size() || keys[best] < keys[k])) best = k;
  }
  used[best] = true;
  return best;
}

}  // namespace

Energy reference_clique_energy(const Model& model, std::span<const Label> x) {
  const auto& dist = model.dist();
  Energy total = 0;
  for (const auto& clique : model.cliques()) {
    std::vector<Label> labels;
    for (int a : clique.members) labels.push_back(x[a]);
    std::vector<bool> used(labels.size(), false);
    Energy sum = 0;
    for (int k = ref_pairs(dist, labels.size()); k > 0; --k) {
      const Label lo = labels[take_min(labels, used)];
      const Label hi = labels[take_max(labels, used)];
      sum += ref_truncated(dist, hi - lo);
    }
    total += clique.weight * sum;
  }
  return total;
}

Energy reference_energy(const Model& model, std::span<const Label> x) {
  Energy total = 0;
  for (int a = 0; a < model.num_vars(); ++a) {
    total += model.unary_row(a)[static_cast<std::size_t>(x[a] - 1)];
  }
  return total + reference_clique_energy(model, x);
}

Energy reference_overestimate(const IntervalProblem& problem,
                              std::span<const int> y) {
  const auto& model = problem.model();
  const auto& dist = model.dist();
  const auto& cur = problem.current();
  const int f = problem.first();

  Energy total = 0;
  for (int a = 0; a < model.num_vars(); ++a) {
    const Label label = y[a] == 0 ? cur[a] : f + y[a] - 1;
    total += model.unary_row(a)[static_cast<std::size_t>(label - 1)];
  }

  // Pair i (1-based) joins the i-th largest member with the i-th smallest.
  // With u members moved and z retained: for i <= u the larger side is the
  // i-th largest move label; it meets a retained member when i <= z and the
  // (i - z)-th smallest move label otherwise. For i > u both sides are
  // retained; those pairs take the k-th outermost gap (k = i - u) of the
  // retained labels once the u most central ones are set aside.
  for (const auto& clique : model.cliques()) {
    std::vector<int> moves;
    std::vector<Label> kept;
    for (int a : clique.members) {
      if (y[a] == 0) {
        kept.push_back(cur[a]);
      } else {
        moves.push_back(y[a]);
      }
    }
    std::sort(moves.begin(), moves.end());
    std::sort(kept.begin(), kept.end());
    const int u = static_cast<int>(moves.size());
    const int z = static_cast<int>(kept.size());
    std::vector<Label> outer;
    if (u < z) {
      const int keep = z - u;
      const int lo_count = (keep + 1) / 2;
      for (int k = 0; k < lo_count; ++k) outer.push_back(kept[k]);
      for (int k = lo_count + u; k < z; ++k) outer.push_back(kept[k]);
    }
    Energy sum = 0;
    for (int i = 1; i <= ref_pairs(dist, clique.members.size()); ++i) {
      if (i <= u) {
        const int hi = moves[u - i];
        sum += i <= z ? dist.truncation + ref_distance(dist, hi - 1)
                      : ref_distance(dist, hi - moves[i - z - 1]);
      } else {
        const int k = i - u;
        const int size = static_cast<int>(outer.size());
        sum += ref_truncated(dist, outer[size - k] - outer[k - 1]);
      }
    }
    total += clique.weight * sum;
  }
  return total;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, int exponent,
                            std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && total > budget / base) {
      throw BudgetExceeded("enumeration of " + std::to_string(base) + "^" +
                           std::to_string(exponent) +
                           " labelings exceeds the budget of " +
                           std::to_string(budget));
    }
    total *= base;
  }
  if (total > budget) {
    throw BudgetExceeded("enumeration exceeds the budget of " +
                         std::to_string(budget));
  }
  return total;
}

// Enumerates all vectors over [lo, hi]^n with entry 0 fixed to `head`, in
// lexicographic order, keeping the first minimum of `eval`.
template <typename Eval>
std::pair<std::vector<int>, Energy> enumerate_block(int n, int lo, int hi,
                                                    int head, Eval eval) {
  std::vector<int> v(n, lo);
  v[0] = head;
  std::vector<int> best = v;
  Energy best_energy = std::numeric_limits<Energy>::max();
  while (true) {
    const Energy e = eval(v);
    if (e < best_energy) {
      best_energy = e;
      best = v;
    }
    int k = n - 1;
    while (k > 0 && v[k] == hi) {
      v[k] = lo;
      --k;
    }
    if (k == 0) break;
    ++v[k];
  }
  return {best, best_energy};
}

template <typename Eval>
std::pair<std::vector<int>, Energy> enumerate_all(int n, int lo, int hi,
                                                  std::uint64_t total,
                                                  Eval eval) {
  if (n == 0) {
    std::vector<int> empty;
    return {empty, eval(empty)};
  }
  const bool parallel = total >= 200'000;
  std::vector<std::future<std::pair<std::vector<int>, Energy>>> blocks;
  std::vector<std::pair<std::vector<int>, Energy>> results;
  for (int head = lo; head <= hi; ++head) {
    if (parallel) {
      blocks.push_back(std::async(std::launch::async, [=] {
        return enumerate_block(n, lo, hi, head, eval);
      }));
    } else {
      results.push_back(enumerate_block(n, lo, hi, head, eval));
    }
  }
  for (auto& b : blocks) results.push_back(b.get());
  // Blocks are in lexicographic order, so the first strict minimum wins.
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].second < results[best].second) best = k;
  }
  return results[best];
}

}  // namespace

BruteForceResult brute_force_min(const Model& model, std::uint64_t budget) {
  const int n = model.num_vars();
  const auto total =
      checked_power(static_cast<std::uint64_t>(model.num_labels()), n, budget);
  auto [x, e] = enumerate_all(
      n, 1, model.num_labels(), total,
      [&model](const std::vector<int>& v) { return reference_energy(model, v); });
  return {std::move(x), e};
}

MoveOptimum brute_force_min_overestimate(const IntervalProblem& problem,
                                         std::uint64_t budget) {
  const int n = problem.model().num_vars();
  const auto total =
      checked_power(static_cast<std::uint64_t>(problem.width() + 1), n, budget);
  auto [y, e] = enumerate_all(n, 0, problem.width(), total,
                              [&problem](const std::vector<int>& v) {
                                return reference_overestimate(problem, v);
                              });
  return {std::move(y), e};
}

BruteForceResult reference_alpha_expansion(const Model& model, Labeling start,
                                           std::uint64_t budget) {
  const int n = model.num_vars();
  checked_power(2, n, budget);
  const std::uint64_t patterns = std::uint64_t{1} << n;
  Labeling x = std::move(start);
  Energy current = reference_energy(model, x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Label alpha = 1; alpha <= model.num_labels(); ++alpha) {
      Labeling best = x;
      Energy best_energy = current;
      int best_switches = 0;
      Labeling trial(n);
      for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        int switches = 0;
        for (int a = 0; a < n; ++a) {
          const bool take = (mask >> a) & 1U;
          trial[a] = take ? alpha : x[a];
          switches += trial[a] != x[a] ? 1 : 0;
        }
        const Energy e = reference_energy(model, trial);
        if (e < best_energy || (e == best_energy && switches < best_switches)) {
          best = trial;
          best_energy = e;
          best_switches = switches;
        }
      }
      if (best_energy < current) {
        x = best;
        current = best_energy;
        changed = true;
      }
    }
  }
  return {x, current};
}

double bound_factor(const Model& model) {
  const auto& dist = model.dist();
  const double c =
      static_cast<double>(std::max<std::size_t>(model.max_clique_size(), 2));
  int pairs = 1;
  for (const auto& clique : model.cliques()) {
    pairs = std::max(pairs, model.pairs_for(clique));
  }
  switch (dist.kind) {
    case DistanceKind::linear: {
      const double base = (c + 2.0 + std::sqrt(c * c + 4.0)) / 2.0;
      return pairs > 1 ? pairs * base : base;
    }
    case DistanceKind::quadratic:
      return c * std::sqrt(static_cast<double>(dist.truncation));
    case DistanceKind::table:
      break;
  }
  throw UnsupportedDistance("no multiplicative bound for tabulated distances");
}

BoundReport audit_bound(const Model& model, std::span<const Label> result,
                        int interval_length, std::string instance,
                        std::uint64_t budget) {
  BoundReport report;
  report.instance = std::move(instance);
  report.factor = bound_factor(model);
  report.interval_length = interval_length;
  report.advisory = model.dist().kind == DistanceKind::quadratic;
  report.final_energy = reference_energy(model, result);
  const auto optimum = brute_force_min(model, budget);
  report.optimal_clique = reference_clique_energy(model, optimum.labeling);
  report.optimal_unary = optimum.energy - report.optimal_clique;
  const double rhs = static_cast<double>(report.optimal_unary) +
                     report.factor * static_cast<double>(report.optimal_clique);
  report.satisfied = static_cast<double>(report.final_energy) <= rhs;
  return report;
}

void write_bound_csv(std::ostream& out, std::span<const BoundReport> reports,
                     const std::vector<std::string>& comments) {
  for (const auto& line : comments) out << "# " << line << '\n';
  out << "instance,energy,optimal_unary,optimal_clique,factor,interval_length,"
         "satisfied,advisory\n";
  const auto precision = out.precision();
  for (const auto& r : reports) {
    out << r.instance << ',' << r.final_energy << ',' << r.optimal_unary << ','
        << r.optimal_clique << ',' << std::setprecision(12) << r.factor << ','
        << r.interval_length << ',' << (r.satisfied ? 1 : 0) << ','
        << (r.advisory ? 1 : 0) << '\n';
  }
  out.precision(precision);
}

}  // namespace tmcm
