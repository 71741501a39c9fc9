#include "tmcm/range_expansion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace tmcm {

std::vector<Interval> interval_sweep_order(int num_labels, int width) {
  if (width < 1 || width > num_labels) {
    throw std::invalid_argument("interval length must lie in [1, h]");
  }
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(num_labels + width - 1));
  for (int i_m = 2 - width; i_m <= num_labels; ++i_m) {
    out.push_back({i_m, std::max(i_m, 1), std::min(i_m + width - 1, num_labels)});
  }
  return out;
}

int default_interval_length(const Model& model) {
  const auto& dist = model.dist();
  const double m = static_cast<double>(dist.truncation);
  double length = m;
  switch (dist.kind) {
    case DistanceKind::linear: {
      const double c = static_cast<double>(std::max<std::size_t>(
          model.max_clique_size(), 2));
      const double optimum = (2.0 - c + std::sqrt(c * c + 4.0)) / c * m;
      length = std::max(std::round(optimum), m);
      break;
    }
    case DistanceKind::quadratic:
      length = std::round(std::sqrt(m));
      break;
    case DistanceKind::table:
      break;
  }
  const double h = static_cast<double>(model.num_labels());
  return static_cast<int>(std::clamp(length, 1.0, h));
}

MoveResult expand(const IntervalProblem& problem) {
  const auto graph = build_expansion_graph(problem);
  const auto cut = min_cut(graph.network);
  MoveResult result;
  result.y = labeling_from_cut(graph.layout, cut);
  result.cut = cut.value;
  result.scale = graph.layout.scale;
  result.kappa = graph.layout.kappa_total;
  return result;
}

Labeling initial_labeling(const Model& model, const SolverConfig& config) {
  switch (config.init) {
    case InitPolicy::constant_one:
      return Labeling(model.num_vars(), 1);
    case InitPolicy::provided:
      model.check_labeling(config.initial);
      return config.initial;
    case InitPolicy::unary_argmin: {
      Labeling x(model.num_vars());
      for (int a = 0; a < model.num_vars(); ++a) {
        const auto row = model.unary_row(a);
        x[a] = static_cast<Label>(
                   std::min_element(row.begin(), row.end()) - row.begin()) +
               1;
      }
      return x;
    }
  }
  return {};
}

RunResult run(const Model& model, const SolverConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const int width = config.interval_length > 0
                        ? config.interval_length
                        : default_interval_length(model);
  const auto intervals = interval_sweep_order(model.num_labels(), width);

  RunResult result;
  result.log.interval_length = width;
  result.labeling = initial_labeling(model, config);
  result.energy = energy(model, result.labeling);
  result.initial_energy = result.energy;

  while (!config.max_sweeps || result.sweeps < *config.max_sweeps) {
    ++result.sweeps;
    bool changed = false;
    for (const auto& interval : intervals) {
      const IntervalProblem problem(model, result.labeling, interval.first,
                                    interval.last);
      const auto move = expand(problem);
      auto proposal = map_to_full(problem, move.y);
      const Energy proposed = energy(model, proposal);
      const bool accepted = proposed < result.energy;
      if (accepted) {
        result.labeling = std::move(proposal);
        result.energy = proposed;
        changed = true;
      }
      const std::chrono::duration<double> elapsed = clock::now() - start;
      result.log.records.push_back({result.sweeps, interval.i_m,
                                    interval.first, interval.last,
                                    move.cut_value(), accepted, result.energy,
                                    elapsed.count()});
    }
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  return result;
}

void RunLog::write_csv(std::ostream& out,
                       const std::vector<std::string>& comments) const {
  for (const auto& line : comments) {
    out << "# " << line << '\n';
  }
  out << "sweep,i_m,f,l,cut_value,accepted,energy,seconds\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const auto& r : records) {
    out << r.sweep << ',' << r.i_m << ',' << r.first << ',' << r.last << ','
        << std::setprecision(17) << r.cut_value << ','
        << (r.accepted ? 1 : 0) << ',' << r.energy << ','
        << std::fixed << std::setprecision(6) << r.seconds << '\n';
    out.flags(flags);
  }
  out.precision(precision);
}

}  // namespace tmcm
