#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmcm/expansion_graph.hpp"

namespace tmcm {

enum class InitPolicy { constant_one, provided, unary_argmin };

struct SolverConfig {
  int interval_length = 0;  // h'; 0 selects default_interval_length()
  InitPolicy init = InitPolicy::constant_one;
  Labeling initial;  // used with InitPolicy::provided
  std::optional<int> max_sweeps;
  std::uint64_t seed = 0;  // recorded in logs only
};

struct Interval {
  int i_m = 0;
  Label first = 1;
  Label last = 1;
};

struct MoveRecord {
  int sweep = 0;
  int i_m = 0;
  Label first = 0;
  Label last = 0;
  double cut_value = 0;  // descaled
  bool accepted = false;
  Energy energy = 0;  // after the move
  double seconds = 0;  // since the start of the run
};

struct RunLog {
  int interval_length = 0;
  std::vector<MoveRecord> records;

  /// `sweep,i_m,f,l,cut_value,accepted,energy,seconds` preceded by the given
  /// comment lines, each prefixed with '#'.
  void write_csv(std::ostream& out,
                 const std::vector<std::string>& comments = {}) const;
};

struct MoveResult {
  MoveLabeling y;
  Capacity cut = 0;    // scaled min-cut value
  Capacity scale = 1;  // divide `cut` by this for the real value
  Energy kappa = 0;    // sum of per-clique constants

  double cut_value() const {
    return static_cast<double>(cut) / static_cast<double>(scale);
  }
};

/// Intervals [max(i_m, 1), min(i_m + h' - 1, h)] for i_m = -h'+2 .. h.
std::vector<Interval> interval_sweep_order(int num_labels, int width);

/// Linear d: max(round(((2 - c + sqrt(c^2 + 4)) / c) M), M) with c the
/// largest clique size; quadratic d: round(sqrt(M)); table d: M.
/// Clamped to [1, h].
int default_interval_length(const Model& model);

/// Solves one range move exactly on the overestimate by st-mincut.
MoveResult expand(const IntervalProblem& problem);

Labeling initial_labeling(const Model& model, const SolverConfig& config);

struct RunResult {
  Labeling labeling;
  Energy energy = 0;
  Energy initial_energy = 0;
  int sweeps = 0;
  bool converged = false;
  RunLog log;
};

/// Range expansion: sweep all intervals, accept a move only if it strictly
/// lowers E, repeat until a full sweep changes nothing (or max_sweeps).
RunResult run(const Model& model, const SolverConfig& config = {});

}  // namespace tmcm
