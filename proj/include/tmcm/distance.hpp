#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmcm {

/// Energies are exact non-negative integers; fractional weights must be
/// pre-scaled by the caller.
using Energy = std::int64_t;

/// Labels are 1-based, in [1, h].
using Label = int;

enum class DistanceKind { linear, quadratic, table };

/// Thrown when a tabulated distance fails d(y+1) - 2d(y) + d(y-1) >= 0.
class ConvexityViolation : public std::invalid_argument {
 public:
  ConvexityViolation(int index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}

  /// First y at which the second difference is negative.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A convex distance d together with the truncation M and the pair count m
/// of the max-of-convex clique potential.
struct DistanceSpec {
  DistanceKind kind = DistanceKind::linear;
  std::vector<Energy> table;  // d(0..h-1), only for DistanceKind::table
  Energy truncation = 0;      // M
  int max_pairs = 1;          // m

  static DistanceSpec linear(Energy truncation, int max_pairs = 1);
  static DistanceSpec quadratic(Energy truncation, int max_pairs = 1);
  static DistanceSpec tabulated(std::vector<Energy> values, Energy truncation,
                                int max_pairs = 1);

  /// d(y), evaluated symmetrically. Table lookups past the table throw
  /// std::out_of_range.
  Energy operator()(int y) const;

  /// min{d(y), M}
  Energy truncated(int y) const;

  /// d(y+1) + d(y-1) - 2 d(y)
  Energy second_difference(int y) const;

  /// m_c = min(m, floor(c / 2)) for a clique of the given size.
  int pairs_for(std::size_t clique_size) const;

  bool operator==(const DistanceSpec&) const = default;
};

/// Accepts iff d(0) = 0, d >= 0 and d is discretely convex on its domain.
/// Throws ConvexityViolation (convexity) or std::invalid_argument (other).
void validate_distance(const DistanceSpec& spec);

/// "linear", "quadratic" or "table:v0,v1,...".
std::string to_string(const DistanceSpec& spec);

/// Parses the textual form produced by to_string(); M and m are supplied
/// separately.
DistanceSpec parse_distance(std::string_view text, Energy truncation,
                            int max_pairs);

}  // namespace tmcm
