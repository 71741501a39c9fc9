#include "tmcm/distance.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace tmcm {

DistanceSpec DistanceSpec::linear(Energy truncation, int max_pairs) {
  return {DistanceKind::linear, {}, truncation, max_pairs};
}

DistanceSpec DistanceSpec::quadratic(Energy truncation, int max_pairs) {
  return {DistanceKind::quadratic, {}, truncation, max_pairs};
}

DistanceSpec DistanceSpec::tabulated(std::vector<Energy> values,
                                     Energy truncation, int max_pairs) {
  return {DistanceKind::table, std::move(values), truncation, max_pairs};
}

Energy DistanceSpec::operator()(int y) const {
  const Energy a = std::abs(static_cast<Energy>(y));
  switch (kind) {
    case DistanceKind::linear:
      return a;
    case DistanceKind::quadratic:
      return a * a;
    case DistanceKind::table:
      if (a >= static_cast<Energy>(table.size())) {
        throw std::out_of_range("distance table queried at " +
                                std::to_string(y) + " beyond its " +
                                std::to_string(table.size()) + " entries");
      }
      return table[static_cast<std::size_t>(a)];
  }
  return 0;
}

Energy DistanceSpec::truncated(int y) const {
  return std::min((*this)(y), truncation);
}

Energy DistanceSpec::second_difference(int y) const {
  return (*this)(y + 1) + (*this)(y - 1) - 2 * (*this)(y);
}

int DistanceSpec::pairs_for(std::size_t clique_size) const {
  return std::min(max_pairs, static_cast<int>(clique_size / 2));
}

void validate_distance(const DistanceSpec& spec) {
  if (spec.truncation < 0) {
    throw std::invalid_argument("truncation M must be non-negative");
  }
  if (spec.max_pairs < 0) {
    throw std::invalid_argument("max pair count m must be non-negative");
  }
  if (spec.kind != DistanceKind::table) {
    return;
  }
  const auto& d = spec.table;
  if (d.empty()) {
    throw std::invalid_argument("distance table is empty");
  }
  if (d[0] != 0) {
    throw std::invalid_argument("distance table must have d(0) = 0");
  }
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (d[y] < 0) {
      throw std::invalid_argument("distance table entry " + std::to_string(y) +
                                  " is negative");
    }
  }
  // At y = 0 the symmetric extension gives 2 d(1) >= 0, so start at 1.
  for (std::size_t y = 1; y + 1 < d.size(); ++y) {
    const Energy second = d[y + 1] - 2 * d[y] + d[y - 1];
    if (second < 0) {
      const int index = static_cast<int>(y);
      throw ConvexityViolation(
          index, "distance table is not convex at y = " + std::to_string(y) +
                     " (second difference " + std::to_string(second) + ")");
    }
  }
}

std::string to_string(const DistanceSpec& spec) {
  switch (spec.kind) {
    case DistanceKind::linear:
      return "linear";
    case DistanceKind::quadratic:
      return "quadratic";
    case DistanceKind::table: {
      std::ostringstream out;
      out << "table:";
      for (std::size_t i = 0; i < spec.table.size(); ++i) {
        out << (i ? "," : "") << spec.table[i];
      }
      return out.str();
    }
  }
  return {};
}

DistanceSpec parse_distance(std::string_view text, Energy truncation,
                            int max_pairs) {
  if (text == "linear") {
    return DistanceSpec::linear(truncation, max_pairs);
  }
  if (text == "quadratic") {
    return DistanceSpec::quadratic(truncation, max_pairs);
  }
  constexpr std::string_view prefix = "table:";
  if (!text.starts_with(prefix)) {
    throw std::invalid_argument("unknown distance '" + std::string(text) + "'");
  }
  text.remove_prefix(prefix.size());
  std::vector<Energy> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    Energy value = 0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
      throw std::invalid_argument("bad distance table entry '" +
                                  std::string(token) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return DistanceSpec::tabulated(std::move(values), truncation, max_pairs);
}

}  // namespace tmcm
