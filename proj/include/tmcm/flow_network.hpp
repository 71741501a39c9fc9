#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace tmcm {

using NodeId = int;
using Capacity = std::int64_t;

/// Raised when finite capacities cannot be summed into an INF sentinel.
class CapacityOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

enum class Side : std::uint8_t { source, sink };

struct Arc {
  NodeId tail;
  NodeId head;
  Capacity capacity;  // ignored when infinite
  bool infinite;
};

/// Directed network with non-negative integer capacities. Node 0 is the
/// source and node 1 the sink. Infinite arcs are resolved at solve time to
/// (sum of finite capacities) + 1, which no finite cut can reach.
class FlowNetwork {
 public:
  static constexpr NodeId source = 0;
  static constexpr NodeId sink = 1;

  FlowNetwork() = default;

  /// Appends `count` nodes and returns the id of the first.
  NodeId add_nodes(int count = 1);
  int num_nodes() const noexcept { return num_nodes_; }

  /// Returns the arc index.
  std::size_t add_arc(NodeId tail, NodeId head, Capacity capacity);
  std::size_t add_infinite_arc(NodeId tail, NodeId head);

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  /// Capacity used for infinite arcs; throws CapacityOverflow.
  Capacity infinity() const;

  /// Resolved capacity of an arc.
  Capacity capacity(const Arc& arc) const {
    return arc.infinite ? infinity() : arc.capacity;
  }

  /// Sum of capacities of arcs leaving the source side for the sink side.
  Capacity cut_capacity(std::span<const Side> sides) const;

  /// One `ARC tail head cap` line per arc, preceded by `NODES n`. Infinite
  /// arcs are written with their resolved capacity.
  void dump(std::ostream& out) const;
  static FlowNetwork parse_dump(std::istream& in);

 private:
  int num_nodes_ = 2;
  std::vector<Arc> arcs_;
  Capacity finite_total_ = 0;
  bool overflow_ = false;
};

struct CutResult {
  Capacity value = 0;
  std::vector<Side> side;  // per node
};

/// Exact minimum s-t cut. The source side is the set of nodes reachable from
/// the source in the final residual network, so the result is deterministic
/// and its source side is the smallest among all minimum cuts.
CutResult min_cut(const FlowNetwork& network);

}  // namespace tmcm
