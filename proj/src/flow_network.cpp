#include "tmcm/flow_network.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace tmcm {

NodeId FlowNetwork::add_nodes(int count) {
  if (count < 0) {
    throw std::invalid_argument("negative node count");
  }
  const NodeId first = num_nodes_;
  num_nodes_ += count;
  return first;
}

std::size_t FlowNetwork::add_arc(NodeId tail, NodeId head, Capacity capacity) {
  if (tail < 0 || tail >= num_nodes_ || head < 0 || head >= num_nodes_) {
    throw std::out_of_range("arc endpoint out of range");
  }
  if (capacity < 0) {
    throw std::invalid_argument("negative arc capacity");
  }
  if (__builtin_add_overflow(finite_total_, capacity, &finite_total_)) {
    overflow_ = true;
  }
  arcs_.push_back({tail, head, capacity, false});
  return arcs_.size() - 1;
}

std::size_t FlowNetwork::add_infinite_arc(NodeId tail, NodeId head) {
  if (tail < 0 || tail >= num_nodes_ || head < 0 || head >= num_nodes_) {
    throw std::out_of_range("arc endpoint out of range");
  }
  arcs_.push_back({tail, head, 0, true});
  return arcs_.size() - 1;
}

Capacity FlowNetwork::infinity() const {
  if (overflow_ || finite_total_ == std::numeric_limits<Capacity>::max()) {
    throw CapacityOverflow("finite arc capacities overflow 64-bit range");
  }
  return finite_total_ + 1;
}

Capacity FlowNetwork::cut_capacity(std::span<const Side> sides) const {
  Capacity total = 0;
  for (const auto& arc : arcs_) {
    if (sides[arc.tail] == Side::source && sides[arc.head] == Side::sink) {
      if (__builtin_add_overflow(total, capacity(arc), &total)) {
        throw CapacityOverflow("cut capacity overflows");
      }
    }
  }
  return total;
}

void FlowNetwork::dump(std::ostream& out) const {
  out << "NODES " << num_nodes_ << '\n';
  for (const auto& arc : arcs_) {
    out << "ARC " << arc.tail << ' ' << arc.head << ' ' << capacity(arc)
        << '\n';
  }
}

FlowNetwork FlowNetwork::parse_dump(std::istream& in) {
  FlowNetwork net;
  std::string line;
  bool sized = false;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) {
      continue;
    }
    if (tag == "NODES") {
      int n = 0;
      if (!(fields >> n) || n < 2) {
        throw std::invalid_argument("bad NODES line: " + line);
      }
      net.add_nodes(n - 2);
      sized = true;
    } else if (tag == "ARC") {
      NodeId tail = 0;
      NodeId head = 0;
      Capacity cap = 0;
      if (!sized || !(fields >> tail >> head >> cap)) {
        throw std::invalid_argument("bad ARC line: " + line);
      }
      net.add_arc(tail, head, cap);
    } else {
      throw std::invalid_argument("unknown dump record: " + line);
    }
  }
  return net;
}

namespace {

// Dinic's blocking-flow algorithm over a CSR residual graph.
class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net) : n_(net.num_nodes()) {
    const Capacity inf = net.infinity();
    const auto& arcs = net.arcs();
    start_.assign(n_ + 1, 0);
    for (const auto& a : arcs) {
      ++start_[a.tail + 1];
      ++start_[a.head + 1];
    }
    for (int v = 0; v < n_; ++v) {
      start_[v + 1] += start_[v];
    }
    const std::size_t m = 2 * arcs.size();
    head_.resize(m);
    residual_.resize(m);
    twin_.resize(m);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& a : arcs) {
      const std::size_t fwd = fill[a.tail]++;
      const std::size_t bwd = fill[a.head]++;
      head_[fwd] = a.head;
      residual_[fwd] = a.infinite ? inf : a.capacity;
      twin_[fwd] = bwd;
      head_[bwd] = a.tail;
      residual_[bwd] = 0;
      twin_[bwd] = fwd;
    }
    level_.resize(n_);
    cursor_.resize(n_);
  }

  Capacity run(NodeId s, NodeId t) {
    Capacity flow = 0;
    while (bfs(s, t)) {
      std::copy(start_.begin(), start_.end() - 1, cursor_.begin());
      while (Capacity pushed = augment(s, t)) {
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<Side> source_side(NodeId s) const {
    std::vector<Side> side(n_, Side::sink);
    std::vector<NodeId> stack{s};
    side[s] = Side::source;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (std::size_t e = start_[v]; e < start_[v + 1]; ++e) {
        if (residual_[e] > 0 && side[head_[e]] == Side::sink) {
          side[head_[e]] = Side::source;
          stack.push_back(head_[e]);
        }
      }
    }
    return side;
  }

 private:
  bool bfs(NodeId s, NodeId t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<NodeId> queue{s};
    level_[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const NodeId v = queue[qi];
      for (std::size_t e = start_[v]; e < start_[v + 1]; ++e) {
        if (residual_[e] > 0 && level_[head_[e]] < 0) {
          level_[head_[e]] = level_[v] + 1;
          queue.push_back(head_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Finds one augmenting path in the level graph with an explicit stack and
  // pushes its bottleneck.
  Capacity augment(NodeId s, NodeId t) {
    path_.clear();
    NodeId v = s;
    while (true) {
      if (v == t) {
        Capacity bottleneck = std::numeric_limits<Capacity>::max();
        for (std::size_t e : path_) {
          bottleneck = std::min(bottleneck, residual_[e]);
        }
        for (std::size_t e : path_) {
          residual_[e] -= bottleneck;
          residual_[twin_[e]] += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (auto& e = cursor_[v]; e < start_[v + 1]; ++e) {
        const NodeId w = head_[e];
        if (residual_[e] > 0 && level_[w] == level_[v] + 1) {
          path_.push_back(e);
          v = w;
          advanced = true;
          break;
        }
      }
      if (advanced) {
        continue;
      }
      // Dead end: prune v from the level graph and retreat.
      level_[v] = -1;
      if (path_.empty()) {
        return 0;
      }
      const std::size_t back = path_.back();
      path_.pop_back();
      v = head_[twin_[back]];
      ++cursor_[v];
    }
  }

  int n_;
  std::vector<std::size_t> start_;
  std::vector<NodeId> head_;
  std::vector<Capacity> residual_;
  std::vector<std::size_t> twin_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> path_;
};

}  // namespace

CutResult min_cut(const FlowNetwork& network) {
  Dinic solver(network);
  CutResult result;
  result.value = solver.run(FlowNetwork::source, FlowNetwork::sink);
  result.side = solver.source_side(FlowNetwork::source);
  return result;
}

}  // namespace tmcm
