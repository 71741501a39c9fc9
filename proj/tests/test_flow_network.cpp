#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "tmcm/flow_network.hpp"

using namespace tmcm;

namespace {

// Cheapest s-t cut over every assignment of the inner nodes.
Capacity enumerate_min_cut(const FlowNetwork& net) {
  const int inner = net.num_nodes() - 2;
  std::vector<Side> sides(net.num_nodes(), Side::sink);
  sides[FlowNetwork::source] = Side::source;
  Capacity best = std::numeric_limits<Capacity>::max();
  for (std::uint32_t mask = 0; mask < (1U << inner); ++mask) {
    for (int v = 0; v < inner; ++v) {
      sides[2 + v] = (mask >> v) & 1U ? Side::source : Side::sink;
    }
    best = std::min(best, net.cut_capacity(sides));
  }
  return best;
}

FlowNetwork random_network(std::mt19937_64& rng, int inner, int arcs) {
  FlowNetwork net;
  net.add_nodes(inner);
  const int n = net.num_nodes();
  for (int k = 0; k < arcs; ++k) {
    const NodeId tail = static_cast<NodeId>(rng() % n);
    NodeId head = static_cast<NodeId>(rng() % n);
    if (head == tail) head = (head + 1) % n;
    if (rng() % 8 == 0) {
      net.add_infinite_arc(tail, head);
    } else {
      net.add_arc(tail, head, static_cast<Capacity>(rng() % 20));
    }
  }
  return net;
}

}  // namespace

TEST_SUITE("flow_network") {

TEST_CASE("single arc") {
  FlowNetwork net;
  net.add_arc(FlowNetwork::source, FlowNetwork::sink, 5);
  const auto cut = min_cut(net);
  CHECK(cut.value == 5);
  CHECK(cut.side[FlowNetwork::sink] == Side::sink);
}

TEST_CASE("diamond") {
  FlowNetwork net;
  const NodeId a = net.add_nodes(2);
  const NodeId b = a + 1;
  net.add_arc(FlowNetwork::source, a, 3);
  net.add_arc(FlowNetwork::source, b, 2);
  net.add_arc(a, FlowNetwork::sink, 2);
  net.add_arc(b, FlowNetwork::sink, 3);
  const auto cut = min_cut(net);
  CHECK(cut.value == 4);
  CHECK(cut.value == enumerate_min_cut(net));
  CHECK(net.cut_capacity(cut.side) == cut.value);

  net.add_arc(a, b, 1);
  CHECK(min_cut(net).value == 5);
}

TEST_CASE("source side is the minimal minimum cut") {
  // Both {s} and {s, a} are minimum cuts; the reachable set is {s}.
  FlowNetwork net;
  const NodeId a = net.add_nodes(1);
  net.add_arc(FlowNetwork::source, a, 4);
  net.add_arc(a, FlowNetwork::sink, 4);
  const auto cut = min_cut(net);
  CHECK(cut.value == 4);
  CHECK(cut.side[a] == Side::sink);
}

TEST_CASE("infinite arcs are never cut") {
  FlowNetwork net;
  const NodeId a = net.add_nodes(2);
  const NodeId b = a + 1;
  net.add_arc(FlowNetwork::source, a, 7);
  net.add_infinite_arc(a, b);
  net.add_arc(b, FlowNetwork::sink, 9);
  net.add_arc(FlowNetwork::source, b, 1);
  CHECK(net.infinity() == 18);
  CHECK(min_cut(net).value == 8);
}

TEST_CASE("matches exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int inner = 1 + static_cast<int>(rng() % 10);
    const auto net = random_network(rng, inner, 2 + static_cast<int>(rng() % 40));
    const auto cut = min_cut(net);
    REQUIRE(cut.value == enumerate_min_cut(net));
    REQUIRE(net.cut_capacity(cut.side) == cut.value);
  }
}

TEST_CASE("deterministic") {
  std::mt19937_64 rng(5);
  const auto net = random_network(rng, 12, 60);
  const auto first = min_cut(net);
  for (int k = 0; k < 3; ++k) {
    const auto again = min_cut(net);
    CHECK(again.value == first.value);
    CHECK(again.side == first.side);
  }
}

TEST_CASE("capacity overflow is reported") {
  FlowNetwork net;
  const NodeId a = net.add_nodes(1);
  net.add_arc(FlowNetwork::source, a, std::numeric_limits<Capacity>::max());
  net.add_arc(a, FlowNetwork::sink, 1);
  CHECK_THROWS_AS(net.infinity(), CapacityOverflow);
  CHECK_THROWS_AS(min_cut(net), CapacityOverflow);
}

TEST_CASE("bad arcs are rejected") {
  FlowNetwork net;
  CHECK_THROWS_AS(net.add_arc(0, 2, 1), std::out_of_range);
  CHECK_THROWS_AS(net.add_arc(0, 1, -1), std::invalid_argument);
}

TEST_CASE("dump round trip") {
  std::mt19937_64 rng(9);
  FlowNetwork net;
  net.add_nodes(5);
  for (int k = 0; k < 20; ++k) {
    net.add_arc(static_cast<NodeId>(rng() % 7), static_cast<NodeId>(rng() % 7),
                static_cast<Capacity>(rng() % 30));
  }
  std::stringstream text;
  net.dump(text);
  const auto back = FlowNetwork::parse_dump(text);
  CHECK(back.num_nodes() == net.num_nodes());
  CHECK(back.arcs().size() == net.arcs().size());
  CHECK(min_cut(back).value == min_cut(net).value);

  std::istringstream bad("NODES 3\nARC 0 x 1\n");
  CHECK_THROWS_AS(FlowNetwork::parse_dump(bad), std::invalid_argument);
}

}
