#include "tmcm/expansion_graph.hpp"

#include <numeric>
#include <string>

namespace tmcm {

Capacity capacity_scale(const Model& model) {
  Capacity l = 1;
  for (const auto& clique : model.cliques()) {
    const int pairs = model.pairs_for(clique);
    if (pairs > 0) {
      l = std::lcm(l, static_cast<Capacity>(pairs));
    }
  }
  return 2 * l;
}

ExpansionGraph allocate_chains(const IntervalProblem& problem) {
  const auto& model = problem.model();
  ExpansionGraph graph;
  auto& layout = graph.layout;
  layout.num_vars = model.num_vars();
  layout.width = problem.width();
  layout.scale = capacity_scale(model);
  layout.chain_first_arc.assign(layout.num_vars, 0);
  layout.chain_end_arc.assign(layout.num_vars, 0);
  graph.network.add_nodes(layout.num_vars * layout.width);
  return graph;
}

void build_unary_chain(const IntervalProblem& problem, int var,
                       ExpansionGraph& graph) {
  const auto& model = problem.model();
  auto& net = graph.network;
  auto& layout = graph.layout;
  const Capacity s = layout.scale;
  const int width = layout.width;

  layout.chain_first_arc[var] = net.arcs().size();
  net.add_arc(FlowNetwork::source, layout.chain_node(var, 1),
              s * model.unary(var, problem.current()[var]));
  for (int i = 1; i < width; ++i) {
    net.add_arc(layout.chain_node(var, i), layout.chain_node(var, i + 1),
                s * model.unary(var, problem.first() + i - 1));
  }
  net.add_arc(layout.chain_node(var, width), FlowNetwork::sink,
              s * model.unary(var, problem.last()));
  layout.chain_end_arc[var] = net.arcs().size();
  for (int i = 1; i < width; ++i) {
    net.add_infinite_arc(layout.chain_node(var, i + 1),
                         layout.chain_node(var, i));
  }
}

std::vector<ConvexPair> build_convex_gadget(const IntervalProblem& problem,
                                            const Clique& clique,
                                            ExpansionGraph& graph) {
  const auto& model = problem.model();
  const auto& dist = model.dist();
  auto& net = graph.network;
  const auto& layout = graph.layout;
  const int pairs = model.pairs_for(clique);
  std::vector<ConvexPair> out;
  if (pairs == 0) {
    return out;
  }
  const int width = layout.width;
  // Thresholds at i = 1 separate retained from moved variables; that
  // transition is priced by the truncation gadget, so rows start at 2.
  for (int i = 2; i <= width; ++i) {
    for (int j = i; j <= width; ++j) {
      const Capacity dbar = dist.second_difference(i - j);
      const Capacity r = i == j ? (layout.scale / 2) * clique.weight * dbar
                                : layout.scale * clique.weight * dbar;
      if (r == 0) {
        continue;
      }
      ConvexPair pair{i, j, r, {}};
      pair.gadget.u = net.add_nodes(1);
      pair.gadget.w = net.add_nodes(1);
      pair.gadget.first_arc = net.arcs().size();
      for (int a : clique.members) {
        net.add_arc(pair.gadget.u, layout.chain_node(a, i), r);
      }
      for (int a : clique.members) {
        net.add_arc(layout.chain_node(a, j), pair.gadget.w, r);
      }
      net.add_arc(pair.gadget.w, pair.gadget.u, pairs * r);
      pair.gadget.end_arc = net.arcs().size();
      out.push_back(pair);
    }
  }
  return out;
}

std::optional<Gadget> build_truncation_gadget(const IntervalProblem& problem,
                                              const Clique& clique,
                                              CliqueLayout& out,
                                              ExpansionGraph& graph) {
  const auto& model = problem.model();
  auto& net = graph.network;
  const auto& layout = graph.layout;
  const int pairs = model.pairs_for(clique);
  out.pairs = pairs;
  if (pairs == 0) {
    out.kappa = 0;
    return std::nullopt;
  }
  const Energy theta = clique_energy(model, clique, problem.current());
  const Energy ceiling = clique.weight * pairs * model.dist().truncation;
  if (theta > ceiling) {
    throw CapacityNegative("clique potential " + std::to_string(theta) +
                           " exceeds its truncation ceiling " +
                           std::to_string(ceiling));
  }
  const Capacity s = layout.scale;
  out.kappa = ceiling - theta;
  out.a = s * clique.weight * model.dist().truncation;
  out.b = out.a - (s / pairs) * theta;

  Gadget g;
  g.u = net.add_nodes(1);
  g.w = net.add_nodes(1);
  g.first_arc = net.arcs().size();
  net.add_arc(FlowNetwork::source, g.u, pairs * out.a);
  for (int a : clique.members) {
    net.add_arc(g.u, layout.chain_node(a, 1), out.a);
  }
  for (int a : clique.members) {
    net.add_arc(layout.chain_node(a, 1), g.w, out.b);
  }
  net.add_arc(g.w, FlowNetwork::sink, pairs * out.b);
  g.end_arc = net.arcs().size();
  return g;
}

ExpansionGraph build_expansion_graph(const IntervalProblem& problem) {
  auto graph = allocate_chains(problem);
  const auto& model = problem.model();
  for (int a = 0; a < model.num_vars(); ++a) {
    build_unary_chain(problem, a, graph);
  }
  graph.layout.cliques.reserve(model.cliques().size());
  for (const auto& clique : model.cliques()) {
    CliqueLayout cl;
    cl.convex = build_convex_gadget(problem, clique, graph);
    cl.truncation = build_truncation_gadget(problem, clique, cl, graph);
    graph.layout.kappa_total += cl.kappa;
    graph.layout.cliques.push_back(std::move(cl));
  }
  return graph;
}

MoveLabeling labeling_from_cut(const GraphLayout& layout, const CutResult& cut) {
  MoveLabeling y(layout.num_vars, 0);
  const auto on_source = [&](NodeId v) { return cut.side[v] == Side::source; };
  for (int a = 0; a < layout.num_vars; ++a) {
    int crossings = 0;
    if (!on_source(layout.chain_node(a, 1))) {
      ++crossings;
      y[a] = 0;
    }
    for (int i = 1; i < layout.width; ++i) {
      if (on_source(layout.chain_node(a, i)) &&
          !on_source(layout.chain_node(a, i + 1))) {
        ++crossings;
        y[a] = i;
      }
    }
    if (on_source(layout.chain_node(a, layout.width))) {
      ++crossings;
      y[a] = layout.width;
    }
    if (crossings != 1) {
      throw MalformedCut("variable " + std::to_string(a) + " has " +
                         std::to_string(crossings) + " chain arcs in the cut");
    }
  }
  return y;
}

std::vector<Side> chain_sides(const ExpansionGraph& graph,
                              std::span<const int> y) {
  const auto& layout = graph.layout;
  std::vector<Side> sides(graph.network.num_nodes(), Side::sink);
  sides[FlowNetwork::source] = Side::source;
  for (int a = 0; a < layout.num_vars; ++a) {
    for (int i = 1; i <= layout.width; ++i) {
      if (y[a] >= i) {
        sides[layout.chain_node(a, i)] = Side::source;
      }
    }
  }
  return sides;
}

namespace {

Capacity gadget_cost(const FlowNetwork& network, const Gadget& gadget,
                     std::span<const Side> sides, Side u_side, Side w_side) {
  const auto side_of = [&](NodeId v) {
    if (v == gadget.u) return u_side;
    if (v == gadget.w) return w_side;
    return sides[v];
  };
  Capacity total = 0;
  const auto& arcs = network.arcs();
  for (std::size_t e = gadget.first_arc; e < gadget.end_arc; ++e) {
    const auto& arc = arcs[e];
    if (side_of(arc.tail) == Side::source && side_of(arc.head) == Side::sink) {
      total += network.capacity(arc);
    }
  }
  return total;
}

struct Placement {
  Capacity cost;
  Side u;
  Side w;
};

Placement best_placement(const FlowNetwork& network, const Gadget& gadget,
                         std::span<const Side> sides) {
  Placement best{-1, Side::sink, Side::sink};
  for (Side u : {Side::sink, Side::source}) {
    for (Side w : {Side::sink, Side::source}) {
      const Capacity cost = gadget_cost(network, gadget, sides, u, w);
      if (best.cost < 0 || cost < best.cost) {
        best = {cost, u, w};
      }
    }
  }
  return best;
}

}  // namespace

Capacity gadget_min_contribution(const FlowNetwork& network,
                                 const Gadget& gadget,
                                 std::span<const Side> sides) {
  return best_placement(network, gadget, sides).cost;
}

CutResult canonical_cut(const ExpansionGraph& graph, std::span<const int> y) {
  CutResult cut;
  cut.side = chain_sides(graph, y);
  const auto& net = graph.network;
  const auto& layout = graph.layout;
  Capacity total = 0;
  for (int a = 0; a < layout.num_vars; ++a) {
    for (std::size_t e = layout.chain_first_arc[a]; e < layout.chain_end_arc[a];
         ++e) {
      const auto& arc = net.arcs()[e];
      if (cut.side[arc.tail] == Side::source &&
          cut.side[arc.head] == Side::sink) {
        total += arc.capacity;
      }
    }
  }
  const auto place = [&](const Gadget& g) {
    const auto best = best_placement(net, g, cut.side);
    total += best.cost;
    cut.side[g.u] = best.u;
    cut.side[g.w] = best.w;
  };
  for (const auto& cl : layout.cliques) {
    for (const auto& pair : cl.convex) {
      place(pair.gadget);
    }
    if (cl.truncation) {
      place(*cl.truncation);
    }
  }
  cut.value = total;
  return cut;
}

Capacity canonical_cut_cost(const ExpansionGraph& graph,
                            std::span<const int> y) {
  return canonical_cut(graph, y).value;
}

}  // namespace tmcm
