#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tmcm/flow_network.hpp"
#include "tmcm/overestimate.hpp"

namespace tmcm {

/// A clique potential evaluated above its truncation ceiling, which would
/// give the truncation gadget a negative capacity.
class CapacityNegative : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A cut that does not cross exactly one chain arc of some variable.
class MalformedCut : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Contiguous block of arcs touching one auxiliary pair (U, W), plus the
/// chain and terminal nodes they connect to.
struct Gadget {
  NodeId u = -1;
  NodeId w = -1;
  std::size_t first_arc = 0;
  std::size_t end_arc = 0;
};

/// Convex-gadget term for threshold pair (i, j); r is scaled.
struct ConvexPair {
  int i = 0;
  int j = 0;
  Capacity r = 0;
  Gadget gadget;
};

struct CliqueLayout {
  int pairs = 0;  // m_c
  std::vector<ConvexPair> convex;
  std::optional<Gadget> truncation;
  Capacity a = 0;  // scaled A = w M
  Capacity b = 0;  // scaled B = w M - theta_c(current) / m_c
  Energy kappa = 0;
};

/// Node ids and constants of an expansion graph. Capacities in the network
/// are the real ones multiplied by `scale`.
struct GraphLayout {
  int num_vars = 0;
  int width = 0;  // h'
  Capacity scale = 2;
  std::vector<std::size_t> chain_first_arc;  // per variable, h' + 1 finite arcs
  std::vector<std::size_t> chain_end_arc;
  std::vector<CliqueLayout> cliques;
  Energy kappa_total = 0;

  /// V^a_i for i in [1, h']
  NodeId chain_node(int var, int i) const {
    return 2 + var * width + (i - 1);
  }
};

struct ExpansionGraph {
  FlowNetwork network;
  GraphLayout layout;
};

/// 2 * lcm of the per-clique pair counts: keeps r_ii = w dbar / 2 and
/// B = w M - theta / m_c integral.
Capacity capacity_scale(const Model& model);

/// Network with the n * h' chain nodes allocated and no arcs.
ExpansionGraph allocate_chains(const IntervalProblem& problem);

/// s -> V_1 (theta(current)), V_i -> V_{i+1} (theta(f + i - 1)),
/// V_h' -> t (theta(l)), plus infinite reverse arcs V_{i+1} -> V_i.
void build_unary_chain(const IntervalProblem& problem, int var,
                       ExpansionGraph& graph);

/// For 2 <= i <= j <= h' with r_ij > 0: U -> V_i^a and V_j^a -> W with
/// capacity r_ij per member, W -> U with capacity m_c r_ij.
std::vector<ConvexPair> build_convex_gadget(const IntervalProblem& problem,
                                            const Clique& clique,
                                            ExpansionGraph& graph);

/// s -> U (m_c A), U -> V_1^a (A), V_1^a -> W (B), W -> t (m_c B).
/// Returns nothing for cliques with m_c = 0.
std::optional<Gadget> build_truncation_gadget(const IntervalProblem& problem,
                                              const Clique& clique,
                                              CliqueLayout& out,
                                              ExpansionGraph& graph);

/// Full graph for the move problem.
ExpansionGraph build_expansion_graph(const IntervalProblem& problem);

/// Move labeling read off the chain arcs cut by `cut`.
MoveLabeling labeling_from_cut(const GraphLayout& layout, const CutResult& cut);

/// Sides of the source, sink and chain nodes implied by y; auxiliaries are
/// left on the sink side.
std::vector<Side> chain_sides(const ExpansionGraph& graph,
                              std::span<const int> y);

/// Smallest capacity the gadget's arcs can contribute given the sides of the
/// non-auxiliary nodes, over the four placements of (U, W).
Capacity gadget_min_contribution(const FlowNetwork& network,
                                 const Gadget& gadget,
                                 std::span<const Side> sides);

/// Cheapest cut consistent with y (scaled), with its side assignment.
CutResult canonical_cut(const ExpansionGraph& graph, std::span<const int> y);

/// canonical_cut(graph, y).value
Capacity canonical_cut_cost(const ExpansionGraph& graph,
                            std::span<const int> y);

}  // namespace tmcm
