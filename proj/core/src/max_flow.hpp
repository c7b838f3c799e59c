#pragma once

#include <cstddef>
#include <vector>

#include "flexgraph/rational.hpp"

namespace flexgraph::detail {

// Edmonds-Karp over exact rationals. Graphs here have at most a few hundred
// arcs, so shortest augmenting paths are plenty.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  int add_arc(int from, int to, const Rational& capacity);
  Rational solve(int source, int sink);
  const Rational& flow(int arc) const { return arcs_[static_cast<std::size_t>(2 * arc)].flow; }

 private:
  struct Arc {
    int to;
    Rational capacity;
    Rational flow;
  };
  Rational residual(std::size_t a) const { return arcs_[a].capacity - arcs_[a].flow; }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace flexgraph::detail
