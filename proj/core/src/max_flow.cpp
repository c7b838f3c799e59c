#include "max_flow.hpp"

#include <deque>
#include <limits>

namespace flexgraph::detail {

MaxFlow::MaxFlow(int num_nodes) : out_(static_cast<std::size_t>(num_nodes)) {}

int MaxFlow::add_arc(int from, int to, const Rational& capacity) {
  const auto id = arcs_.size();
  arcs_.push_back({to, capacity, 0});
  arcs_.push_back({from, 0, 0});
  out_[static_cast<std::size_t>(from)].push_back(id);
  out_[static_cast<std::size_t>(to)].push_back(id + 1);
  return static_cast<int>(id / 2);
}

Rational MaxFlow::solve(int source, int sink) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  Rational total = 0;
  std::vector<std::size_t> via(out_.size());
  for (;;) {
    std::fill(via.begin(), via.end(), kNone);
    std::deque<int> frontier{source};
    via[static_cast<std::size_t>(source)] = kNone - 1;
    while (!frontier.empty() && via[static_cast<std::size_t>(sink)] == kNone) {
      const int u = frontier.front();
      frontier.pop_front();
      for (std::size_t a : out_[static_cast<std::size_t>(u)]) {
        const int v = arcs_[a].to;
        if (via[static_cast<std::size_t>(v)] == kNone && sgn(residual(a)) > 0) {
          via[static_cast<std::size_t>(v)] = a;
          frontier.push_back(v);
        }
      }
    }
    if (via[static_cast<std::size_t>(sink)] == kNone) return total;

    Rational bottleneck;
    bool first = true;
    for (int v = sink; v != source;) {
      const std::size_t a = via[static_cast<std::size_t>(v)];
      Rational r = residual(a);
      if (first || r < bottleneck) bottleneck = r;
      first = false;
      v = arcs_[a ^ 1U].to;
    }
    for (int v = sink; v != source;) {
      const std::size_t a = via[static_cast<std::size_t>(v)];
      arcs_[a].flow += bottleneck;
      arcs_[a ^ 1U].flow -= bottleneck;
      v = arcs_[a ^ 1U].to;
    }
    total += bottleneck;
  }
}

}  // namespace flexgraph::detail
