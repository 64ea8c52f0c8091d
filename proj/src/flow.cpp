#include "parkalloc/flow.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace parkalloc {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Paired-edge residual graph: edge e and e^1 are mutual reverses.
struct Residual {
  struct Edge {
    int to;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;

  explicit Residual(int nodes) : adj(nodes) {}

  int add(int u, int v, std::int64_t cap, std::int64_t cost) {
    int id = static_cast<int>(edges.size());
    adj[u].push_back(id);
    edges.push_back({v, cap, cost});
    adj[v].push_back(id + 1);
    edges.push_back({u, 0, -cost});
    return id;
  }
};

}  // namespace

FlowSolution solve_min_cost_flow(int node_count, const std::vector<Arc>& arcs,
                                 const std::vector<std::int64_t>& supply) {
  auto started = std::chrono::steady_clock::now();

  if (static_cast<int>(supply.size()) != node_count) {
    throw Error("supply vector size does not match node count");
  }
  std::int64_t balance = 0;
  for (auto s : supply) balance += s;
  if (balance != 0) throw Error("node supplies must sum to zero");
  for (const auto& a : arcs) {
    if (a.tail < 0 || a.tail >= node_count || a.head < 0 ||
        a.head >= node_count) {
      throw Error("arc endpoint out of range");
    }
    if (a.cost < 0) throw Error("arc costs must be non-negative");
    if (a.lower < 0 || a.lower > a.capacity) {
      throw Error("arc bounds must satisfy 0 <= lower <= capacity");
    }
  }

  // Fold lower bounds into node imbalances: the mandatory units are treated
  // as already flowing, shrinking the arc to its free capacity.
  std::vector<std::int64_t> excess = supply;
  for (const auto& a : arcs) {
    excess[a.tail] -= a.lower;
    excess[a.head] += a.lower;
  }

  const int super_source = node_count;
  const int super_sink = node_count + 1;
  Residual graph(node_count + 2);

  std::vector<int> arc_edge(arcs.size());
  for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
    const auto& a = arcs[idx];
    arc_edge[idx] = graph.add(a.tail, a.head, a.capacity - a.lower, a.cost);
  }
  std::int64_t required = 0;
  for (int v = 0; v < node_count; ++v) {
    if (excess[v] > 0) {
      graph.add(super_source, v, excess[v], 0);
      required += excess[v];
    } else if (excess[v] < 0) {
      graph.add(v, super_sink, -excess[v], 0);
    }
  }

  const int total_nodes = node_count + 2;
  std::vector<std::int64_t> potential(total_nodes, 0);
  std::vector<std::int64_t> dist(total_nodes);
  std::vector<int> prev_edge(total_nodes);
  std::int64_t pushed = 0;
  int augmentations = 0;

  while (pushed < required) {
    // Dijkstra over reduced costs from the super source.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev_edge.begin(), prev_edge.end(), -1);
    dist[super_source] = 0;
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0, super_source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (int e : graph.adj[u]) {
        const auto& edge = graph.edges[e];
        if (edge.cap <= 0) continue;
        std::int64_t nd = d + edge.cost + potential[u] - potential[edge.to];
        if (nd < dist[edge.to]) {
          dist[edge.to] = nd;
          prev_edge[edge.to] = e;
          heap.emplace(nd, edge.to);
        }
      }
    }
    if (dist[super_sink] >= kInf) break;  // no augmenting path left

    // Capping the shift at dist(sink) keeps unreached nodes consistent.
    for (int v = 0; v < total_nodes; ++v) {
      potential[v] += std::min(dist[v], dist[super_sink]);
    }

    std::int64_t step = required - pushed;
    for (int v = super_sink; v != super_source;) {
      const auto& edge = graph.edges[prev_edge[v]];
      step = std::min(step, edge.cap);
      v = graph.edges[prev_edge[v] ^ 1].to;
    }
    for (int v = super_sink; v != super_source;) {
      graph.edges[prev_edge[v]].cap -= step;
      graph.edges[prev_edge[v] ^ 1].cap += step;
      v = graph.edges[prev_edge[v] ^ 1].to;
    }
    pushed += step;
    ++augmentations;
  }

  if (pushed < required) {
    throw InfeasibleError(
        "no feasible flow: " + std::to_string(required - pushed) +
        " mandatory unit(s) cannot be routed");
  }

  FlowSolution solution;
  solution.flow.resize(arcs.size());
  solution.total_cost = 0;
  for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
    // Free flow on the shrunk arc equals the reverse edge's residual.
    std::int64_t free_flow = graph.edges[arc_edge[idx] ^ 1].cap;
    solution.flow[idx] = arcs[idx].lower + free_flow;
    solution.total_cost += solution.flow[idx] * arcs[idx].cost;
  }
  solution.potential.assign(potential.begin(),
                            potential.begin() + node_count);
  solution.augmentations = augmentations;
  solution.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return solution;
}

std::vector<std::string> certificate_violations(
    int node_count, const std::vector<Arc>& arcs,
    const std::vector<std::int64_t>& supply, const FlowSolution& solution) {
  std::vector<std::string> out;
  if (solution.flow.size() != arcs.size()) {
    out.push_back("flow vector does not match arc count");
    return out;
  }
  if (static_cast<int>(solution.potential.size()) != node_count) {
    out.push_back("potential vector does not match node count");
    return out;
  }

  std::vector<std::int64_t> net(node_count, 0);
  for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
    const auto& a = arcs[idx];
    std::int64_t f = solution.flow[idx];
    if (f < a.lower || f > a.capacity) {
      out.push_back("arc " + std::to_string(idx) + " flow " +
                    std::to_string(f) + " outside bounds [" +
                    std::to_string(a.lower) + ", " +
                    std::to_string(a.capacity) + "]");
    }
    net[a.tail] += f;
    net[a.head] -= f;

    std::int64_t rc =
        a.cost + solution.potential[a.tail] - solution.potential[a.head];
    if (f < a.capacity && rc < 0) {
      out.push_back("arc " + std::to_string(idx) +
                    " has free capacity but negative reduced cost " +
                    std::to_string(rc));
    }
    if (f > a.lower && rc > 0) {
      out.push_back("arc " + std::to_string(idx) +
                    " flows above its lower bound with positive reduced cost " +
                    std::to_string(rc));
    }
  }
  for (int v = 0; v < node_count; ++v) {
    if (net[v] != supply[v]) {
      out.push_back("node " + std::to_string(v) + " balance " +
                    std::to_string(net[v]) + " differs from supply " +
                    std::to_string(supply[v]));
    }
  }

  std::int64_t cost = 0;
  for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
    cost += solution.flow[idx] * arcs[idx].cost;
  }
  if (cost != solution.total_cost) {
    out.push_back("stated cost " + std::to_string(solution.total_cost) +
                  " differs from recomputed " + std::to_string(cost));
  }
  return out;
}

}  // namespace parkalloc
