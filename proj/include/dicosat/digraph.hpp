#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dicosat/relations.hpp"

namespace dicosat {

// Immutable digraph over dense ordinals 0..n-1 with CSR adjacency in both
// directions. No self-loops. Construction is O(n + m log m), complement is
// O(n^2); both bounds are part of the contract the engine's overall
// O(n^2 + nm) running time rests on.
class DiGraph {
 public:
  DiGraph() = default;
  DiGraph(std::uint32_t n, std::vector<Arc> arcs);  // throws on loops / bad endpoints

  std::uint32_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return out_tgt_.size(); }
  std::span<const VertexIdx> successors(VertexIdx v) const;
  std::span<const VertexIdx> predecessors(VertexIdx v) const;
  bool has_arc(VertexIdx x, VertexIdx y) const;
  std::vector<Arc> arcs() const;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> out_off_, in_off_;
  std::vector<VertexIdx> out_tgt_, in_src_;
};

// Disjoint nonempty blocks covering 0..n-1. Members are sorted ascending and
// blocks are ordered by their smallest member, which keeps every downstream
// decomposition deterministic.
struct Partition {
  std::vector<std::vector<VertexIdx>> blocks;
  std::vector<std::uint32_t> block_of;

  std::size_t block_count() const { return blocks.size(); }
};

// Weakly connected components (arcs treated as undirected).
Partition connected_components(const DiGraph& g);

// Tarjan, iterative; blocks reordered by smallest member.
Partition strongly_connected_components(const DiGraph& g);

// One vertex per block; arc (Bi,Bj), i != j, iff some cross arc exists.
DiGraph quotient(const DiGraph& g, const Partition& p);

struct TopoResult {
  std::vector<VertexIdx> order;  // valid iff cycle is empty
  std::vector<VertexIdx> cycle;  // one witness cycle when the graph is cyclic

  bool ok() const { return cycle.empty(); }
};

// Kahn with a min-priority queue: among valid orders, repeatedly emits the
// smallest-ordinal vertex of in-degree zero.
TopoResult topological_order(const DiGraph& g);

DiGraph complement(const DiGraph& g);

}  // namespace dicosat
