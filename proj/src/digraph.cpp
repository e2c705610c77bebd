#include "dicosat/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace dicosat {

DiGraph::DiGraph(std::uint32_t n, std::vector<Arc> arcs) : n_(n) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  for (const Arc& a : arcs) {
    if (a.first >= n || a.second >= n) throw std::invalid_argument("arc endpoint out of range");
    if (a.first == a.second) throw std::invalid_argument("self-loop not allowed");
  }
  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const Arc& a : arcs) {
    ++out_off_[a.first + 1];
    ++in_off_[a.second + 1];
  }
  std::partial_sum(out_off_.begin(), out_off_.end(), out_off_.begin());
  std::partial_sum(in_off_.begin(), in_off_.end(), in_off_.begin());
  out_tgt_.resize(arcs.size());
  in_src_.resize(arcs.size());
  std::vector<std::uint32_t> pos(in_off_.begin(), in_off_.end() - 1);
  std::size_t k = 0;
  for (const Arc& a : arcs) {
    out_tgt_[k++] = a.second;           // arcs sorted by (src,dst): out lists sorted
    in_src_[pos[a.second]++] = a.first; // sources per target arrive in ascending order
  }
}

std::span<const VertexIdx> DiGraph::successors(VertexIdx v) const {
  return {out_tgt_.data() + out_off_[v], out_tgt_.data() + out_off_[v + 1]};
}

std::span<const VertexIdx> DiGraph::predecessors(VertexIdx v) const {
  return {in_src_.data() + in_off_[v], in_src_.data() + in_off_[v + 1]};
}

bool DiGraph::has_arc(VertexIdx x, VertexIdx y) const {
  auto s = successors(x);
  return std::binary_search(s.begin(), s.end(), y);
}

std::vector<Arc> DiGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (VertexIdx v = 0; v < n_; ++v) {
    for (VertexIdx w : successors(v)) out.emplace_back(v, w);
  }
  return out;
}

namespace {

Partition partition_from_labels(std::uint32_t n, const std::vector<std::uint32_t>& raw) {
  // Renumber block labels by smallest member, then bucket vertices in
  // ascending order so members come out sorted.
  std::uint32_t max_label = 0;
  for (std::uint32_t l : raw) max_label = std::max(max_label, l);
  std::vector<std::uint32_t> renum(max_label + 1, UINT32_MAX);
  std::uint32_t next = 0;
  for (VertexIdx v = 0; v < n; ++v) {
    if (renum[raw[v]] == UINT32_MAX) renum[raw[v]] = next++;
  }
  Partition p;
  p.block_of.resize(n);
  p.blocks.resize(next);
  for (VertexIdx v = 0; v < n; ++v) {
    p.block_of[v] = renum[raw[v]];
    p.blocks[p.block_of[v]].push_back(v);
  }
  return p;
}

}  // namespace

Partition connected_components(const DiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<VertexIdx> stack;
  std::uint32_t next = 0;
  for (VertexIdx root = 0; root < n; ++root) {
    if (label[root] != UINT32_MAX) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      VertexIdx v = stack.back();
      stack.pop_back();
      for (VertexIdx w : g.successors(v)) {
        if (label[w] == UINT32_MAX) { label[w] = next; stack.push_back(w); }
      }
      for (VertexIdx w : g.predecessors(v)) {
        if (label[w] == UINT32_MAX) { label[w] = next; stack.push_back(w); }
      }
    }
    ++next;
  }
  return partition_from_labels(n, label);
}

Partition strongly_connected_components(const DiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexIdx> scc_stack;
  std::uint32_t counter = 0, comp_count = 0;

  struct Frame {
    VertexIdx v;
    std::size_t next_child;
  };
  std::vector<Frame> frames;

  for (VertexIdx root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& fr = frames.back();
      VertexIdx v = fr.v;
      if (fr.next_child == 0) {
        index[v] = low[v] = counter++;
        scc_stack.push_back(v);
        on_stack[v] = true;
      }
      auto succ = g.successors(v);
      bool descended = false;
      while (fr.next_child < succ.size()) {
        VertexIdx w = succ[fr.next_child++];
        if (index[w] == kUnset) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        VertexIdx w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != v);
        ++comp_count;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }
  return partition_from_labels(n, comp);
}

DiGraph quotient(const DiGraph& g, const Partition& p) {
  std::vector<Arc> arcs;
  for (VertexIdx v = 0; v < g.vertex_count(); ++v) {
    std::uint32_t bv = p.block_of[v];
    for (VertexIdx w : g.successors(v)) {
      std::uint32_t bw = p.block_of[w];
      if (bv != bw) arcs.emplace_back(bv, bw);
    }
  }
  return DiGraph(static_cast<std::uint32_t>(p.block_count()), std::move(arcs));
}

namespace {

// Every vertex left over by Kahn still has a predecessor among the
// leftovers, so walking predecessors must eventually close a cycle.
std::vector<VertexIdx> find_cycle(const DiGraph& g, const std::vector<std::uint32_t>& in_deg) {
  const std::uint32_t n = g.vertex_count();
  std::vector<bool> alive(n, false);
  VertexIdx start = UINT32_MAX;
  for (VertexIdx v = 0; v < n; ++v) {
    if (in_deg[v] > 0) {
      alive[v] = true;
      if (start == UINT32_MAX) start = v;
    }
  }
  std::vector<std::uint32_t> seen_at(n, UINT32_MAX);
  std::vector<VertexIdx> path;
  VertexIdx v = start;
  while (seen_at[v] == UINT32_MAX) {
    seen_at[v] = static_cast<std::uint32_t>(path.size());
    path.push_back(v);
    for (VertexIdx w : g.predecessors(v)) {
      if (alive[w]) { v = w; break; }
    }
  }
  std::vector<VertexIdx> cycle(path.begin() + seen_at[v], path.end());
  std::reverse(cycle.begin(), cycle.end());  // forward arc order
  return cycle;
}

}  // namespace

TopoResult topological_order(const DiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::uint32_t> in_deg(n, 0);
  for (VertexIdx v = 0; v < n; ++v) in_deg[v] = static_cast<std::uint32_t>(g.predecessors(v).size());

  std::priority_queue<VertexIdx, std::vector<VertexIdx>, std::greater<>> ready;
  for (VertexIdx v = 0; v < n; ++v) {
    if (in_deg[v] == 0) ready.push(v);
  }
  TopoResult res;
  res.order.reserve(n);
  while (!ready.empty()) {
    VertexIdx v = ready.top();
    ready.pop();
    res.order.push_back(v);
    for (VertexIdx w : g.successors(v)) {
      if (--in_deg[w] == 0) ready.push(w);
    }
  }
  if (res.order.size() != n) {
    res.cycle = find_cycle(g, in_deg);
    res.order.clear();
  }
  return res;
}

DiGraph complement(const DiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<Arc> arcs;
  if (n > 1) arcs.reserve(static_cast<std::size_t>(n) * (n - 1) - g.arc_count());
  for (VertexIdx v = 0; v < n; ++v) {
    auto succ = g.successors(v);
    std::size_t i = 0;
    for (VertexIdx w = 0; w < n; ++w) {
      if (i < succ.size() && succ[i] == w) { ++i; continue; }
      if (w != v) arcs.emplace_back(v, w);
    }
  }
  return DiGraph(n, std::move(arcs));
}

}  // namespace dicosat
