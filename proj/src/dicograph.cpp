#include "dicosat/dicograph.hpp"

#include <string>

namespace dicosat {

DiGraph digraph_of_relations(const PartialHomologySet& h, std::uint32_t n) {
  std::vector<Arc> arcs = h.orthologs.arcs();
  arcs.insert(arcs.end(), h.xenologs.arcs().begin(), h.xenologs.arcs().end());
  return DiGraph(n, std::move(arcs));
}

PartialHomologySet relations_of_digraph(const DiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<Arc> r0, r1, rx;
  for (VertexIdx x = 0; x < n; ++x) {
    for (VertexIdx y = x + 1; y < n; ++y) {
      bool fwd = g.has_arc(x, y);
      bool bwd = g.has_arc(y, x);
      if (fwd && bwd) {
        r1.emplace_back(x, y);
        r1.emplace_back(y, x);
      } else if (fwd) {
        rx.emplace_back(x, y);
      } else if (bwd) {
        rx.emplace_back(y, x);
      } else {
        r0.emplace_back(x, y);
        r0.emplace_back(y, x);
      }
    }
  }
  return {RelationSet(Mode::Symmetric, std::move(r0)), RelationSet(Mode::Symmetric, std::move(r1)),
          RelationSet(Mode::Antisymmetric, std::move(rx))};
}

DicographResult recognize_dicograph(const DiGraph& g, const VertexTable& names) {
  Instance inst(names, relations_of_digraph(g), ForbiddenSet{});
  SatOutcome outcome = build_cotree(inst);
  DicographResult res;
  if (is_sat(outcome)) {
    res.is_dicograph = true;
    res.cotree = std::get<Cotree>(std::move(outcome));
  } else {
    res.failing_subset = std::get<UnsatWitness>(std::move(outcome)).vertices;
  }
  return res;
}

DicographResult recognize_dicograph(const DiGraph& g) {
  VertexTable names;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) names.intern(std::to_string(v));
  return recognize_dicograph(g, names);
}

}  // namespace dicosat
