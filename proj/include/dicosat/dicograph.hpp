#pragma once

#include <optional>
#include <vector>

#include "dicosat/cotree.hpp"
#include "dicosat/digraph.hpp"
#include "dicosat/relations.hpp"
#include "dicosat/satisfiability.hpp"

namespace dicosat {

// Arc set of a full homology set: ortholog pairs contribute both
// directions, xenolog arcs one.
DiGraph digraph_of_relations(const PartialHomologySet& h, std::uint32_t n);

// Inverse on full sets: mutual arcs -> orthologs, one-way arcs ->
// xenologs, non-adjacent pairs -> paralogs.
PartialHomologySet relations_of_digraph(const DiGraph& g);

struct DicographResult {
  bool is_dicograph = false;
  std::optional<Cotree> cotree;          // canonical, on success
  std::vector<VertexIdx> failing_subset; // vertex set where no rule applied
};

// Recognition via the satisfiability engine on the graph's full relation
// set with an empty forbidden set; O(n^2 + nm), not the linear bound of
// dedicated modular-decomposition recognizers.
DicographResult recognize_dicograph(const DiGraph& g);
DicographResult recognize_dicograph(const DiGraph& g, const VertexTable& names);

inline bool is_dicograph(const DiGraph& g) { return recognize_dicograph(g).is_dicograph; }

}  // namespace dicosat
