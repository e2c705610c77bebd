#include "dicosat/satisfiability.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "dicosat/rng.hpp"

namespace dicosat {

CotreeLabel label_of(Rule r) {
  switch (r) {
    case Rule::Union: return CotreeLabel::Union;
    case Rule::Join: return CotreeLabel::Join;
    case Rule::DirectedJoin: return CotreeLabel::DirectedJoin;
  }
  return CotreeLabel::Union;
}

RuleOrder RuleOrder::fixed(std::array<Rule, 3> seq) {
  RuleOrder o;
  o.sequence = seq;
  return o;
}

RuleOrder RuleOrder::randomized(std::uint64_t seed) {
  RuleOrder o;
  o.random = true;
  o.seed = seed;
  return o;
}

std::optional<RuleOrder> RuleOrder::parse(std::string_view text) {
  if (text.rfind("rand:", 0) == 0) {
    std::uint64_t seed = 0;
    std::string_view digits = text.substr(5);
    if (digits.empty()) return std::nullopt;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      seed = seed * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return randomized(seed);
  }
  if (text.size() != 3) return std::nullopt;
  std::array<Rule, 3> seq{};
  bool seen[3] = {false, false, false};
  for (std::size_t i = 0; i < 3; ++i) {
    char c = text[i];
    if (c < '1' || c > '3') return std::nullopt;
    int r = c - '1';
    if (seen[r]) return std::nullopt;
    seen[r] = true;
    seq[i] = static_cast<Rule>(r);
  }
  return fixed(seq);
}

std::string RuleOrder::label() const {
  if (random) return "rand";
  std::string s;
  for (Rule r : sequence) s += static_cast<char>('1' + static_cast<int>(r));
  return s;
}

namespace {

struct ArcLists {
  std::vector<Arc> r0, r1, rx, f0, f1, fx;
};

constexpr std::array<std::vector<Arc> ArcLists::*, 6> kAllLists = {
    &ArcLists::r0, &ArcLists::r1, &ArcLists::rx,
    &ArcLists::f0, &ArcLists::f1, &ArcLists::fx};

struct WorkItem {
  std::vector<VertexIdx> verts;  // global ordinals, ascending
  ArcLists rel;                  // arcs with both endpoints in verts
  std::int32_t parent = -1;      // cotree node to attach to, -1 for the root
  std::uint32_t slot = 0;
};

void append_local(std::vector<Arc>& out, const std::vector<Arc>& arcs,
                  const std::vector<std::uint32_t>& local, bool reversed = false) {
  for (const Arc& a : arcs) {
    if (reversed) {
      out.emplace_back(local[a.second], local[a.first]);
    } else {
      out.emplace_back(local[a.first], local[a.second]);
    }
  }
}

DiGraph make_rule_graph(Rule rule, const ArcLists& rel, std::uint32_t k,
                        const std::vector<std::uint32_t>& local) {
  std::vector<Arc> arcs;
  switch (rule) {
    case Rule::Union:
      arcs.reserve(rel.r1.size() + rel.rx.size() + rel.f0.size());
      append_local(arcs, rel.r1, local);
      append_local(arcs, rel.rx, local);
      append_local(arcs, rel.f0, local);
      break;
    case Rule::Join:
      arcs.reserve(rel.r0.size() + rel.rx.size() + rel.f1.size());
      append_local(arcs, rel.r0, local);
      append_local(arcs, rel.rx, local);
      append_local(arcs, rel.f1, local);
      break;
    case Rule::DirectedJoin:
      arcs.reserve(rel.r0.size() + rel.r1.size() + rel.rx.size() + rel.fx.size());
      append_local(arcs, rel.r0, local);
      append_local(arcs, rel.r1, local);
      append_local(arcs, rel.rx, local);
      append_local(arcs, rel.fx, local, /*reversed=*/true);
      break;
  }
  return DiGraph(k, std::move(arcs));
}

struct Split {
  Rule rule;
  Partition part;                         // over local indices
  std::vector<std::uint32_t> child_order; // block ids, left to right
};

std::optional<Split> try_rule(Rule rule, const ArcLists& rel, std::uint32_t k,
                              const std::vector<std::uint32_t>& local) {
  DiGraph g = make_rule_graph(rule, rel, k, local);
  Partition part = rule == Rule::DirectedJoin ? strongly_connected_components(g)
                                              : connected_components(g);
  if (part.block_count() < 2) return std::nullopt;
  std::vector<std::uint32_t> order;
  if (rule == Rule::DirectedJoin) {
    TopoResult topo = topological_order(quotient(g, part));
    assert(topo.ok());  // the condensation is a DAG
    order = std::move(topo.order);
  } else {
    order.resize(part.block_count());
    std::iota(order.begin(), order.end(), 0);
  }
  return Split{rule, std::move(part), std::move(order)};
}

ArcLists root_lists(const Instance& inst) {
  return {inst.relations.paralogs.arcs(), inst.relations.orthologs.arcs(),
          inst.relations.xenologs.arcs(), inst.forbidden.paralogs.arcs(),
          inst.forbidden.orthologs.arcs(), inst.forbidden.xenologs.arcs()};
}

}  // namespace

RuleGraphs rule_graphs(const Instance& inst, std::span<const VertexIdx> w) {
  RuleGraphs out;
  out.vertices.assign(w.begin(), w.end());
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());

  const std::uint32_t k = static_cast<std::uint32_t>(out.vertices.size());
  std::vector<std::uint32_t> local(inst.vertex_count(), 0);
  std::vector<bool> keep(inst.vertex_count(), false);
  for (std::uint32_t i = 0; i < k; ++i) {
    local[out.vertices[i]] = i;
    keep[out.vertices[i]] = true;
  }
  ArcLists rel;
  const std::array<const RelationSet*, 6> sets = {
      &inst.relations.paralogs, &inst.relations.orthologs, &inst.relations.xenologs,
      &inst.forbidden.paralogs, &inst.forbidden.orthologs, &inst.forbidden.xenologs};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<Arc>& dst = rel.*kAllLists[i];
    for (const Arc& a : sets[i]->arcs()) {
      if (keep[a.first] && keep[a.second]) dst.push_back(a);
    }
  }
  out.union_graph = make_rule_graph(Rule::Union, rel, k, local);
  out.join_graph = make_rule_graph(Rule::Join, rel, k, local);
  out.directed_join_graph = make_rule_graph(Rule::DirectedJoin, rel, k, local);
  return out;
}

SatOutcome build_cotree(const Instance& inst, const RuleOrder& order) {
  const std::uint32_t n = static_cast<std::uint32_t>(inst.vertex_count());
  CotreeBuilder builder;
  SplitMix64 rng(order.seed);
  std::vector<std::uint32_t> local(n, 0);

  std::vector<WorkItem> stack;
  {
    WorkItem root;
    root.verts.resize(n);
    std::iota(root.verts.begin(), root.verts.end(), 0);
    root.rel = root_lists(inst);
    stack.push_back(std::move(root));
  }

  std::int32_t root_id = -1;
  auto attach = [&](const WorkItem& it, std::int32_t id) {
    if (it.parent < 0) {
      root_id = id;
    } else {
      builder.set_child(it.parent, it.slot, id);
    }
  };

  while (!stack.empty()) {
    WorkItem it = std::move(stack.back());
    stack.pop_back();
    const std::uint32_t k = static_cast<std::uint32_t>(it.verts.size());

    if (k == 1) {
      attach(it, builder.add_leaf(inst.vertices.name(it.verts[0])));
      continue;
    }
    for (std::uint32_t i = 0; i < k; ++i) local[it.verts[i]] = i;

    std::optional<Split> split;
    if (!order.random) {
      for (Rule r : order.sequence) {
        split = try_rule(r, it.rel, k, local);
        if (split) break;
      }
    } else {
      std::vector<Split> open;
      for (Rule r : {Rule::Union, Rule::Join, Rule::DirectedJoin}) {
        if (auto s = try_rule(r, it.rel, k, local)) open.push_back(std::move(*s));
      }
      if (!open.empty()) split = std::move(open[rng.below(open.size())]);
    }
    if (!split) return UnsatWitness{std::move(it.verts)};

    const std::size_t kb = split->part.block_count();
    std::int32_t node = builder.add_inner(label_of(split->rule), kb);
    attach(it, node);

    std::vector<WorkItem> kids(kb);
    for (std::size_t b = 0; b < kb; ++b) {
      kids[b].verts.reserve(split->part.blocks[b].size());
      for (std::uint32_t m : split->part.blocks[b]) kids[b].verts.push_back(it.verts[m]);
    }
    // Cross-block arcs vanish (induced sub-relations); same-block arcs are
    // bucketed into their component.
    for (auto member : kAllLists) {
      for (const Arc& a : it.rel.*member) {
        std::uint32_t bx = split->part.block_of[local[a.first]];
        std::uint32_t by = split->part.block_of[local[a.second]];
        if (bx == by) (kids[bx].rel.*member).push_back(a);
      }
    }
    for (std::size_t s = 0; s < kb; ++s) {
      std::uint32_t b = split->child_order[s];
      kids[b].parent = node;
      kids[b].slot = static_cast<std::uint32_t>(s);
    }
    for (auto kid = kids.rbegin(); kid != kids.rend(); ++kid) {
      stack.push_back(std::move(*kid));
    }
  }

  Cotree tree = builder.finish(root_id);
#ifndef NDEBUG
  assert(cotree_explains(tree, inst));
#endif
  return tree;
}

bool is_satisfiable(const Instance& inst, const RuleOrder& order) {
  if (!validate(inst).empty()) return false;
  return is_sat(build_cotree(inst, order));
}

std::optional<PartialHomologySet> extend_to_full(const Instance& inst, const RuleOrder& order) {
  if (!validate(inst).empty()) return std::nullopt;
  SatOutcome outcome = build_cotree(inst, order);
  if (!is_sat(outcome)) return std::nullopt;
  return relations_from_cotree(std::get<Cotree>(outcome), inst.vertices);
}

}  // namespace dicosat
