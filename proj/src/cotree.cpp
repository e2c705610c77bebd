#include "dicosat/cotree.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace dicosat {

namespace {

bool valid_label_char(char c) { return c == '0' || c == '1' || c == 'X'; }

}  // namespace

Cotree Cotree::make_leaf(std::string name) {
  Cotree t;
  Node n;
  n.leaf = std::move(name);
  t.nodes_.push_back(std::move(n));
  t.root_ = 0;
  return t;
}

Cotree Cotree::join(CotreeLabel label, const std::vector<Cotree>& subtrees) {
  Cotree t;
  Node root;
  root.label = label;
  for (const Cotree& sub : subtrees) {
    const std::int32_t offset = static_cast<std::int32_t>(t.nodes_.size());
    for (Node n : sub.nodes_) {
      for (std::int32_t& c : n.children) c += offset;
      t.nodes_.push_back(std::move(n));
    }
    root.children.push_back(sub.root_ + offset);
  }
  t.nodes_.push_back(std::move(root));
  t.root_ = static_cast<std::int32_t>(t.nodes_.size()) - 1;
  return t;
}

std::size_t Cotree::leaf_count() const {
  std::size_t k = 0;
  for (const Node& n : nodes_) {
    if (n.is_leaf()) ++k;
  }
  return k;
}

std::vector<std::string> Cotree::leaves_left_to_right() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  std::vector<std::int32_t> stack{root_};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.is_leaf()) {
      out.push_back(n.leaf);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::int32_t CotreeBuilder::add_leaf(std::string name) {
  Cotree::Node n;
  n.leaf = std::move(name);
  nodes_.push_back(std::move(n));
  return static_cast<std::int32_t>(nodes_.size()) - 1;
}

std::int32_t CotreeBuilder::add_inner(CotreeLabel label, std::size_t child_count) {
  Cotree::Node n;
  n.label = label;
  n.children.assign(child_count, -1);
  nodes_.push_back(std::move(n));
  return static_cast<std::int32_t>(nodes_.size()) - 1;
}

void CotreeBuilder::set_child(std::int32_t node, std::size_t slot, std::int32_t child) {
  nodes_[node].children[slot] = child;
}

Cotree CotreeBuilder::finish(std::int32_t root) {
  // Extraction walks the flat node vector, so every node must be reachable
  // from the root and every slot filled.
  std::size_t reachable = 0;
  std::vector<std::int32_t> stack{root};
  while (!stack.empty()) {
    std::int32_t id = stack.back();
    stack.pop_back();
    ++reachable;
    for (std::int32_t c : nodes_[id].children) {
      if (c < 0) throw std::logic_error("cotree builder: unfilled child slot");
      stack.push_back(c);
    }
  }
  if (reachable != nodes_.size()) throw std::logic_error("cotree builder: orphan nodes");
  Cotree t;
  t.nodes_ = std::move(nodes_);
  t.root_ = root;
  return t;
}

std::string serialize_cotree(const Cotree& t) {
  std::string out;
  // explicit stack; trees from long directed-join chains can be deep
  struct Item {
    std::int32_t node;
    std::size_t next_child;
  };
  std::vector<Item> stack{{t.root(), 0}};
  while (!stack.empty()) {
    Item& it = stack.back();
    const Cotree::Node& n = t.node(it.node);
    if (n.is_leaf()) {
      out += n.leaf;
      stack.pop_back();
      continue;
    }
    if (it.next_child == 0) out += '(';
    if (it.next_child == n.children.size()) {
      out += ')';
      out += static_cast<char>(n.label);
      stack.pop_back();
      continue;
    }
    if (it.next_child > 0) out += ',';
    std::int32_t child = n.children[it.next_child++];
    stack.push_back({child, 0});
  }
  out += ';';
  return out;
}

std::variant<Cotree, ParseError> parse_cotree(std::string_view text) {
  CotreeBuilder builder;
  struct Frame {
    CotreeLabel label{CotreeLabel::Union};  // patched when ')' is read
    std::vector<std::int32_t> children;
  };
  std::vector<Frame> open;
  std::unordered_set<std::string> seen_leaves;
  std::size_t i = 0;
  const std::size_t len = text.size();
  auto err = [](std::size_t pos, std::string msg) -> std::variant<Cotree, ParseError> {
    return ParseError{pos, std::move(msg)};
  };
  auto skip_ws = [&] {
    while (i < len && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  std::int32_t completed = -1;  // last fully parsed node, or -1
  bool expect_node = true;
  skip_ws();
  while (i < len) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == ';') break;
    if (c == '(') {
      if (!expect_node) return err(i, "unexpected '('");
      open.emplace_back();
      ++i;
      skip_ws();
      continue;
    }
    if (c == ',') {
      if (expect_node || open.empty()) return err(i, "unexpected ','");
      open.back().children.push_back(completed);
      completed = -1;
      expect_node = true;
      ++i;
      continue;
    }
    if (c == ')') {
      if (expect_node || open.empty()) return err(i, "unexpected ')'");
      open.back().children.push_back(completed);
      ++i;
      if (i >= len || !valid_label_char(text[i])) {
        return err(i, "expected label '0', '1' or 'X' after ')'");
      }
      Frame frame = std::move(open.back());
      open.pop_back();
      if (frame.children.size() < 2) {
        return err(i, "inner node needs at least 2 children");
      }
      std::int32_t node =
          builder.add_inner(static_cast<CotreeLabel>(text[i]), frame.children.size());
      for (std::size_t s = 0; s < frame.children.size(); ++s) {
        builder.set_child(node, s, frame.children[s]);
      }
      completed = node;
      expect_node = false;
      ++i;
      continue;
    }
    // leaf name
    if (!expect_node) return err(i, "expected ',' or ')'");
    std::size_t start = i;
    while (i < len && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
           text[i] != ')' && text[i] != ',' && text[i] != ';' && text[i] != '#') {
      ++i;
    }
    if (i == start) return err(i, "expected leaf name");
    std::string name(text.substr(start, i - start));
    if (!seen_leaves.insert(name).second) return err(start, "duplicate leaf '" + name + "'");
    completed = builder.add_leaf(std::move(name));
    expect_node = false;
  }
  if (i >= len || text[i] != ';') return err(len, "expected ';'");
  if (!open.empty()) return err(i, "unbalanced '('");
  if (expect_node || completed < 0) return err(i, "empty tree");
  ++i;
  skip_ws();
  if (i != len) return err(i, "trailing characters after ';'");
  return builder.finish(completed);
}

std::vector<std::string> structural_issues(const Cotree& t, bool require_canonical) {
  std::vector<std::string> issues;
  std::unordered_set<std::string> names;
  for (std::size_t id = 0; id < t.node_count(); ++id) {
    const Cotree::Node& n = t.node(static_cast<std::int32_t>(id));
    if (n.is_leaf()) {
      if (!valid_vertex_name(n.leaf)) issues.push_back("invalid leaf name '" + n.leaf + "'");
      if (!names.insert(n.leaf).second) issues.push_back("duplicate leaf '" + n.leaf + "'");
      continue;
    }
    if (n.children.size() < 2) issues.push_back("inner node with fewer than 2 children");
    for (std::int32_t c : n.children) {
      const Cotree::Node& child = t.node(c);
      if (require_canonical && !child.is_leaf() && child.label == n.label) {
        issues.push_back(std::string("inner child repeats parent label '") +
                         static_cast<char>(n.label) + "'");
      }
    }
  }
  return issues;
}

Cotree canonicalize(const Cotree& t) {
  // Post-order rebuild. For every original inner node we keep the flattened
  // list of rebuilt child ids; a child carrying its parent's label is
  // spliced in place (so it is never materialized), anything else becomes a
  // real node the moment its parent consumes it.
  CotreeBuilder builder;
  std::vector<std::vector<std::int32_t>> merged(t.node_count());
  std::vector<std::int32_t> leaf_id(t.node_count(), -1);
  struct Item {
    std::int32_t node;
    bool expanded;
  };
  std::vector<Item> stack{{t.root(), false}};
  auto materialize = [&builder](CotreeLabel label, const std::vector<std::int32_t>& kids) {
    std::int32_t id = builder.add_inner(label, kids.size());
    for (std::size_t s = 0; s < kids.size(); ++s) builder.set_child(id, s, kids[s]);
    return id;
  };
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Cotree::Node& n = t.node(it.node);
    if (n.is_leaf()) {
      leaf_id[it.node] = builder.add_leaf(n.leaf);
      continue;
    }
    if (!it.expanded) {
      stack.push_back({it.node, true});
      for (auto c = n.children.rbegin(); c != n.children.rend(); ++c) {
        stack.push_back({*c, false});
      }
      continue;
    }
    std::vector<std::int32_t> list;
    for (std::int32_t c : n.children) {
      const Cotree::Node& child = t.node(c);
      if (child.is_leaf()) {
        list.push_back(leaf_id[c]);
      } else if (child.label == n.label) {
        list.insert(list.end(), merged[c].begin(), merged[c].end());
      } else {
        list.push_back(materialize(child.label, merged[c]));
      }
    }
    merged[it.node] = std::move(list);
  }
  const Cotree::Node& root = t.node(t.root());
  if (root.is_leaf()) return builder.finish(leaf_id[t.root()]);
  return builder.finish(materialize(root.label, merged[t.root()]));
}

PartialHomologySet relations_from_cotree(const Cotree& t, const VertexTable& table) {
  const std::size_t n = table.size();
  // leaf order + per-node contiguous leaf ranges via one DFS
  std::vector<VertexIdx> leaf_seq;
  leaf_seq.reserve(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> range(t.node_count());
  struct Item {
    std::int32_t node;
    bool expanded;
  };
  std::vector<Item> stack{{t.root(), false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Cotree::Node& nd = t.node(it.node);
    if (nd.is_leaf()) {
      auto idx = table.find(nd.leaf);
      if (!idx) throw std::invalid_argument("leaf '" + nd.leaf + "' not in vertex table");
      range[it.node] = {static_cast<std::uint32_t>(leaf_seq.size()),
                        static_cast<std::uint32_t>(leaf_seq.size()) + 1};
      leaf_seq.push_back(*idx);
      continue;
    }
    if (!it.expanded) {
      stack.push_back({it.node, true});
      for (auto c = nd.children.rbegin(); c != nd.children.rend(); ++c) {
        stack.push_back({*c, false});
      }
      continue;
    }
    range[it.node] = {range[nd.children.front()].first, range[nd.children.back()].second};
  }
  if (leaf_seq.size() != n) {
    throw std::invalid_argument("cotree leaves do not cover the vertex table");
  }

  std::vector<Arc> r0, r1, rx;
  for (std::size_t id = 0; id < t.node_count(); ++id) {
    const Cotree::Node& nd = t.node(static_cast<std::int32_t>(id));
    if (nd.is_leaf()) continue;
    for (std::size_t a = 0; a + 1 < nd.children.size(); ++a) {
      auto [abeg, aend] = range[nd.children[a]];
      for (std::size_t b = a + 1; b < nd.children.size(); ++b) {
        auto [bbeg, bend] = range[nd.children[b]];
        for (std::uint32_t i = abeg; i < aend; ++i) {
          for (std::uint32_t j = bbeg; j < bend; ++j) {
            VertexIdx x = leaf_seq[i], y = leaf_seq[j];
            switch (nd.label) {
              case CotreeLabel::Union:
                r0.emplace_back(x, y);
                r0.emplace_back(y, x);
                break;
              case CotreeLabel::Join:
                r1.emplace_back(x, y);
                r1.emplace_back(y, x);
                break;
              case CotreeLabel::DirectedJoin:
                rx.emplace_back(x, y);
                break;
            }
          }
        }
      }
    }
  }
  return {RelationSet(Mode::Symmetric, std::move(r0)), RelationSet(Mode::Symmetric, std::move(r1)),
          RelationSet(Mode::Antisymmetric, std::move(rx))};
}

Instance relations_from_cotree(const Cotree& t) {
  VertexTable table;
  for (const std::string& name : t.leaves_left_to_right()) table.intern(name);
  PartialHomologySet h = relations_from_cotree(t, table);
  return Instance(std::move(table), std::move(h), ForbiddenSet{});
}

bool cotree_explains(const Cotree& t, const Instance& inst) {
  PartialHomologySet full = relations_from_cotree(t, inst.vertices);
  auto contains_all = [](const RelationSet& big, const RelationSet& small) {
    return std::includes(big.arcs().begin(), big.arcs().end(), small.arcs().begin(),
                         small.arcs().end());
  };
  auto disjoint = [](const RelationSet& a, const RelationSet& b) {
    return intersect_arcs(a.arcs(), b.arcs()).empty();
  };
  return contains_all(full.paralogs, inst.relations.paralogs) &&
         contains_all(full.orthologs, inst.relations.orthologs) &&
         contains_all(full.xenologs, inst.relations.xenologs) &&
         disjoint(full.paralogs, inst.forbidden.paralogs) &&
         disjoint(full.orthologs, inst.forbidden.orthologs) &&
         disjoint(full.xenologs, inst.forbidden.xenologs);
}

}  // namespace dicosat
