#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dicosat/relations.hpp"

namespace dicosat {

// Inner-node labels name the graph operation the node performs on its
// children: disjoint union ('0'), join ('1') or directed join ('X', arcs
// run left to right across children).
enum class CotreeLabel : char {
  Union = '0',
  Join = '1',
  DirectedJoin = 'X',
};

// Ordered rooted tree whose leaves carry vertex names and whose inner nodes
// carry a CotreeLabel. Child order is semantically significant under
// DirectedJoin nodes. Nodes live in a flat vector; the structure is
// immutable after construction.
class Cotree {
 public:
  struct Node {
    CotreeLabel label{CotreeLabel::Union};  // meaningful for inner nodes only
    std::string leaf;                       // nonempty exactly for leaves
    std::vector<std::int32_t> children;     // ordered; empty for leaves

    bool is_leaf() const { return children.empty(); }
  };

  static Cotree make_leaf(std::string name);
  static Cotree join(CotreeLabel label, const std::vector<Cotree>& subtrees);

  std::int32_t root() const { return root_; }
  const Node& node(std::int32_t id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::vector<std::string> leaves_left_to_right() const;

 private:
  friend class CotreeBuilder;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

// Incremental construction used by the engine and the parser. Inner nodes
// may be created with unfilled child slots and wired up later.
class CotreeBuilder {
 public:
  std::int32_t add_leaf(std::string name);
  std::int32_t add_inner(CotreeLabel label, std::size_t child_count);
  void set_child(std::int32_t node, std::size_t slot, std::int32_t child);
  Cotree finish(std::int32_t root);  // throws if any slot is unfilled

 private:
  std::vector<Cotree::Node> nodes_;
};

struct ParseError {
  std::size_t position;
  std::string message;
};

// Newick-like text form: leaves are names, an inner node is the
// ','-joined children in parentheses followed by its label char, the whole
// tree ends with ';'. parse(serialize(t)) reproduces t node for node.
std::string serialize_cotree(const Cotree& t);
std::variant<Cotree, ParseError> parse_cotree(std::string_view text);

// Structural checks: >= 2 children per inner node, distinct leaf names.
// With require_canonical, additionally no inner child repeats its parent's
// label. Empty result means valid.
std::vector<std::string> structural_issues(const Cotree& t, bool require_canonical = false);

// Least-resolved form: splices any inner child carrying its parent's label
// into the parent's child list in place. Preserves left-to-right leaf order
// and the extracted relations.
Cotree canonicalize(const Cotree& t);

// The unique full set the tree explains, over the given vertex table (leaf
// names must cover it exactly). All-pairs extraction runs in O(n^2).
PartialHomologySet relations_from_cotree(const Cotree& t, const VertexTable& table);

// Convenience form over the tree's own leaves (in left-to-right order),
// with an empty forbidden set.
Instance relations_from_cotree(const Cotree& t);

// true iff every input relation is contained in the tree's corresponding
// relation and every extracted relation avoids its forbidden counterpart.
bool cotree_explains(const Cotree& t, const Instance& inst);

}  // namespace dicosat
