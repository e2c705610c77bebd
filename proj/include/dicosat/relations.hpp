#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dicosat {

using VertexIdx = std::uint32_t;
using Arc = std::pair<VertexIdx, VertexIdx>;

enum class Mode : std::uint8_t { Symmetric, Antisymmetric };

// A finite set of ordered vertex pairs with a declared symmetry mode.
// Arcs are kept sorted and duplicate-free; symmetric sets store both
// directions of each pair. Construction normalizes the arc list but does
// not enforce the mode invariants -- validate() reports breakages so that
// defective inputs can be diagnosed instead of silently rejected.
class RelationSet {
 public:
  RelationSet() = default;
  explicit RelationSet(Mode mode) : mode_(mode) {}
  RelationSet(Mode mode, std::vector<Arc> arcs);

  Mode mode() const { return mode_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool contains(VertexIdx x, VertexIdx y) const;

  bool operator==(const RelationSet&) const = default;

 private:
  Mode mode_ = Mode::Symmetric;
  std::vector<Arc> arcs_;
};

// R u { (x,y) | (y,x) in R }; result is symmetric.
RelationSet symmetric_closure(const RelationSet& r);

// { (x,y) | (y,x) in R }; mode preserved.
RelationSet reverse_relation(const RelationSet& r);

// Sorted-vector arc helpers shared across modules.
std::vector<Arc> reversed_arcs(const std::vector<Arc>& arcs);
std::vector<Arc> intersect_arcs(const std::vector<Arc>& a, const std::vector<Arc>& b);
std::size_t symmetric_difference_size(const std::vector<Arc>& a, const std::vector<Arc>& b);

// The three estimated homology relations. Pairs whose last common ancestor
// in the explaining tree is a duplication land in `paralogs` (label 0), a
// speciation in `orthologs` (label 1), and a transfer in `xenologs`
// (label X, directed: the arc (x,y) places x left of y).
struct PartialHomologySet {
  RelationSet paralogs{Mode::Symmetric};
  RelationSet orthologs{Mode::Symmetric};
  RelationSet xenologs{Mode::Antisymmetric};

  bool operator==(const PartialHomologySet&) const = default;
};

// Exclusions, one per relation kind. The three components may overlap each
// other; each one only has to stay disjoint from its homology counterpart.
struct ForbiddenSet {
  RelationSet paralogs{Mode::Symmetric};
  RelationSet orthologs{Mode::Symmetric};
  RelationSet xenologs{Mode::Antisymmetric};

  bool operator==(const ForbiddenSet&) const = default;
};

// Vertex names interned to dense ordinals in declaration order. The ordinal
// order is the deterministic tie-break used everywhere downstream.
class VertexTable {
 public:
  VertexIdx intern(std::string_view name);  // idempotent; throws on bad name
  std::optional<VertexIdx> find(std::string_view name) const;
  const std::string& name(VertexIdx v) const { return names_[v]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIdx> index_;
};

// token rules: nonempty, no whitespace and none of '#' '(' ')' ',' ';'
bool valid_vertex_name(std::string_view name);

struct Instance {
  Instance(VertexTable verts, PartialHomologySet h, ForbiddenSet f);

  std::size_t vertex_count() const { return vertices.size(); }

  VertexTable vertices;
  PartialHomologySet relations;
  ForbiddenSet forbidden;
};

enum class ViolationKind : std::uint8_t {
  ReflexivePair,
  SymmetryBroken,
  AntisymmetryBroken,
  OverlapBetweenRelations,
  RelationMeetsForbidden,
  UnknownVertex,
};

struct Violation {
  ViolationKind kind;
  Arc arc;
  std::string detail;
};

std::string_view to_string(ViolationKind kind);

// Checks every type invariant plus the guard that each relation avoids its
// forbidden counterpart. Returns all violations found; empty means ok.
std::vector<Violation> validate(const Instance& inst);

// true iff paralogs u orthologs u sym(xenologs) covers every ordered pair
// of distinct vertices.
bool is_full(const Instance& inst);
bool is_full(const PartialHomologySet& h, std::size_t n);

// Sub-relations induced by a vertex subset; ordinals are preserved.
RelationSet induced(const RelationSet& r, const std::vector<bool>& keep);
PartialHomologySet induced(const PartialHomologySet& h, const std::vector<bool>& keep);
ForbiddenSet induced(const ForbiddenSet& f, const std::vector<bool>& keep);

std::vector<bool> subset_mask(std::size_t n, std::span<const VertexIdx> w);

// Standalone sub-instance on w: vertices renumbered 0..|w|-1 in w order.
Instance induced_instance(const Instance& inst, std::span<const VertexIdx> w);

}  // namespace dicosat
