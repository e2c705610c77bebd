#include "dicosat/relations.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dicosat {

RelationSet::RelationSet(Mode mode, std::vector<Arc> arcs)
    : mode_(mode), arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool RelationSet::contains(VertexIdx x, VertexIdx y) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{x, y});
}

RelationSet symmetric_closure(const RelationSet& r) {
  std::vector<Arc> arcs = r.arcs();
  arcs.reserve(arcs.size() * 2);
  for (const Arc& a : r.arcs()) arcs.emplace_back(a.second, a.first);
  return RelationSet(Mode::Symmetric, std::move(arcs));
}

RelationSet reverse_relation(const RelationSet& r) {
  return RelationSet(r.mode(), reversed_arcs(r.arcs()));
}

std::vector<Arc> reversed_arcs(const std::vector<Arc>& arcs) {
  std::vector<Arc> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) out.emplace_back(a.second, a.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Arc> intersect_arcs(const std::vector<Arc>& a, const std::vector<Arc>& b) {
  std::vector<Arc> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t symmetric_difference_size(const std::vector<Arc>& a, const std::vector<Arc>& b) {
  return a.size() + b.size() - 2 * intersect_arcs(a, b).size();
}

bool valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '#' || c == '(' || c == ')' || c == ',' || c == ';') return false;
  }
  return true;
}

VertexIdx VertexTable::intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  if (!valid_vertex_name(name)) {
    throw std::invalid_argument("invalid vertex name: '" + std::string(name) + "'");
  }
  VertexIdx id = static_cast<VertexIdx>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<VertexIdx> VertexTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Instance::Instance(VertexTable verts, PartialHomologySet h, ForbiddenSet f)
    : vertices(std::move(verts)), relations(std::move(h)), forbidden(std::move(f)) {
  if (vertices.size() == 0) {
    throw std::invalid_argument("instance requires at least one vertex");
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ReflexivePair: return "ReflexivePair";
    case ViolationKind::SymmetryBroken: return "SymmetryBroken";
    case ViolationKind::AntisymmetryBroken: return "AntisymmetryBroken";
    case ViolationKind::OverlapBetweenRelations: return "OverlapBetweenRelations";
    case ViolationKind::RelationMeetsForbidden: return "RelationMeetsForbidden";
    case ViolationKind::UnknownVertex: return "UnknownVertex";
  }
  return "?";
}

namespace {

std::string arc_text(const Instance& inst, Arc a) {
  const std::size_t n = inst.vertex_count();
  std::string x = a.first < n ? inst.vertices.name(a.first) : "@" + std::to_string(a.first);
  std::string y = a.second < n ? inst.vertices.name(a.second) : "@" + std::to_string(a.second);
  return "(" + x + "," + y + ")";
}

void check_set(const Instance& inst, const RelationSet& r, std::string_view label,
               std::vector<Violation>& out) {
  const VertexIdx n = static_cast<VertexIdx>(inst.vertex_count());
  for (const Arc& a : r.arcs()) {
    if (a.first >= n || a.second >= n) {
      out.push_back({ViolationKind::UnknownVertex, a,
                     std::string(label) + " uses undeclared vertex " + arc_text(inst, a)});
      continue;
    }
    if (a.first == a.second) {
      out.push_back({ViolationKind::ReflexivePair, a,
                     std::string(label) + " contains reflexive pair " + arc_text(inst, a)});
      continue;
    }
    if (r.mode() == Mode::Symmetric && !r.contains(a.second, a.first)) {
      out.push_back({ViolationKind::SymmetryBroken, a,
                     std::string(label) + " lacks the reverse of " + arc_text(inst, a)});
    }
    if (r.mode() == Mode::Antisymmetric && a.first < a.second &&
        r.contains(a.second, a.first)) {
      out.push_back({ViolationKind::AntisymmetryBroken, a,
                     std::string(label) + " holds both orientations of " + arc_text(inst, a)});
    }
  }
}

void check_disjoint(const Instance& inst, const std::vector<Arc>& a, const std::vector<Arc>& b,
                    std::string_view la, std::string_view lb, ViolationKind kind,
                    std::vector<Violation>& out) {
  for (const Arc& arc : intersect_arcs(a, b)) {
    out.push_back({kind, arc,
                   std::string(la) + " and " + std::string(lb) + " share " + arc_text(inst, arc)});
  }
}

}  // namespace

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const PartialHomologySet& h = inst.relations;
  const ForbiddenSet& f = inst.forbidden;

  check_set(inst, h.paralogs, "R0", out);
  check_set(inst, h.orthologs, "R1", out);
  check_set(inst, h.xenologs, "RX", out);
  check_set(inst, f.paralogs, "F0", out);
  check_set(inst, f.orthologs, "F1", out);
  check_set(inst, f.xenologs, "FX", out);

  const std::vector<Arc> xsym = symmetric_closure(h.xenologs).arcs();
  check_disjoint(inst, h.paralogs.arcs(), h.orthologs.arcs(), "R0", "R1",
                 ViolationKind::OverlapBetweenRelations, out);
  check_disjoint(inst, h.paralogs.arcs(), xsym, "R0", "sym(RX)",
                 ViolationKind::OverlapBetweenRelations, out);
  check_disjoint(inst, h.orthologs.arcs(), xsym, "R1", "sym(RX)",
                 ViolationKind::OverlapBetweenRelations, out);

  check_disjoint(inst, h.paralogs.arcs(), f.paralogs.arcs(), "R0", "F0",
                 ViolationKind::RelationMeetsForbidden, out);
  check_disjoint(inst, h.orthologs.arcs(), f.orthologs.arcs(), "R1", "F1",
                 ViolationKind::RelationMeetsForbidden, out);
  check_disjoint(inst, h.xenologs.arcs(), f.xenologs.arcs(), "RX", "FX",
                 ViolationKind::RelationMeetsForbidden, out);
  return out;
}

bool is_full(const PartialHomologySet& h, std::size_t n) {
  std::vector<Arc> all = h.paralogs.arcs();
  auto append = [&all](const std::vector<Arc>& arcs) {
    all.insert(all.end(), arcs.begin(), arcs.end());
  };
  append(h.orthologs.arcs());
  append(h.xenologs.arcs());
  append(reversed_arcs(h.xenologs.arcs()));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size() == n * (n - 1);
}

bool is_full(const Instance& inst) { return is_full(inst.relations, inst.vertex_count()); }

RelationSet induced(const RelationSet& r, const std::vector<bool>& keep) {
  std::vector<Arc> arcs;
  for (const Arc& a : r.arcs()) {
    if (a.first < keep.size() && a.second < keep.size() && keep[a.first] && keep[a.second]) {
      arcs.push_back(a);
    }
  }
  return RelationSet(r.mode(), std::move(arcs));
}

PartialHomologySet induced(const PartialHomologySet& h, const std::vector<bool>& keep) {
  return {induced(h.paralogs, keep), induced(h.orthologs, keep), induced(h.xenologs, keep)};
}

ForbiddenSet induced(const ForbiddenSet& f, const std::vector<bool>& keep) {
  return {induced(f.paralogs, keep), induced(f.orthologs, keep), induced(f.xenologs, keep)};
}

std::vector<bool> subset_mask(std::size_t n, std::span<const VertexIdx> w) {
  std::vector<bool> mask(n, false);
  for (VertexIdx v : w) mask[v] = true;
  return mask;
}

Instance induced_instance(const Instance& inst, std::span<const VertexIdx> w) {
  std::vector<VertexIdx> remap(inst.vertex_count(), 0);
  std::vector<bool> keep(inst.vertex_count(), false);
  VertexTable verts;
  for (VertexIdx v : w) {
    remap[v] = static_cast<VertexIdx>(verts.size());
    verts.intern(inst.vertices.name(v));
    keep[v] = true;
  }
  auto project = [&](const RelationSet& r) {
    std::vector<Arc> arcs;
    for (const Arc& a : r.arcs()) {
      if (keep[a.first] && keep[a.second]) arcs.emplace_back(remap[a.first], remap[a.second]);
    }
    return RelationSet(r.mode(), std::move(arcs));
  };
  PartialHomologySet h{project(inst.relations.paralogs), project(inst.relations.orthologs),
                       project(inst.relations.xenologs)};
  ForbiddenSet f{project(inst.forbidden.paralogs), project(inst.forbidden.orthologs),
                 project(inst.forbidden.xenologs)};
  return Instance(std::move(verts), std::move(h), std::move(f));
}

}  // namespace dicosat
