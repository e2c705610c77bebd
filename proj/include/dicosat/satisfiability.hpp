#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dicosat/cotree.hpp"
#include "dicosat/digraph.hpp"
#include "dicosat/relations.hpp"

namespace dicosat {

// The three split rules. Each rule is licensed by a decomposition of an
// auxiliary graph and stamps the matching label on the new root:
//   Union        -- (W, R1 u RX u F0) disconnected        -> '0' root
//   Join         -- (W, R0 u RX u F1) disconnected        -> '1' root
//   DirectedJoin -- (W, R0 u R1 u RX u rev(FX)) has >1 SCC -> 'X' root
enum class Rule : std::uint8_t { Union = 0, Join = 1, DirectedJoin = 2 };

CotreeLabel label_of(Rule r);

// Either a fixed permutation of the three rules (tried in sequence, first
// applicable wins) or a uniform random choice among the applicable rules at
// every step, driven by the seeded engine RNG.
struct RuleOrder {
  bool random = false;
  std::array<Rule, 3> sequence{Rule::Union, Rule::Join, Rule::DirectedJoin};
  std::uint64_t seed = 0;

  static RuleOrder fixed(std::array<Rule, 3> seq);
  static RuleOrder randomized(std::uint64_t seed);

  // "123".."321" (digits name the rules: 1=Union, 2=Join, 3=DirectedJoin)
  // or "rand:<seed>".
  static std::optional<RuleOrder> parse(std::string_view text);
  std::string label() const;
};

inline const RuleOrder kDefaultRuleOrder{};

struct UnsatWitness {
  std::vector<VertexIdx> vertices;  // the subset on which no rule applied
};

using SatOutcome = std::variant<Cotree, UnsatWitness>;

inline bool is_sat(const SatOutcome& o) { return std::holds_alternative<Cotree>(o); }

// The three auxiliary graphs over a vertex subset, with local indices in
// ascending w order. Exposed mainly for tests and diagnostics; the engine
// builds them incrementally.
struct RuleGraphs {
  std::vector<VertexIdx> vertices;  // sorted; local index i = vertices[i]
  DiGraph union_graph;
  DiGraph join_graph;
  DiGraph directed_join_graph;
};

RuleGraphs rule_graphs(const Instance& inst, std::span<const VertexIdx> w);

// Recursive recognition and cotree construction, run on an explicit work
// stack. Precondition: validate(inst) is clean. The result cotree is
// canonical and explains the instance; UNSAT is a value, not an error.
// Runs in O(n^2 + nm).
SatOutcome build_cotree(const Instance& inst, const RuleOrder& order = kDefaultRuleOrder);

// Validation failures count as unsatisfiable here, mirroring the halt
// branch of the recognition procedure. The verdict is independent of the
// rule order.
bool is_satisfiable(const Instance& inst, const RuleOrder& order = kDefaultRuleOrder);

// Satisfiable extension to a full set: each input relation is contained in
// its output counterpart and each output relation avoids its forbidden one.
std::optional<PartialHomologySet> extend_to_full(const Instance& inst,
                                                 const RuleOrder& order = kDefaultRuleOrder);

}  // namespace dicosat
