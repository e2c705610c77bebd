#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dicosat/cotree.hpp"
#include "dicosat/relations.hpp"
#include "dicosat/rng.hpp"
#include "dicosat/satisfiability.hpp"

namespace dicosat {

// Unlabeled binary rooted tree produced by the pure-birth process.
struct BinaryTree {
  struct Node {
    std::int32_t left = -1;
    std::int32_t right = -1;

    bool is_leaf() const { return left < 0; }
  };
  std::vector<Node> nodes;
  std::int32_t root = 0;
  int leaf_count = 0;
};

// Yule topology: start from a cherry, repeatedly split a uniformly random
// current leaf until n_leaves leaves exist. n_leaves >= 2.
BinaryTree generate_pure_birth_tree(int n_leaves, SplitMix64& rng);

// probabilities for labels '0', '1', 'X' in that order
using LabelDistribution = std::array<double, 3>;

inline constexpr LabelDistribution kUniformLabels = {1.0 / 3, 1.0 / 3, 1.0 / 3};
inline constexpr LabelDistribution kSkewedLabels = {0.1, 0.8, 0.1};

// Labels every inner vertex independently; leaves are named by their
// left-to-right position. The result is usually not canonical.
Cotree label_tree(const BinaryTree& tree, const LabelDistribution& dist, SplitMix64& rng);

// Removes each unordered pair (both directions) with probability p.
PartialHomologySet delete_pairs(const PartialHomologySet& full, std::uint32_t n, double p,
                                SplitMix64& rng);

// Orientation recorded for a forbidden xenolog pair: the arc from the
// smaller ordinal, or the reverse. The choice changes the reversed-FX arcs
// the DirectedJoin rule sees, so it is configurable.
enum class FxOrientation : std::uint8_t { LowHigh, HighLow };

// For each pair unassigned in `partial`, with probability p_prime picks a
// forbidden kind different from the pair's true kind in `true_full`, so the
// degraded instance always stays satisfiable.
ForbiddenSet sample_forbidden(const PartialHomologySet& partial,
                              const PartialHomologySet& true_full, std::uint32_t n,
                              double p_prime, SplitMix64& rng,
                              FxOrientation orientation = FxOrientation::LowHigh);

// Normalized distance between two full sets over the same leaves:
//   (|R0 d R0'| + |R1 d R1'| + 2|RX n rev(RX')| + 2|(RX \ rev(RX')) d RX'|)
//   / (L^2 - L)
// where d is the symmetric set difference. Fully misassigned pairs weigh
// double, so values above 1 are possible and reported verbatim.
double relative_difference(const PartialHomologySet& a, const PartialHomologySet& b,
                           std::uint32_t leaf_count);

enum class BaselineMode : std::uint8_t {
  FourDirected,  // uniform over {R0, R1, X forward, X backward}
  ThreeKinds,    // uniform over kinds, orientation coin for X
};

// Completes a partial set by assigning every unassigned pair at random;
// the comparison baseline for the recovery experiments.
PartialHomologySet random_baseline(const PartialHomologySet& partial, std::uint32_t n,
                                   SplitMix64& rng, BaselineMode mode = BaselineMode::FourDirected);

struct ExperimentConfig {
  std::vector<int> leaf_sizes{25, 50, 100};
  int trials = 1000;
  std::vector<double> p_unassigned{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> p_forbidden{0.0};
  LabelDistribution label_distribution = kUniformLabels;
  std::vector<RuleOrder> rule_orders{kDefaultRuleOrder};
  std::uint64_t master_seed = 0;
  int threads = 1;
  FxOrientation fx_orientation = FxOrientation::LowHigh;
  BaselineMode baseline_mode = BaselineMode::FourDirected;
  bool use_baseline = false;  // score the random baseline instead of the solver
};

std::optional<std::string> config_error(const ExperimentConfig& cfg);

struct TrialRecord {
  int leaf_size = 0;
  double p_unassigned = 0;
  double p_forbidden = 0;
  std::string rule_order;
  int trial = 0;
  std::uint64_t seed = 0;
  double rel_diff = 0;
  bool satisfiable = false;
};

// One record per (leaf size, p, p', rule order, trial) cell, in that
// nesting order. Trials derive their seeds from the master seed and the
// cell coordinates, so the stream is bit-identical for any thread count.
// Throws if a degraded instance unexpectedly fails to solve.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// header: leaf_size,p_unassigned,p_forbidden,rule_order,trial,seed,rel_diff,satisfiable
std::string records_to_csv(std::span<const TrialRecord> records);

// flat key=value config text; returns error messages for bad lines
std::vector<std::string> apply_config_text(std::string_view text, ExperimentConfig& cfg);

}  // namespace dicosat
