#include "dicosat/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dicosat {

BinaryTree generate_pure_birth_tree(int n_leaves, SplitMix64& rng) {
  if (n_leaves < 2) throw std::invalid_argument("pure-birth tree needs at least 2 leaves");
  BinaryTree t;
  t.nodes.reserve(2 * static_cast<std::size_t>(n_leaves) - 1);
  t.nodes.push_back({});  // root
  t.nodes.push_back({});
  t.nodes.push_back({});
  t.nodes[0].left = 1;
  t.nodes[0].right = 2;
  std::vector<std::int32_t> leaves{1, 2};
  while (static_cast<int>(leaves.size()) < n_leaves) {
    std::size_t pick = static_cast<std::size_t>(rng.below(leaves.size()));
    std::int32_t v = leaves[pick];
    std::int32_t a = static_cast<std::int32_t>(t.nodes.size());
    t.nodes.push_back({});
    t.nodes.push_back({});
    t.nodes[v].left = a;
    t.nodes[v].right = a + 1;
    leaves[pick] = a;
    leaves.push_back(a + 1);
  }
  t.leaf_count = n_leaves;
  return t;
}

Cotree label_tree(const BinaryTree& tree, const LabelDistribution& dist, SplitMix64& rng) {
  CotreeBuilder builder;
  int next_leaf = 0;
  // preorder walk; the label draws happen in a fixed order for a fixed shape
  struct Item {
    std::int32_t node;
    std::int32_t built_parent;
    std::uint32_t slot;
  };
  std::vector<Item> stack{{tree.root, -1, 0}};
  std::int32_t root_id = -1;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const BinaryTree::Node& n = tree.nodes[it.node];
    std::int32_t id;
    if (n.is_leaf()) {
      id = builder.add_leaf(std::to_string(next_leaf++));
    } else {
      double u = rng.next_double();
      CotreeLabel label = u < dist[0]                ? CotreeLabel::Union
                          : u < dist[0] + dist[1]    ? CotreeLabel::Join
                                                     : CotreeLabel::DirectedJoin;
      id = builder.add_inner(label, 2);
    }
    if (it.built_parent < 0) {
      root_id = id;
    } else {
      builder.set_child(it.built_parent, it.slot, id);
    }
    if (!n.is_leaf()) {
      stack.push_back({n.right, id, 1});
      stack.push_back({n.left, id, 0});
    }
  }
  return builder.finish(root_id);
}

namespace {

// which homology relation holds the unordered pair {x,y}; -1 if none
int pair_kind(const PartialHomologySet& h, VertexIdx x, VertexIdx y) {
  if (h.paralogs.contains(x, y)) return 0;
  if (h.orthologs.contains(x, y)) return 1;
  if (h.xenologs.contains(x, y) || h.xenologs.contains(y, x)) return 2;
  return -1;
}

}  // namespace

PartialHomologySet delete_pairs(const PartialHomologySet& full, std::uint32_t n, double p,
                                SplitMix64& rng) {
  std::vector<Arc> r0, r1, rx;
  for (VertexIdx x = 0; x < n; ++x) {
    for (VertexIdx y = x + 1; y < n; ++y) {
      bool drop = rng.bernoulli(p);
      if (drop) continue;
      if (full.paralogs.contains(x, y)) {
        r0.emplace_back(x, y);
        r0.emplace_back(y, x);
      } else if (full.orthologs.contains(x, y)) {
        r1.emplace_back(x, y);
        r1.emplace_back(y, x);
      } else if (full.xenologs.contains(x, y)) {
        rx.emplace_back(x, y);
      } else if (full.xenologs.contains(y, x)) {
        rx.emplace_back(y, x);
      }
    }
  }
  return {RelationSet(Mode::Symmetric, std::move(r0)), RelationSet(Mode::Symmetric, std::move(r1)),
          RelationSet(Mode::Antisymmetric, std::move(rx))};
}

ForbiddenSet sample_forbidden(const PartialHomologySet& partial,
                              const PartialHomologySet& true_full, std::uint32_t n,
                              double p_prime, SplitMix64& rng, FxOrientation orientation) {
  std::vector<Arc> f0, f1, fx;
  for (VertexIdx x = 0; x < n; ++x) {
    for (VertexIdx y = x + 1; y < n; ++y) {
      if (pair_kind(partial, x, y) != -1) continue;
      if (!rng.bernoulli(p_prime)) continue;
      int truth = pair_kind(true_full, x, y);
      if (truth < 0) continue;  // true set must be full; defensive for partial callers
      // pick one of the two kinds that differ from the true one
      int offset = static_cast<int>(rng.below(2));
      int kind = (truth + 1 + offset) % 3;
      switch (kind) {
        case 0:
          f0.emplace_back(x, y);
          f0.emplace_back(y, x);
          break;
        case 1:
          f1.emplace_back(x, y);
          f1.emplace_back(y, x);
          break;
        default:
          if (orientation == FxOrientation::LowHigh) {
            fx.emplace_back(x, y);
          } else {
            fx.emplace_back(y, x);
          }
          break;
      }
    }
  }
  return {RelationSet(Mode::Symmetric, std::move(f0)), RelationSet(Mode::Symmetric, std::move(f1)),
          RelationSet(Mode::Antisymmetric, std::move(fx))};
}

double relative_difference(const PartialHomologySet& a, const PartialHomologySet& b,
                           std::uint32_t leaf_count) {
  if (leaf_count < 2) return 0.0;
  const double denom = static_cast<double>(leaf_count) * leaf_count - leaf_count;
  const std::size_t d0 = symmetric_difference_size(a.paralogs.arcs(), b.paralogs.arcs());
  const std::size_t d1 = symmetric_difference_size(a.orthologs.arcs(), b.orthologs.arcs());
  const std::vector<Arc> rev_bx = reversed_arcs(b.xenologs.arcs());
  const std::size_t flipped = intersect_arcs(a.xenologs.arcs(), rev_bx).size();
  std::vector<Arc> forward;  // a's xenologs that b does not hold reversed
  std::set_difference(a.xenologs.arcs().begin(), a.xenologs.arcs().end(), rev_bx.begin(),
                      rev_bx.end(), std::back_inserter(forward));
  const std::size_t dx = symmetric_difference_size(forward, b.xenologs.arcs());
  return (static_cast<double>(d0) + static_cast<double>(d1) + 2.0 * flipped + 2.0 * dx) / denom;
}

PartialHomologySet random_baseline(const PartialHomologySet& partial, std::uint32_t n,
                                   SplitMix64& rng, BaselineMode mode) {
  std::vector<Arc> r0 = partial.paralogs.arcs();
  std::vector<Arc> r1 = partial.orthologs.arcs();
  std::vector<Arc> rx = partial.xenologs.arcs();
  for (VertexIdx x = 0; x < n; ++x) {
    for (VertexIdx y = x + 1; y < n; ++y) {
      if (pair_kind(partial, x, y) != -1) continue;
      int choice;
      if (mode == BaselineMode::FourDirected) {
        choice = static_cast<int>(rng.below(4));
      } else {
        choice = static_cast<int>(rng.below(3));
        if (choice == 2 && rng.below(2) == 1) choice = 3;
      }
      switch (choice) {
        case 0:
          r0.emplace_back(x, y);
          r0.emplace_back(y, x);
          break;
        case 1:
          r1.emplace_back(x, y);
          r1.emplace_back(y, x);
          break;
        case 2:
          rx.emplace_back(x, y);
          break;
        default:
          rx.emplace_back(y, x);
          break;
      }
    }
  }
  return {RelationSet(Mode::Symmetric, std::move(r0)), RelationSet(Mode::Symmetric, std::move(r1)),
          RelationSet(Mode::Antisymmetric, std::move(rx))};
}

std::optional<std::string> config_error(const ExperimentConfig& cfg) {
  if (cfg.leaf_sizes.empty()) return "leaf_sizes must not be empty";
  for (int s : cfg.leaf_sizes) {
    if (s < 2) return "leaf sizes must be >= 2";
  }
  if (cfg.trials < 1) return "trials must be >= 1";
  if (cfg.p_unassigned.empty()) return "p_unassigned must not be empty";
  for (double p : cfg.p_unassigned) {
    if (p < 0.0 || p > 1.0) return "p_unassigned values must lie in [0,1]";
  }
  for (double p : cfg.p_forbidden) {
    if (p < 0.0 || p > 1.0) return "p_forbidden values must lie in [0,1]";
  }
  if (cfg.p_forbidden.empty()) return "p_forbidden must not be empty";
  double sum = cfg.label_distribution[0] + cfg.label_distribution[1] + cfg.label_distribution[2];
  for (double d : cfg.label_distribution) {
    if (d < 0.0 || d > 1.0) return "label distribution entries must lie in [0,1]";
  }
  if (std::abs(sum - 1.0) > 1e-9) return "label distribution must sum to 1";
  if (cfg.rule_orders.empty()) return "rule_orders must not be empty";
  if (cfg.threads < 1) return "threads must be >= 1";
  return std::nullopt;
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t size_i, std::size_t p_i,
                      std::size_t pf_i, std::size_t ord_i, int trial) {
  const int leaf_size = cfg.leaf_sizes[size_i];
  const double p = cfg.p_unassigned[p_i];
  const double pf = cfg.p_forbidden[pf_i];
  const std::uint64_t trial_seed =
      derive_seed(cfg.master_seed, {static_cast<std::uint64_t>(leaf_size), p_i, pf_i, ord_i,
                                    static_cast<std::uint64_t>(trial)});
  SplitMix64 rng(trial_seed);

  BinaryTree shape = generate_pure_birth_tree(leaf_size, rng);
  Cotree truth_tree = label_tree(shape, cfg.label_distribution, rng);
  Instance truth = relations_from_cotree(truth_tree);
  const std::uint32_t n = static_cast<std::uint32_t>(truth.vertex_count());

  PartialHomologySet partial = delete_pairs(truth.relations, n, p, rng);
  ForbiddenSet forbidden =
      sample_forbidden(partial, truth.relations, n, pf, rng, cfg.fx_orientation);

  TrialRecord rec;
  rec.leaf_size = leaf_size;
  rec.p_unassigned = p;
  rec.p_forbidden = pf;
  rec.trial = trial;
  rec.seed = trial_seed;

  PartialHomologySet recovered;
  if (cfg.use_baseline) {
    rec.rule_order = "baseline";
    recovered = random_baseline(partial, n, rng, cfg.baseline_mode);
    rec.satisfiable = true;
  } else {
    RuleOrder order = cfg.rule_orders[ord_i];
    if (order.random) order.seed = derive_seed(trial_seed, {order.seed});
    rec.rule_order = cfg.rule_orders[ord_i].label();
    Instance work(truth.vertices, std::move(partial), std::move(forbidden));
    SatOutcome outcome = build_cotree(work, order);
    if (!is_sat(outcome)) {
      // degraded true instances are satisfiable by construction
      throw std::logic_error("simulation trial unexpectedly unsatisfiable (seed " +
                             std::to_string(trial_seed) + ")");
    }
    rec.satisfiable = true;
    recovered = relations_from_cotree(std::get<Cotree>(outcome), work.vertices);
  }
  rec.rel_diff = relative_difference(truth.relations, recovered, n);
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  if (auto err = config_error(cfg)) throw std::invalid_argument(*err);

  struct Job {
    std::size_t size_i, p_i, pf_i, ord_i;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t si = 0; si < cfg.leaf_sizes.size(); ++si) {
    for (std::size_t pi = 0; pi < cfg.p_unassigned.size(); ++pi) {
      for (std::size_t fi = 0; fi < cfg.p_forbidden.size(); ++fi) {
        for (std::size_t oi = 0; oi < cfg.rule_orders.size(); ++oi) {
          for (int t = 0; t < cfg.trials; ++t) jobs.push_back({si, pi, fi, oi, t});
        }
      }
    }
  }

  std::vector<TrialRecord> records(jobs.size());
  const int workers = std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Job& j = jobs[i];
      records[i] = run_trial(cfg, j.size_i, j.p_i, j.pf_i, j.ord_i, j.trial);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs.size() || failed.load()) break;
        const Job& j = jobs[i];
        try {
          records[i] = run_trial(cfg, j.size_i, j.p_i, j.pf_i, j.ord_i, j.trial);
        } catch (const std::exception& e) {
          std::scoped_lock lock(failure_mutex);
          failed.store(true);
          if (failure.empty()) failure = e.what();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failed.load()) throw std::logic_error(failure);
  return records;
}

std::string records_to_csv(std::span<const TrialRecord> records) {
  std::string out = "leaf_size,p_unassigned,p_forbidden,rule_order,trial,seed,rel_diff,satisfiable\n";
  char buf[160];
  for (const TrialRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%s,%d,%llu,%.6f,%d\n", r.leaf_size,
                  r.p_unassigned, r.p_forbidden, r.rule_order.c_str(), r.trial,
                  static_cast<unsigned long long>(r.seed), r.rel_diff, r.satisfiable ? 1 : 0);
    out += buf;
  }
  return out;
}

namespace {

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) out.push_back(text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(std::string(s), &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

}  // namespace

std::vector<std::string> apply_config_text(std::string_view text, ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    pos = end + 1;
    // trim
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto bad = [&](std::string_view why) {
      errors.push_back("config line " + std::to_string(lineno) + ": " + std::string(why));
    };
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      bad("expected key=value");
      if (end == text.size()) break;
      continue;
    }
    std::string_view key = line.substr(0, eq);
    std::string_view value = line.substr(eq + 1);
    if (key == "sizes") {
      std::vector<int> sizes;
      for (auto item : split_list(value)) {
        std::uint64_t v = 0;
        if (!parse_u64(item, v)) { bad("bad size list"); sizes.clear(); break; }
        sizes.push_back(static_cast<int>(v));
      }
      if (!sizes.empty()) cfg.leaf_sizes = std::move(sizes);
    } else if (key == "trials") {
      std::uint64_t v = 0;
      if (parse_u64(value, v)) cfg.trials = static_cast<int>(v); else bad("bad trials");
    } else if (key == "p" || key == "p_unassigned") {
      std::vector<double> ps;
      for (auto item : split_list(value)) {
        double d = 0;
        if (!parse_double(item, d)) { bad("bad probability list"); ps.clear(); break; }
        ps.push_back(d);
      }
      if (!ps.empty()) cfg.p_unassigned = std::move(ps);
    } else if (key == "p_forbidden") {
      std::vector<double> ps;
      for (auto item : split_list(value)) {
        double d = 0;
        if (!parse_double(item, d)) { bad("bad probability list"); ps.clear(); break; }
        ps.push_back(d);
      }
      if (!ps.empty()) cfg.p_forbidden = std::move(ps);
    } else if (key == "orders") {
      std::vector<RuleOrder> orders;
      for (auto item : split_list(value)) {
        auto o = RuleOrder::parse(item);
        if (!o) { bad("bad rule order '" + std::string(item) + "'"); orders.clear(); break; }
        orders.push_back(*o);
      }
      if (!orders.empty()) cfg.rule_orders = std::move(orders);
    } else if (key == "labels") {
      if (value == "uniform") {
        cfg.label_distribution = kUniformLabels;
      } else if (value == "skewed") {
        cfg.label_distribution = kSkewedLabels;
      } else {
        auto parts = split_list(value);
        LabelDistribution d{};
        if (parts.size() == 3 && parse_double(parts[0], d[0]) && parse_double(parts[1], d[1]) &&
            parse_double(parts[2], d[2])) {
          cfg.label_distribution = d;
        } else {
          bad("bad label distribution");
        }
      }
    } else if (key == "seed") {
      std::uint64_t v = 0;
      if (parse_u64(value, v)) cfg.master_seed = v; else bad("bad seed");
    } else if (key == "threads") {
      std::uint64_t v = 0;
      if (parse_u64(value, v)) cfg.threads = static_cast<int>(v); else bad("bad threads");
    } else if (key == "fx_orientation") {
      if (value == "low-high") cfg.fx_orientation = FxOrientation::LowHigh;
      else if (value == "high-low") cfg.fx_orientation = FxOrientation::HighLow;
      else bad("fx_orientation must be low-high or high-low");
    } else if (key == "baseline") {
      if (value == "true" || value == "1") cfg.use_baseline = true;
      else if (value == "false" || value == "0") cfg.use_baseline = false;
      else bad("baseline must be a boolean");
    } else if (key == "baseline_mode") {
      if (value == "directed4") cfg.baseline_mode = BaselineMode::FourDirected;
      else if (value == "kinds3") cfg.baseline_mode = BaselineMode::ThreeKinds;
      else bad("baseline_mode must be directed4 or kinds3");
    } else {
      bad("unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  return errors;
}

}  // namespace dicosat
