#include "dicosat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace dicosat {

namespace {

using LeafMask = std::uint32_t;

constexpr std::array<CotreeLabel, 3> kLabels = {CotreeLabel::Union, CotreeLabel::Join,
                                                CotreeLabel::DirectedJoin};

// Unordered set partitions of a bitmask; each block keeps the smallest
// remaining element, which makes the enumeration duplicate-free.
void partitions_rec(LeafMask rest, std::vector<LeafMask>& current,
                    std::vector<std::vector<LeafMask>>& out) {
  if (rest == 0) {
    out.push_back(current);
    return;
  }
  LeafMask low = rest & (~rest + 1);
  LeafMask others = rest ^ low;
  LeafMask sub = 0;
  while (true) {
    LeafMask block = low | sub;
    current.push_back(block);
    partitions_rec(rest ^ block, current, out);
    current.pop_back();
    if (sub == others) break;
    sub = (sub - others) & others;
  }
}

std::vector<std::vector<LeafMask>> set_partitions(LeafMask mask) {
  std::vector<std::vector<LeafMask>> out;
  std::vector<LeafMask> current;
  partitions_rec(mask, current, out);
  return out;
}

struct Enumerator {
  std::span<const std::string> leaves;
  const std::function<bool(const Cotree&)>* visit;

  // banned: label index the root may not take, or -1
  bool emit_all(LeafMask mask, int banned) {
    if (std::popcount(mask) == 1) {
      return (*visit)(Cotree::make_leaf(leaves[std::countr_zero(mask)]));
    }
    for (int li = 0; li < 3; ++li) {
      if (li == banned) continue;
      for (const std::vector<LeafMask>& blocks : set_partitions(mask)) {
        if (blocks.size() < 2) continue;
        if (!emit_partition(blocks, li)) return false;
      }
    }
    return true;
  }

  bool emit_partition(const std::vector<LeafMask>& blocks, int label_idx) {
    const std::size_t k = blocks.size();
    std::vector<std::vector<Cotree>> choices(k);
    for (std::size_t b = 0; b < k; ++b) {
      collect(blocks[b], label_idx, choices[b]);
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        std::vector<Cotree> children;
        children.reserve(k);
        for (std::size_t s = 0; s < k; ++s) children.push_back(choices[perm[s]][pick[s]]);
        if (!(*visit)(Cotree::join(kLabels[label_idx], children))) return false;
        std::size_t i = 0;
        for (; i < k; ++i) {
          if (++pick[i] < choices[perm[i]].size()) break;
          pick[i] = 0;
        }
        if (i == k) break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  }

  void collect(LeafMask mask, int banned, std::vector<Cotree>& out) {
    Enumerator sub{leaves, nullptr};
    std::function<bool(const Cotree&)> take = [&out](const Cotree& t) {
      out.push_back(t);
      return true;
    };
    sub.visit = &take;
    sub.emit_all(mask, banned);
  }
};

}  // namespace

bool for_each_cotree(std::span<const std::string> leaves,
                     const std::function<bool(const Cotree&)>& visit) {
  if (leaves.empty() || leaves.size() > kOracleLeafCap) throw CapExceededError(leaves.size());
  Enumerator e{leaves, &visit};
  LeafMask all = static_cast<LeafMask>((1u << leaves.size()) - 1);
  return e.emit_all(all, -1);
}

std::uint64_t count_cotrees(std::size_t n_leaves) {
  std::vector<std::string> leaves;
  for (std::size_t i = 0; i < n_leaves; ++i) leaves.push_back("l" + std::to_string(i));
  std::uint64_t count = 0;
  for_each_cotree(leaves, [&count](const Cotree&) {
    ++count;
    return true;
  });
  return count;
}

bool brute_force_satisfiable(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  if (n > kOracleLeafCap) throw CapExceededError(n);
  bool found = false;
  for_each_cotree(inst.vertices.names(), [&](const Cotree& t) {
    if (cotree_explains(t, inst)) {
      found = true;
      return false;  // stop
    }
    return true;
  });
  return found;
}

}  // namespace dicosat
