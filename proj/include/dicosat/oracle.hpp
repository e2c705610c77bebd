#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicosat/cotree.hpp"
#include "dicosat/relations.hpp"

namespace dicosat {

// Enumeration blows up super-exponentially; five leaves is the supported
// ceiling for the ground-truth oracle.
inline constexpr std::size_t kOracleLeafCap = 5;

class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(std::size_t n)
      : std::runtime_error("oracle supports at most " + std::to_string(kOracleLeafCap) +
                           " leaves, got " + std::to_string(n)) {}
};

// Visits every canonical ordered labeled cotree on the given leaves exactly
// once: every tree shape with >= 2 children per inner node, every child
// permutation, every labeling where no inner node repeats its parent's
// label. The visitor returns false to stop; the function returns false iff
// it was stopped early.
bool for_each_cotree(std::span<const std::string> leaves,
                     const std::function<bool(const Cotree&)>& visit);

std::uint64_t count_cotrees(std::size_t n_leaves);

// Ground truth by definition: some enumerated tree explains the instance.
bool brute_force_satisfiable(const Instance& inst);

}  // namespace dicosat
