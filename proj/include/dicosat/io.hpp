#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicosat/digraph.hpp"
#include "dicosat/relations.hpp"

namespace dicosat {

struct FileParseError {
  std::size_t line = 0;  // 1-based; 0 for file-level problems
  std::string message;
};

// Relation files are line based:
//   # comment
//   V a b c          vertex declarations, repeatable
//   R0 x y           paralog pair (both directions implied)
//   R1 x y           ortholog pair (both directions implied)
//   RX x y           xenolog arc x -> y
//   F0/F1/FX x y     forbidden counterparts, same conventions
// Vertices first seen in a relation line are auto-declared with a warning.
// Duplicate lines are idempotent.
struct RelationsParseResult {
  std::optional<Instance> instance;
  std::vector<FileParseError> errors;
  std::vector<std::string> warnings;
};

RelationsParseResult parse_relations_text(std::string_view text);
RelationsParseResult read_relations_file(const std::filesystem::path& path);

// Writes V lines followed by one line per unordered R0/R1 pair (smaller
// ordinal first) and per RX arc. Deterministic output.
std::string relations_to_text(const VertexTable& verts, const PartialHomologySet& h,
                              const ForbiddenSet* forbidden = nullptr);

// Digraph files: same comment/V conventions, arcs as `A x y`.
struct DigraphParseResult {
  std::optional<DiGraph> graph;
  VertexTable vertices;
  std::vector<FileParseError> errors;
  std::vector<std::string> warnings;
};

DigraphParseResult parse_digraph_text(std::string_view text);
DigraphParseResult read_digraph_file(const std::filesystem::path& path);

std::optional<std::string> read_text_file(const std::filesystem::path& path);
bool write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dicosat
