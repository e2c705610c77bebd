#include "dicosat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dicosat {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <class OnLine>
void for_each_line(std::string_view text, OnLine&& on_line) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    on_line(lineno, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

bool comment_or_blank(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens[0].front() == '#';
}

// Shared vertex interning for both file kinds: declared via V lines, or
// auto-declared from use with a warning.
struct NameResolver {
  VertexTable table;
  std::vector<std::string> warnings;
  std::vector<FileParseError> errors;

  bool check_name(std::size_t lineno, std::string_view name) {
    if (valid_vertex_name(name)) return true;
    errors.push_back({lineno, "invalid vertex name '" + std::string(name) + "'"});
    return false;
  }

  void declare(std::size_t lineno, std::string_view name) {
    if (check_name(lineno, name)) table.intern(name);
  }

  std::optional<VertexIdx> resolve(std::size_t lineno, std::string_view name) {
    if (!check_name(lineno, name)) return std::nullopt;
    if (auto idx = table.find(name)) return idx;
    warnings.push_back("line " + std::to_string(lineno) + ": vertex '" + std::string(name) +
                       "' used without declaration, auto-declared");
    return table.intern(name);
  }
};

}  // namespace

RelationsParseResult parse_relations_text(std::string_view text) {
  NameResolver names;
  std::vector<Arc> r0, r1, rx, f0, f1, fx;

  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto tokens = split_tokens(line);
    if (comment_or_blank(tokens)) return;
    std::string_view tag = tokens[0];
    if (tag == "V") {
      if (tokens.size() < 2) {
        names.errors.push_back({lineno, "V line declares no vertices"});
        return;
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) names.declare(lineno, tokens[i]);
      return;
    }
    std::vector<Arc>* sym = nullptr;
    std::vector<Arc>* dir = nullptr;
    if (tag == "R0") sym = &r0;
    else if (tag == "R1") sym = &r1;
    else if (tag == "RX") dir = &rx;
    else if (tag == "F0") sym = &f0;
    else if (tag == "F1") sym = &f1;
    else if (tag == "FX") dir = &fx;
    else {
      names.errors.push_back({lineno, "unknown tag '" + std::string(tag) + "'"});
      return;
    }
    if (tokens.size() != 3) {
      names.errors.push_back({lineno, std::string(tag) + " line needs exactly 2 vertex names"});
      return;
    }
    auto x = names.resolve(lineno, tokens[1]);
    auto y = names.resolve(lineno, tokens[2]);
    if (!x || !y) return;
    if (sym) {
      sym->emplace_back(*x, *y);
      sym->emplace_back(*y, *x);
    } else {
      dir->emplace_back(*x, *y);
    }
  });

  RelationsParseResult res;
  res.errors = std::move(names.errors);
  res.warnings = std::move(names.warnings);
  if (names.table.size() == 0) {
    res.errors.push_back({0, "no vertices declared"});
  }
  if (!res.errors.empty()) return res;

  PartialHomologySet h{RelationSet(Mode::Symmetric, std::move(r0)),
                       RelationSet(Mode::Symmetric, std::move(r1)),
                       RelationSet(Mode::Antisymmetric, std::move(rx))};
  ForbiddenSet f{RelationSet(Mode::Symmetric, std::move(f0)),
                 RelationSet(Mode::Symmetric, std::move(f1)),
                 RelationSet(Mode::Antisymmetric, std::move(fx))};
  res.instance.emplace(std::move(names.table), std::move(h), std::move(f));
  return res;
}

namespace {

void write_vertex_lines(std::ostringstream& out, const VertexTable& verts) {
  constexpr std::size_t kPerLine = 16;
  for (std::size_t i = 0; i < verts.size(); i += kPerLine) {
    out << "V";
    for (std::size_t j = i; j < std::min(verts.size(), i + kPerLine); ++j) {
      out << ' ' << verts.name(static_cast<VertexIdx>(j));
    }
    out << '\n';
  }
}

void write_relation_lines(std::ostringstream& out, const VertexTable& verts,
                          const RelationSet& r, std::string_view tag) {
  for (const Arc& a : r.arcs()) {
    if (r.mode() == Mode::Symmetric && a.first > a.second) continue;  // list each pair once
    out << tag << ' ' << verts.name(a.first) << ' ' << verts.name(a.second) << '\n';
  }
}

}  // namespace

std::string relations_to_text(const VertexTable& verts, const PartialHomologySet& h,
                              const ForbiddenSet* forbidden) {
  std::ostringstream out;
  write_vertex_lines(out, verts);
  write_relation_lines(out, verts, h.paralogs, "R0");
  write_relation_lines(out, verts, h.orthologs, "R1");
  write_relation_lines(out, verts, h.xenologs, "RX");
  if (forbidden) {
    write_relation_lines(out, verts, forbidden->paralogs, "F0");
    write_relation_lines(out, verts, forbidden->orthologs, "F1");
    write_relation_lines(out, verts, forbidden->xenologs, "FX");
  }
  return out.str();
}

DigraphParseResult parse_digraph_text(std::string_view text) {
  NameResolver names;
  std::vector<Arc> arcs;

  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto tokens = split_tokens(line);
    if (comment_or_blank(tokens)) return;
    std::string_view tag = tokens[0];
    if (tag == "V") {
      if (tokens.size() < 2) {
        names.errors.push_back({lineno, "V line declares no vertices"});
        return;
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) names.declare(lineno, tokens[i]);
      return;
    }
    if (tag != "A") {
      names.errors.push_back({lineno, "unknown tag '" + std::string(tag) + "'"});
      return;
    }
    if (tokens.size() != 3) {
      names.errors.push_back({lineno, "A line needs exactly 2 vertex names"});
      return;
    }
    auto x = names.resolve(lineno, tokens[1]);
    auto y = names.resolve(lineno, tokens[2]);
    if (!x || !y) return;
    if (*x == *y) {
      names.errors.push_back({lineno, "self-loop not allowed"});
      return;
    }
    arcs.emplace_back(*x, *y);
  });

  DigraphParseResult res;
  res.errors = std::move(names.errors);
  res.warnings = std::move(names.warnings);
  if (names.table.size() == 0) {
    res.errors.push_back({0, "no vertices declared"});
  }
  if (!res.errors.empty()) return res;
  res.graph.emplace(static_cast<std::uint32_t>(names.table.size()), std::move(arcs));
  res.vertices = std::move(names.table);
  return res;
}

std::optional<std::string> read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  return static_cast<bool>(out);
}

RelationsParseResult read_relations_file(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  if (!text) {
    RelationsParseResult res;
    res.errors.push_back({0, "cannot read file '" + path.string() + "'"});
    return res;
  }
  return parse_relations_text(*text);
}

DigraphParseResult read_digraph_file(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  if (!text) {
    DigraphParseResult res;
    res.errors.push_back({0, "cannot read file '" + path.string() + "'"});
    return res;
  }
  return parse_digraph_text(*text);
}

}  // namespace dicosat
