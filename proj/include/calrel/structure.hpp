#pragma once

// Finite edge-labeled directed graphs and marked structures.
//
// Text format, one directive per line:
//   nodes <id> <id> ...        (may repeat; the union is taken)
//   edge <label> <src> <dst>
//   relation <label>           (declares a label that may have no edges)
//   # comment
// Node order is first-appearance order in `nodes` lines.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "calrel/bitmatrix.hpp"

namespace calrel {

class Structure {
 public:
  Structure() = default;

  /// Builds from node ids, a vocabulary, and labeled edges (label, src, dst).
  /// Edge labels missing from `vocab` are appended to it in first-seen order.
  Structure(std::vector<std::string> nodes, std::vector<std::string> vocab,
            const std::vector<std::tuple<std::string, std::string, std::string>>& edges);

  /// Builds from dense relations; nodes are named "1".."n" unless names are given.
  Structure(std::size_t n, std::vector<std::string> vocab, std::vector<BitMatrix> relations,
            std::vector<std::string> node_names = {});

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }

  /// Null when `name` is not in the vocabulary.
  const BitMatrix* relation(std::string_view name) const;
  const BitMatrix& relation_at(std::size_t idx) const { return rels_.at(idx); }

  std::optional<std::size_t> index_of(std::string_view node) const;
  /// Throws calrel::Error naming the missing node.
  std::size_t require_index(std::string_view node) const;

  /// Union of all relations (the edge set of graph(G)).
  BitMatrix adjacency() const;

  /// Copy extended with empty relations for every name of `vocab` it lacks.
  /// Names are ordered as in `vocab`, then any own names `vocab` lacks.
  Structure with_vocabulary(const std::vector<std::string>& vocab) const;

  std::string to_text() const;

 private:
  void index_nodes();

  std::vector<std::string> nodes_;
  std::vector<std::string> vocab_;
  std::vector<BitMatrix> rels_;
  std::unordered_map<std::string, std::size_t> node_index_;
};

struct MarkedStructure {
  const Structure* structure = nullptr;
  std::size_t a = 0;
  std::size_t b = 0;
};

Structure parse_structure(std::string_view text);
Structure load_structure(const std::filesystem::path& path);

/// Merged vocabulary: names of `a` in order, then names only in `b`.
std::vector<std::string> merge_vocabulary(const Structure& a, const Structure& b);

/// Extends both structures to their merged vocabulary.
std::pair<Structure, Structure> unify_vocabulary(const Structure& a, const Structure& b);

}  // namespace calrel
