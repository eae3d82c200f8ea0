#include "calrel/structure.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "calrel/error.hpp"

namespace calrel {

Structure::Structure(std::vector<std::string> nodes, std::vector<std::string> vocab,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& edges)
    : nodes_(std::move(nodes)), vocab_(std::move(vocab)) {
  index_nodes();
  for (const auto& [label, src, dst] : edges) {
    if (std::find(vocab_.begin(), vocab_.end(), label) == vocab_.end()) vocab_.push_back(label);
  }
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (std::count(vocab_.begin(), vocab_.end(), vocab_[i]) != 1) throw Error("duplicate relation name '" + vocab_[i] + "'");
  }
  rels_.assign(vocab_.size(), BitMatrix(nodes_.size()));
  for (const auto& [label, src, dst] : edges) {
    const auto r = static_cast<std::size_t>(std::find(vocab_.begin(), vocab_.end(), label) - vocab_.begin());
    rels_[r].set(require_index(src), require_index(dst));
  }
}

Structure::Structure(std::size_t n, std::vector<std::string> vocab, std::vector<BitMatrix> relations,
                     std::vector<std::string> node_names)
    : vocab_(std::move(vocab)), rels_(std::move(relations)) {
  if (rels_.size() != vocab_.size()) throw Error("relation count does not match vocabulary size");
  for (const auto& r : rels_) {
    if (r.size() != n) throw Error("relation dimension does not match node count");
  }
  if (node_names.empty()) {
    for (std::size_t i = 0; i < n; ++i) nodes_.push_back(std::to_string(i + 1));
  } else {
    if (node_names.size() != n) throw Error("node name count does not match node count");
    nodes_ = std::move(node_names);
  }
  index_nodes();
}

void Structure::index_nodes() {
  node_index_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!node_index_.emplace(nodes_[i], i).second) throw Error("duplicate node '" + nodes_[i] + "'");
  }
}

const BitMatrix* Structure::relation(std::string_view name) const {
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (vocab_[i] == name) return &rels_[i];
  }
  return nullptr;
}

std::optional<std::size_t> Structure::index_of(std::string_view node) const {
  auto it = node_index_.find(std::string(node));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Structure::require_index(std::string_view node) const {
  if (auto i = index_of(node)) return *i;
  throw Error("unknown node '" + std::string(node) + "'");
}

BitMatrix Structure::adjacency() const {
  BitMatrix adj(size());
  for (const auto& r : rels_) adj |= r;
  return adj;
}

Structure Structure::with_vocabulary(const std::vector<std::string>& vocab) const {
  Structure out = *this;
  out.vocab_.clear();
  out.rels_.clear();
  for (const auto& name : vocab) {
    const BitMatrix* r = relation(name);
    out.vocab_.push_back(name);
    out.rels_.push_back(r ? *r : BitMatrix(size()));
  }
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (std::find(vocab.begin(), vocab.end(), vocab_[i]) == vocab.end()) {
      out.vocab_.push_back(vocab_[i]);
      out.rels_.push_back(rels_[i]);
    }
  }
  return out;
}

std::string Structure::to_text() const {
  std::ostringstream os;
  os << "nodes";
  for (const auto& n : nodes_) os << ' ' << n;
  os << '\n';
  for (std::size_t r = 0; r < vocab_.size(); ++r) {
    if (rels_[r].empty()) os << "relation " << vocab_[r] << '\n';
    for (auto [i, j] : rels_[r].pairs()) os << "edge " << vocab_[r] << ' ' << nodes_[i] << ' ' << nodes_[j] << '\n';
  }
  return os.str();
}

Structure parse_structure(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<std::string> vocab;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  std::vector<std::size_t> edge_lines;
  std::unordered_map<std::string, bool> seen;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> args;
    for (std::string tok; ls >> tok;) args.push_back(tok);
    if (kw == "nodes") {
      for (auto& id : args) {
        if (seen.emplace(id, true).second) nodes.push_back(id);
      }
    } else if (kw == "edge") {
      if (args.size() != 3) throw ParseError(lineno, 1, "edge needs <label> <src> <dst>");
      if (std::find(vocab.begin(), vocab.end(), args[0]) == vocab.end()) vocab.push_back(args[0]);
      edges.emplace_back(args[0], args[1], args[2]);
      edge_lines.push_back(lineno);
    } else if (kw == "relation") {
      if (args.size() != 1) throw ParseError(lineno, 1, "relation needs exactly one label");
      if (std::find(vocab.begin(), vocab.end(), args[0]) == vocab.end()) vocab.push_back(args[0]);
    } else {
      throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (const auto* id : {&std::get<1>(edges[e]), &std::get<2>(edges[e])}) {
      if (!seen.count(*id)) throw ParseError(edge_lines[e], 1, "edge endpoint '" + *id + "' is not declared in a nodes line");
    }
  }
  return Structure(std::move(nodes), std::move(vocab), edges);
}

Structure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open structure file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_structure(buf.str());
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<std::string> merge_vocabulary(const Structure& a, const Structure& b) {
  std::vector<std::string> v = a.vocabulary();
  for (const auto& n : b.vocabulary()) {
    if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
  }
  return v;
}

std::pair<Structure, Structure> unify_vocabulary(const Structure& a, const Structure& b) {
  const auto v = merge_vocabulary(a, b);
  return {a.with_vocabulary(v), b.with_vocabulary(v)};
}

}  // namespace calrel
