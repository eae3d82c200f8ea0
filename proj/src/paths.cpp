#include "calrel/paths.hpp"

#include <stdexcept>

namespace calrel {

namespace {

BitMatrix step_relation(const Structure& g, bool undirected) {
  BitMatrix adj = g.adjacency();
  if (undirected) adj |= transpose(adj);
  return adj;
}

}  // namespace

PairSet reach_pairs(const Structure& g, std::size_t k, bool undirected) {
  return square_closure(step_relation(g, undirected), k);
}

PairSet paths_F(const Structure& g, Fragment f, std::size_t k) {
  switch (f.one_presence()) {
    case OnePresence::Degree0: return BitMatrix::full(g.size());
    case OnePresence::Degree1:
      if (k > 0) return BitMatrix::full(g.size());
      [[fallthrough]];
    case OnePresence::Absent: return reach_pairs(g, k, f.has(Feature::Conv));
  }
  return {};
}

PairSet paths_unbounded(const Structure& g, Fragment f) {
  if (f.one_presence() != OnePresence::Absent) return BitMatrix::full(g.size());
  return star(step_relation(g, f.has(Feature::Conv)));
}

PathTable::PathTable(const Structure& g, Fragment f, std::size_t max_k) : g_(&g), f_(f) { extend(max_k); }

PathTable PathTable::unbounded(const Structure& g, Fragment f) {
  PathTable t;
  t.g_ = &g;
  t.f_ = f;
  t.unbounded_ = true;
  t.levels_.push_back(paths_unbounded(g, f));
  return t;
}

const PairSet& PathTable::at(std::size_t k) const {
  if (unbounded_) return levels_.front();
  return levels_.at(k);
}

void PathTable::extend(std::size_t k) {
  if (unbounded_) return;
  if (levels_.empty()) levels_.push_back(paths_F(*g_, f_, 0));
  while (levels_.size() <= k) {
    const PairSet& prev = levels_.back();
    if (f_.one_presence() == OnePresence::Absent) {
      levels_.push_back(prev | compose(prev, prev));
    } else {
      levels_.push_back(paths_F(*g_, f_, levels_.size()));
    }
  }
}

}  // namespace calrel
