#include "calrel/bisim.hpp"

#include <algorithm>

#include "calrel/error.hpp"
#include "calrel/paths.hpp"
#include "conditions.hpp"

namespace calrel {

namespace {

using detail::AtomTable;
using detail::Frame;
using detail::Tuple;

void require_negation(Fragment f) {
  if (!f.has_negation()) throw WrongFragment("bisimulation needs compl or diff in the fragment");
}

Tuple to_tuple(const PairTuple& t) { return {t.a1, t.b1, t.a2, t.b2}; }

bool check(BisimProperty p, const Frame& fr, const Tuple& t, const PairRelation& z) {
  switch (p) {
    case BisimProperty::AtomsForth:
    case BisimProperty::AtomsBack: return true;
    case BisimProperty::CompForth: return detail::comp_forth(fr, t, z);
    case BisimProperty::CompBack: return detail::comp_back(fr, t, z);
    case BisimProperty::ProjForth: return detail::proj_forth(fr, t, z);
    case BisimProperty::ProjBack: return detail::proj_back(fr, t, z);
    case BisimProperty::LResForth: return detail::lres_forth(fr, t, z, z);
    case BisimProperty::LResBack: return detail::lres_back(fr, t, z, z);
    case BisimProperty::RResForth: return detail::rres_forth(fr, t, z, z);
    case BisimProperty::RResBack: return detail::rres_back(fr, t, z, z);
  }
  return false;
}

struct Setup {
  Setup(Fragment f, const Structure& g1, const Structure& g2)
      : vocab(merge_vocabulary(g1, g2)), t1(g1, f, vocab), t2(g2, f, vocab) {}
  std::vector<std::string> vocab;
  AtomTable t1;
  AtomTable t2;
};

PairRelation atoms_relation(const Setup& s, std::size_t n1, std::size_t n2) {
  PairRelation z(n1, n2);
  for (std::size_t a1 = 0; a1 < n1; ++a1)
    for (std::size_t b1 = 0; b1 < n1; ++b1)
      for (std::size_t a2 = 0; a2 < n2; ++a2)
        for (std::size_t b2 = 0; b2 < n2; ++b2)
          if (detail::atoms_subset(s.t1, a1, b1, s.t2, a2, b2) && detail::atoms_subset(s.t2, a2, b2, s.t1, a1, b1))
            z.set(a1, b1, a2, b2);
  return z;
}

// Elements of prev passing every non-atomic property with respect to prev.
PairRelation refine(const std::vector<BisimProperty>& props, const Frame& fr, const PairRelation& prev) {
  PairRelation next(fr.n1, fr.n2);
  for (std::size_t a1 = 0; a1 < fr.n1; ++a1) {
    for (std::size_t b1 = 0; b1 < fr.n1; ++b1) {
      for (auto [a2, b2] : prev.slice(a1, b1).pairs()) {
        const Tuple t{a1, b1, a2, b2};
        if (std::all_of(props.begin(), props.end(), [&](BisimProperty p) { return check(p, fr, t, prev); }))
          next.set(a1, b1, a2, b2);
      }
    }
  }
  return next;
}

}  // namespace

bool bisim_projection_enabled(Fragment f) {
  return f.has(Feature::Pi) || f.has(Feature::Cpi) || f.has(Feature::Conv) || f.has(Feature::Di) ||
         f.has(Feature::Compl) || f.has(Feature::One);
}

std::vector<BisimProperty> bisim_properties(Fragment f, const BisimOptions& opts) {
  std::vector<BisimProperty> out{BisimProperty::AtomsForth, BisimProperty::AtomsBack, BisimProperty::CompForth,
                                 BisimProperty::CompBack};
  if (opts.projection.value_or(bisim_projection_enabled(f))) {
    out.push_back(BisimProperty::ProjForth);
    out.push_back(BisimProperty::ProjBack);
  }
  const bool res = opts.residuals.value_or(true);
  if (res && f.has(Feature::LRes)) {
    out.push_back(BisimProperty::LResForth);
    out.push_back(BisimProperty::LResBack);
  }
  if (res && f.has(Feature::RRes)) {
    out.push_back(BisimProperty::RResForth);
    out.push_back(BisimProperty::RResBack);
  }
  return out;
}

bool property_holds(BisimProperty p, const PairTuple& t, std::size_t i, const PairRelation& z, Fragment f,
                    const Structure& g1, const Structure& g2) {
  if (p == BisimProperty::AtomsForth || p == BisimProperty::AtomsBack) {
    Setup s(f, g1, g2);
    return p == BisimProperty::AtomsForth ? detail::atoms_subset(s.t1, t.a1, t.b1, s.t2, t.a2, t.b2)
                                          : detail::atoms_subset(s.t2, t.a2, t.b2, s.t1, t.a1, t.b1);
  }
  const std::size_t d = i == 0 ? 0 : i - 1;
  const PairSet p1 = paths_F(g1, f, d);
  const PairSet p2 = paths_F(g2, f, d);
  return check(p, Frame{p1, p2, g1.size(), g2.size()}, to_tuple(t), z);
}

bool is_bisimulation(const BisimSequence& zs, Fragment f, const Structure& g1, const Structure& g2,
                     const BisimOptions& opts) {
  require_negation(f);
  if (zs.empty()) return false;
  const std::size_t n1 = g1.size(), n2 = g2.size();
  for (const auto& z : zs) {
    if (z.left_size() != n1 || z.right_size() != n2) return false;
  }
  for (std::size_t i = 1; i < zs.size(); ++i) {
    if (!zs[i].subset_of(zs[i - 1])) return false;
  }
  Setup s(f, g1, g2);
  if (!zs[0].subset_of(atoms_relation(s, n1, n2))) return false;
  const auto props = bisim_properties(f, opts);
  PathTable p1(g1, f, zs.size()), p2(g2, f, zs.size());
  for (std::size_t i = 1; i < zs.size(); ++i) {
    const Frame fr{p1.at(i - 1), p2.at(i - 1), n1, n2};
    if (!zs[i].subset_of(refine(props, fr, zs[i - 1]))) return false;
  }
  return true;
}

BisimSequence max_bisimulation(Fragment f, const Structure& g1, const Structure& g2, std::size_t k,
                               const BisimOptions& opts) {
  require_negation(f);
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Setup s(f, g1, g2);
  const auto props = bisim_properties(f, opts);
  PathTable p1(g1, f, k), p2(g2, f, k);
  BisimSequence zs{atoms_relation(s, n1, n2)};
  for (std::size_t i = 1; i <= k; ++i) {
    const Frame fr{p1.at(i - 1), p2.at(i - 1), n1, n2};
    zs.push_back(refine(props, fr, zs.back()));
  }
  return zs;
}

bool bisimilar(Fragment f, std::size_t k, const MarkedStructure& m1, const MarkedStructure& m2) {
  return max_bisimulation(f, *m1.structure, *m2.structure, k).back().contains(m1.a, m1.b, m2.a, m2.b);
}

UnboundedRelation max_bisimulation_unbounded(Fragment f, const Structure& g1, const Structure& g2,
                                             const BisimOptions& opts) {
  require_negation(f);
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Setup s(f, g1, g2);
  const auto props = bisim_properties(f, opts);
  const PairSet p1 = paths_unbounded(g1, f), p2 = paths_unbounded(g2, f);
  const Frame fr{p1, p2, n1, n2};
  UnboundedRelation out{atoms_relation(s, n1, n2), 0};
  for (;;) {
    PairRelation next = refine(props, fr, out.z);
    ++out.rounds;
    if (next == out.z) break;
    out.z = std::move(next);
  }
  return out;
}

bool bisimilar_unbounded(Fragment f, const MarkedStructure& m1, const MarkedStructure& m2) {
  return max_bisimulation_unbounded(f, *m1.structure, *m2.structure).z.contains(m1.a, m1.b, m2.a, m2.b);
}

PairRelation max_arrow_bisimulation(const Structure& g1, const Structure& g2) {
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Setup s(Fragment{}, g1, g2);
  PairRelation z = atoms_relation(s, n1, n2);
  const BitMatrix all1 = BitMatrix::full(n1), all2 = BitMatrix::full(n2);
  const Frame fr{all1, all2, n1, n2};
  for (;;) {
    PairRelation next(n1, n2);
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      for (std::size_t b1 = 0; b1 < n1; ++b1) {
        for (auto [a2, b2] : z.slice(a1, b1).pairs()) {
          const Tuple t{a1, b1, a2, b2};
          if (z.get(b1, a1, b2, a2) && detail::comp_forth(fr, t, z) && detail::comp_back(fr, t, z))
            next.set(a1, b1, a2, b2);
        }
      }
    }
    if (next == z) return z;
    z = std::move(next);
  }
}

bool arrow_bisimilar(const MarkedStructure& m1, const MarkedStructure& m2) {
  return max_arrow_bisimulation(*m1.structure, *m2.structure).contains(m1.a, m1.b, m2.a, m2.b);
}

}  // namespace calrel
