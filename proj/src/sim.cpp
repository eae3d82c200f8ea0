#include "calrel/sim.hpp"

#include <algorithm>

#include "calrel/error.hpp"
#include "calrel/paths.hpp"
#include "conditions.hpp"

namespace calrel {

namespace {

using detail::AtomTable;
using detail::Frame;
using detail::Tuple;

void require_positive(Fragment f) {
  if (f.has_negation()) throw WrongFragment("simulation is defined only without compl and diff");
}

bool check(SimProperty p, const Frame& fr, const Tuple& t, const PairRelation& z, const PairRelation& w) {
  switch (p) {
    case SimProperty::AtomsForth:
    case SimProperty::AtomsBack: return true;
    case SimProperty::CompForth: return detail::comp_forth(fr, t, z);
    case SimProperty::CompBack: return detail::comp_back(fr, t, w);
    case SimProperty::ProjForth: return detail::proj_forth(fr, t, z);
    case SimProperty::ProjBack: return detail::proj_back(fr, t, w);
    case SimProperty::CoprForth: return detail::copr_forth(fr, t, w);
    case SimProperty::CoprBack: return detail::copr_back(fr, t, z);
    case SimProperty::LResForth: return detail::lres_forth(fr, t, w, z);
    case SimProperty::LResBack: return detail::lres_back(fr, t, z, w);
    case SimProperty::RResForth: return detail::rres_forth(fr, t, w, z);
    case SimProperty::RResBack: return detail::rres_back(fr, t, z, w);
  }
  return false;
}

struct Atoms {
  PairRelation z;
  PairRelation w;
};

Atoms atoms_relations(Fragment f, const Structure& g1, const Structure& g2) {
  const auto vocab = merge_vocabulary(g1, g2);
  const AtomTable t1(g1, f, vocab), t2(g2, f, vocab);
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Atoms out{PairRelation(n1, n2), PairRelation(n1, n2)};
  for (std::size_t a1 = 0; a1 < n1; ++a1)
    for (std::size_t b1 = 0; b1 < n1; ++b1)
      for (std::size_t a2 = 0; a2 < n2; ++a2)
        for (std::size_t b2 = 0; b2 < n2; ++b2) {
          if (detail::atoms_subset(t1, a1, b1, t2, a2, b2)) out.z.set(a1, b1, a2, b2);
          if (detail::atoms_subset(t2, a2, b2, t1, a1, b1)) out.w.set(a1, b1, a2, b2);
        }
  return out;
}

// One lockstep round: both results read only the previous z and w.
std::pair<PairRelation, PairRelation> refine(const std::vector<SimProperty>& props, const Frame& fr,
                                             const PairRelation& z, const PairRelation& w, bool refine_w) {
  PairRelation nz(fr.n1, fr.n2), nw(fr.n1, fr.n2);
  auto keep = [&](const Tuple& t, bool forth) {
    for (auto p : props) {
      if (is_forth(p) == forth && !check(p, fr, t, z, w)) return false;
    }
    return true;
  };
  for (std::size_t a1 = 0; a1 < fr.n1; ++a1) {
    for (std::size_t b1 = 0; b1 < fr.n1; ++b1) {
      for (auto [a2, b2] : z.slice(a1, b1).pairs()) {
        if (keep(Tuple{a1, b1, a2, b2}, true)) nz.set(a1, b1, a2, b2);
      }
      if (!refine_w) continue;
      for (auto [a2, b2] : w.slice(a1, b1).pairs()) {
        if (keep(Tuple{a1, b1, a2, b2}, false)) nw.set(a1, b1, a2, b2);
      }
    }
  }
  if (!refine_w) nw = w;
  return {std::move(nz), std::move(nw)};
}

}  // namespace

bool sim_projection_enabled(Fragment f) {
  return f.has(Feature::Pi) || f.has(Feature::Conv) || f.has(Feature::Di) || f.has(Feature::One);
}

bool is_forth(SimProperty p) {
  switch (p) {
    case SimProperty::AtomsForth:
    case SimProperty::CompForth:
    case SimProperty::ProjForth:
    case SimProperty::CoprForth:
    case SimProperty::LResForth:
    case SimProperty::RResForth: return true;
    default: return false;
  }
}

std::vector<SimProperty> sim_properties(Fragment f, const SimOptions& opts) {
  std::vector<SimProperty> out{SimProperty::AtomsForth, SimProperty::AtomsBack, SimProperty::CompForth,
                               SimProperty::CompBack};
  if (opts.projection.value_or(sim_projection_enabled(f))) {
    out.push_back(SimProperty::ProjForth);
    out.push_back(SimProperty::ProjBack);
  }
  if (f.has(Feature::Cpi)) {
    out.push_back(SimProperty::CoprForth);
    out.push_back(SimProperty::CoprBack);
  }
  if (f.has(Feature::LRes)) {
    out.push_back(SimProperty::LResForth);
    out.push_back(SimProperty::LResBack);
  }
  if (f.has(Feature::RRes)) {
    out.push_back(SimProperty::RResForth);
    out.push_back(SimProperty::RResBack);
  }
  return out;
}

bool sim_property_holds(SimProperty p, const PairTuple& t, std::size_t i, const PairRelation& z,
                        const PairRelation& w, Fragment f, const Structure& g1, const Structure& g2) {
  if (p == SimProperty::AtomsForth || p == SimProperty::AtomsBack) {
    const Atoms a = atoms_relations(f, g1, g2);
    return (p == SimProperty::AtomsForth ? a.z : a.w).contains(t.a1, t.b1, t.a2, t.b2);
  }
  const std::size_t d = i == 0 ? 0 : i - 1;
  const PairSet p1 = paths_F(g1, f, d);
  const PairSet p2 = paths_F(g2, f, d);
  return check(p, Frame{p1, p2, g1.size(), g2.size()}, Tuple{t.a1, t.b1, t.a2, t.b2}, z, w);
}

bool is_simulation(const SimPair& s, Fragment f, const Structure& g1, const Structure& g2) {
  require_positive(f);
  if (s.z.empty() || s.z.size() != s.w.size()) return false;
  const std::size_t n1 = g1.size(), n2 = g2.size();
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    for (const auto* r : {&s.z[i], &s.w[i]}) {
      if (r->left_size() != n1 || r->right_size() != n2) return false;
    }
    if (i > 0 && (!s.z[i].subset_of(s.z[i - 1]) || !s.w[i].subset_of(s.w[i - 1]))) return false;
  }
  const Atoms a = atoms_relations(f, g1, g2);
  if (!s.z[0].subset_of(a.z) || !s.w[0].subset_of(a.w)) return false;
  const auto props = sim_properties(f);
  PathTable p1(g1, f, s.z.size()), p2(g2, f, s.z.size());
  for (std::size_t i = 1; i < s.z.size(); ++i) {
    const Frame fr{p1.at(i - 1), p2.at(i - 1), n1, n2};
    auto [rz, rw] = refine(props, fr, s.z[i - 1], s.w[i - 1], true);
    if (!s.z[i].subset_of(rz) || !s.w[i].subset_of(rw)) return false;
  }
  return true;
}

SimPair max_simulation(Fragment f, const Structure& g1, const Structure& g2, std::size_t k, const SimOptions& opts) {
  require_positive(f);
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Atoms a = atoms_relations(f, g1, g2);
  const auto props = sim_properties(f, opts);
  PathTable p1(g1, f, k), p2(g2, f, k);
  SimPair out;
  out.z.push_back(std::move(a.z));
  out.w.push_back(std::move(a.w));
  for (std::size_t i = 1; i <= k; ++i) {
    const Frame fr{p1.at(i - 1), p2.at(i - 1), n1, n2};
    auto [nz, nw] = refine(props, fr, out.z.back(), out.w.back(), opts.refine_w);
    out.z.push_back(std::move(nz));
    out.w.push_back(std::move(nw));
  }
  return out;
}

bool similar(Fragment f, std::size_t k, const MarkedStructure& m1, const MarkedStructure& m2) {
  return max_simulation(f, *m1.structure, *m2.structure, k).z.back().contains(m1.a, m1.b, m2.a, m2.b);
}

UnboundedSim max_simulation_unbounded(Fragment f, const Structure& g1, const Structure& g2, const SimOptions& opts) {
  require_positive(f);
  const std::size_t n1 = g1.size(), n2 = g2.size();
  Atoms a = atoms_relations(f, g1, g2);
  const auto props = sim_properties(f, opts);
  const PairSet p1 = paths_unbounded(g1, f), p2 = paths_unbounded(g2, f);
  const Frame fr{p1, p2, n1, n2};
  UnboundedSim out{std::move(a.z), std::move(a.w), 0};
  for (;;) {
    auto [nz, nw] = refine(props, fr, out.z, out.w, opts.refine_w);
    ++out.rounds;
    if (nz == out.z && nw == out.w) break;
    out.z = std::move(nz);
    out.w = std::move(nw);
  }
  return out;
}

bool similar_unbounded(Fragment f, const MarkedStructure& m1, const MarkedStructure& m2) {
  return max_simulation_unbounded(f, *m1.structure, *m2.structure).z.contains(m1.a, m1.b, m2.a, m2.b);
}

namespace {

bool in_paths(Fragment f, DegreeBound k, const MarkedStructure& m) {
  const PairSet p = k ? paths_F(*m.structure, f, *k) : paths_unbounded(*m.structure, f);
  return p.test(m.a, m.b);
}

bool one_sided(Fragment f, DegreeBound k, const MarkedStructure& m1, const MarkedStructure& m2) {
  if (f.has_negation()) {
    // Nothing of the fragment holds outside the path set.
    if (!in_paths(f, k, m1)) return true;
    return k ? bisimilar(f, *k, m1, m2) : bisimilar_unbounded(f, m1, m2);
  }
  return k ? similar(f, *k, m1, m2) : similar_unbounded(f, m1, m2);
}

}  // namespace

bool indistinguishable(Fragment f, DegreeBound k, const MarkedStructure& m1, const MarkedStructure& m2,
                       Direction dir) {
  if (dir == Direction::OneSided) return one_sided(f, k, m1, m2);
  if (f.has_negation()) {
    const bool in1 = in_paths(f, k, m1), in2 = in_paths(f, k, m2);
    if (!in1 && !in2) return true;
    if (in1 != in2) return false;
    return k ? bisimilar(f, *k, m1, m2) : bisimilar_unbounded(f, m1, m2);
  }
  return one_sided(f, k, m1, m2) && one_sided(f, k, m2, m1);
}

}  // namespace calrel
