#include "calrel/fragment.hpp"

#include "calrel/error.hpp"

namespace calrel {

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::Di: return "di";
    case Feature::One: return "one";
    case Feature::Conv: return "conv";
    case Feature::Compl: return "compl";
    case Feature::Pi: return "pi";
    case Feature::Cpi: return "cpi";
    case Feature::Diff: return "diff";
    case Feature::LRes: return "lres";
    case Feature::RRes: return "rres";
  }
  return "?";
}

std::string_view to_string(OnePresence p) {
  switch (p) {
    case OnePresence::Degree0: return "degree0";
    case OnePresence::Degree1: return "degree1";
    case OnePresence::Absent: return "absent";
  }
  return "?";
}

Fragment Fragment::parse(std::string_view text) {
  Fragment f;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (!tok.empty()) {
      bool found = false;
      for (auto feat : kAllFeatures) {
        if (feature_name(feat) == tok) {
          f = f.with(feat);
          found = true;
        }
      }
      if (!found) throw Error("unknown fragment feature '" + std::string(tok) + "'");
    } else if (comma != text.size() || pos != 0) {
      // Empty entries are tolerated only when the whole list is empty.
      if (text.find_first_not_of(" \t,") != std::string_view::npos) throw Error("empty entry in fragment list");
    }
    pos = comma + 1;
  }
  return f;
}

OnePresence Fragment::one_presence() const {
  if (has(Feature::One) || has(Feature::Di) || has(Feature::Compl)) return OnePresence::Degree0;
  if (has(Feature::LRes) || has(Feature::RRes)) return OnePresence::Degree1;
  return OnePresence::Absent;
}

std::string Fragment::to_string() const {
  std::string out;
  for (auto feat : kAllFeatures) {
    if (!has(feat)) continue;
    if (!out.empty()) out += ',';
    out += feature_name(feat);
  }
  return out;
}

}  // namespace calrel
