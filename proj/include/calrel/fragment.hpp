#pragma once

// Operator fragments: a feature set added to the base operators
// 0, id, union, intersection and composition.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace calrel {

enum class Feature : std::uint16_t {
  Di = 1 << 0,
  One = 1 << 1,
  Conv = 1 << 2,
  Compl = 1 << 3,
  Pi = 1 << 4,
  Cpi = 1 << 5,
  Diff = 1 << 6,
  LRes = 1 << 7,
  RRes = 1 << 8,
};

inline constexpr Feature kAllFeatures[] = {Feature::Di,   Feature::One,  Feature::Conv,
                                           Feature::Compl, Feature::Pi,   Feature::Cpi,
                                           Feature::Diff, Feature::LRes, Feature::RRes};

std::string_view feature_name(Feature f);

enum class OnePresence { Degree0, Degree1, Absent };

std::string_view to_string(OnePresence p);

class Fragment {
 public:
  constexpr Fragment() = default;
  constexpr explicit Fragment(std::uint16_t bits) : bits_(bits & 0x1FF) {}
  Fragment(std::initializer_list<Feature> fs) {
    for (auto f : fs) bits_ |= static_cast<std::uint16_t>(f);
  }

  /// Comma-separated feature names; empty or whitespace-only text is the base fragment.
  static Fragment parse(std::string_view text);

  constexpr bool has(Feature f) const { return (bits_ & static_cast<std::uint16_t>(f)) != 0; }
  constexpr Fragment with(Feature f) const { return Fragment(static_cast<std::uint16_t>(bits_ | static_cast<std::uint16_t>(f))); }
  constexpr Fragment without(Feature f) const { return Fragment(static_cast<std::uint16_t>(bits_ & ~static_cast<std::uint16_t>(f))); }
  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool contains(Fragment other) const { return (other.bits_ & ~bits_) == 0; }

  /// Complement or difference present: indistinguishability is two-sided
  /// and decided by bisimulation.
  constexpr bool has_negation() const { return has(Feature::Compl) || has(Feature::Diff); }

  OnePresence one_presence() const;

  /// Canonical comma list in declaration order; "" for the base fragment.
  std::string to_string() const;

  friend constexpr bool operator==(Fragment a, Fragment b) { return a.bits_ == b.bits_; }

 private:
  std::uint16_t bits_ = 0;
};

inline OnePresence one_presence(Fragment f) { return f.one_presence(); }

}  // namespace calrel
