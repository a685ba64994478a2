#pragma once

// Mode indices (a, m) and finitely supported integer maps on them, used both
// for quantum-space data nu and for string patterns N.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krf/cartan.hpp"

namespace krf {

/// Color a is 0-based internally; string length m >= 1.
struct ModeIndex {
  int a = 0;
  int m = 1;
  auto operator<=>(const ModeIndex&) const = default;
};

/// (a, m) in H_l: 1 <= m <= t_a l.
inline bool in_level_set(const CartanData& c, int level, ModeIndex am) {
  return am.m >= 1 && am.m <= c.t(am.a) * level;
}

/// (a, m) in the filtration step t_max (m - 1) <= t_a (L - 1).
inline bool in_filtration(const CartanData& c, int step, ModeIndex am) {
  return am.m >= 1 && c.t_max() * (am.m - 1) <= c.t(am.a) * (step - 1);
}

/// All of H_l in lexicographic order.
std::vector<ModeIndex> level_set(const CartanData& c, int level);

class ModeMap {
 public:
  ModeMap() = default;

  std::int64_t get(ModeIndex am) const;
  std::int64_t operator[](ModeIndex am) const { return get(am); }
  /// Zero erases the entry.
  void set(ModeIndex am, std::int64_t value);
  void add(ModeIndex am, std::int64_t delta) { set(am, get(am) + delta); }

  /// H'(N): modes with nonzero value, lexicographic.
  std::vector<ModeIndex> support() const;
  const std::map<ModeIndex, std::int64_t>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  bool is_nonnegative() const;
  /// sum of all values
  std::int64_t total() const;
  /// sum_m m * value(a, m)
  std::int64_t weighted_degree(int a) const;
  int max_color() const;

  ModeMap& operator+=(const ModeMap& o);
  friend ModeMap operator+(ModeMap x, const ModeMap& y) { return x += y; }
  bool operator==(const ModeMap&) const = default;
  auto operator<=>(const ModeMap&) const = default;

  /// delta_m^{(a)}
  static ModeMap unit(ModeIndex am, std::int64_t value = 1);

  /// [{"a": 1-based, "m": .., "mult": ..}, ...]
  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on malformed entries or colors >= rank.
  static ModeMap from_json(const nlohmann::json& j, int rank);
  /// Compact "a:m:mult,a:m:mult" form (1-based a).
  static ModeMap parse_compact(const std::string& text, int rank);
  std::string str() const;

 private:
  std::map<ModeIndex, std::int64_t> entries_;
};

}  // namespace krf
