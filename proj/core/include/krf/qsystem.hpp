#pragma once

// The B-function and the Q-system for y-series truncated by I_l.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/series.hpp"

namespace krf {

/// 2 min(t_b m, t_a k) - min(t_b m, t_a (k+1)) - min(t_b m, t_a (k-1)).
std::int64_t b_coeff(const CartanData& c, ModeIndex am, ModeIndex bk);
/// Case-by-case form (t_a, t_b) = (2,1), (3,1), otherwise t_a delta_{t_b m, t_a k}.
std::int64_t b_coeff_closed_form(const CartanData& c, ModeIndex am, ModeIndex bk);
/// Every (b, k) with B_{am,bk} != 0, with its value.
std::vector<std::pair<ModeIndex, std::int64_t>> b_support(const CartanData& c, ModeIndex am);

/// Q_m^{(a)} for 1 <= m <= t_a l + 1, all truncated by I_l. Q_0 = 1 implicitly.
class QTable {
 public:
  QTable() = default;
  QTable(const CartanData& c, int level);

  int level() const { return level_; }
  int rank() const { return rank_; }
  const TruncationSpec& truncation() const { return spec_; }
  /// t_a l + 1
  int max_m(int a) const { return max_m_.at(a); }

  bool has(ModeIndex am) const { return am.m == 0 || entries_.count(am) > 0; }
  /// m = 0 yields 1.
  TruncatedSeries get(ModeIndex am) const;
  void set(ModeIndex am, TruncatedSeries q);
  const std::map<ModeIndex, TruncatedSeries>& entries() const { return entries_; }

 private:
  int level_ = 0;
  int rank_ = 0;
  TruncationSpec spec_;
  std::vector<int> max_m_;
  std::map<ModeIndex, TruncatedSeries> entries_;
};

/// prod_{(b,k)} Q_k^{(b)} ^ {-(alpha_a|alpha_b) B_{am,bk}}.
TruncatedSeries q_coupling_product(const CartanData& c, const QTable& table, ModeIndex am);

/// Solves the Q-system forward from Q_1^{(a)} = q1[a], filling the table in
/// the order of the filtration t_max (m-1) <= t_a (L-1).
/// Throws std::domain_error if some q1[a] is not a unit.
QTable q_forward(const CartanData& c, const std::vector<TruncatedSeries>& q1, int level);

struct QResidualReport {
  int checked = 0;
  /// Modes whose residual Q_m^2 - Q_{m+1} Q_{m-1} - y_a^m Q_m^2 prod(...) is nonzero.
  std::vector<std::pair<ModeIndex, TruncatedSeries>> residuals;
  bool clean() const { return residuals.empty(); }
};

/// Checks the Q-system relation at every (a, m) with 1 <= m <= t_a l.
QResidualReport check_qsystem(const CartanData& c, const QTable& table);

/// Per color: Q_m == Q_{m+1} mod y_a^{m+1} for every m >= 1 with both present.
std::vector<bool> check_convergence(const QTable& table);

struct BIdentityReport {
  std::int64_t checked = 0;
  std::vector<std::string> failures;
  bool clean() const { return failures.empty(); }
};

/// The closed form and the summation identities of B_{am,bk} for all
/// m, k <= max_index, and the H_l closure for l <= max_level.
BIdentityReport verify_b_identities(const CartanData& c, int max_index, int max_level = 4);

}  // namespace krf
