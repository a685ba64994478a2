#pragma once

// Vacancy numbers, the counting numbers R(nu, N) and K(nu, N), string
// pattern enumeration and the resulting multiplicities and y-series.

#include <optional>
#include <vector>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/numeric.hpp"
#include "krf/qsystem.hpp"
#include "krf/series.hpp"

namespace krf {

/// k (k-1) ... (k-j+1) / j! for j > 0, 1 for j = 0, 0 for j < 0.
Rational gen_binomial(const Rational& k, std::int64_t j);

/// gamma_m^{(a)} = sum_k min(m, k) nu_k^{(a)}.
std::int64_t gamma(const CartanData& c, const ModeMap& nu, ModeIndex am);

/// P_m^{(a)} = gamma_m^{(a)} - sum (alpha_a|alpha_b) min(t_b m, t_a k) N_k^{(b)}.
std::int64_t vacancy(const CartanData& c, const ModeMap& nu, const ModeMap& n, ModeIndex am);

struct CountReport {
  Integer value;
  Integer det_f;
  /// (1/N) binom(P + N - 1, N - 1) per mode of H'(N), in support order.
  std::vector<Rational> factors;
};

/// F_{am,bk} = delta P_m^{(a)} + (alpha_a|alpha_b) min(t_b m, t_a k) N_k^{(b)} over H'(N).
Matrix<Integer> f_matrix(const CartanData& c, const ModeMap& nu, const ModeMap& n);

/// R(nu, N); R(nu, 0) = 1 and R = 0 when N has a negative entry.
/// Throws IntegralityError if the product is not an integer.
CountReport r_number(const CartanData& c, const ModeMap& nu, const ModeMap& n);

/// K(nu, N) = prod binom(P + N, N).
Integer k_number(const CartanData& c, const ModeMap& nu, const ModeMap& n);

/// R(nu, N) as sum over J subset H'(N) of D_J prod binom(P[J] + N[J], N[J]).
Integer r_number_alt(const CartanData& c, const ModeMap& nu, const ModeMap& n);

/// Integer partitions of d as part-count vectors: result[i][m-1] = number of parts m.
const std::vector<std::vector<int>>& integer_partitions(int d);

/// Patterns N with sum m nu_m^{(a)} Lambda_a - sum m N_m^{(a)} alpha_a = lambda.
std::vector<ModeMap> enumerate_patterns(const CartanData& c, const ModeMap& nu, const Weight& lambda);
/// Patterns with sum_m m N_m^{(a)} = depth[a].
std::vector<ModeMap> patterns_of_depth(const std::vector<std::int64_t>& depth);

/// sum_a (sum_m m nu_m^{(a)}) Lambda_a
Weight top_weight(const CartanData& c, const ModeMap& nu);

Integer weight_multiplicity_r(const CartanData& c, const ModeMap& nu, const Weight& lambda);
Integer weight_multiplicity_k(const CartanData& c, const ModeMap& nu, const Weight& lambda);

/// sum_N R(nu, N) y^{sum m N}, truncated by I_l.
TruncatedSeries r_series(const CartanData& c, const ModeMap& nu, int level);
/// sum_N K(nu, N) y^{sum m N}, truncated by I_l.
TruncatedSeries k_series(const CartanData& c, const ModeMap& nu, int level);

/// Table of r_series(delta_m^{(a)}) for 1 <= m <= t_a l + 1.
QTable fermionic_qtable(const CartanData& c, int level);

struct WeightMultiplicity {
  Weight weight;
  Integer r;
  /// Filled for dominant weights only.
  std::optional<Integer> k;
};

/// Every weight of the form top - sum d_a alpha_a inside the Weyl-orbit box of
/// the top weight, with its r-multiplicity (zeros skipped).
std::vector<WeightMultiplicity> all_weight_multiplicities(const CartanData& c, const ModeMap& nu);

}  // namespace krf
