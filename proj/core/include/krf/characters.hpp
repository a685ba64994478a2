#pragma once

// Characters of finite-dimensional irreducible modules (Freudenthal's
// recursion), the classical-type KR characters, tensor products and the
// Weyl denominator.

#include <map>
#include <optional>
#include <vector>

#include "krf/cartan.hpp"
#include "krf/series.hpp"

namespace krf {

using Character = GroupAlgebraElement;

/// chi(lambda). With depth_limit set, only weights lambda - sum d_a alpha_a
/// with d_a <= depth_limit[a] are produced; those multiplicities are exact.
/// Throws std::invalid_argument if lambda is not dominant.
Character irreducible_character(const CartanData& c, const Weight& lambda,
                                const std::optional<std::vector<std::int64_t>>& depth_limit = std::nullopt);

/// prod_{alpha > 0} (lambda + rho | alpha) / (rho | alpha)
Integer weyl_dimension(const CartanData& c, const Weight& lambda);

/// The classical-type sums of irreducible characters for W_m^{(a)}
/// (a is 0-based). Throws std::invalid_argument for exceptional types.
std::map<Weight, Integer> classical_kr_decomposition(const CartanData& c, int a, int m);
Character classical_kr_character(const CartanData& c, int a, int m);

/// Coefficient of e^lambda in the product of the factors.
Integer tensor_weight_multiplicity(const CartanData& c, const std::vector<Character>& factors, const Weight& lambda);

/// prod_{alpha > 0} (1 - e^{-alpha})
Character weyl_denominator(const CartanData& c);
/// The same product as a y-series: prod (1 - prod_a y_a^{c_a}).
TruncatedSeries weyl_denominator_series(const CartanData& c, const TruncationSpec& spec);

/// Multiplicities of irreducibles, highest weights first extracted by (mu|rho).
/// Throws std::domain_error on a non-dominant leading weight or a negative multiplicity.
std::map<Weight, Integer> decompose_into_irreducibles(const CartanData& c, const Character& ch);

/// sum mult * chi(lambda)
Character character_from_decomposition(const CartanData& c, const std::map<Weight, Integer>& decomposition);

/// Multiplicity equal along every simple reflection of every support weight.
bool is_weyl_invariant(const CartanData& c, const Character& ch);

}  // namespace krf
