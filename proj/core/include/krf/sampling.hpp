#pragma once

// Seeded random instances shared by the command-line verifier and the
// acceptance suite.

#include <cstdint>
#include <optional>
#include <random>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/numeric.hpp"

namespace krf {

using Rng = std::mt19937_64;

/// `entries` random additions of 1..max_entry at colors < rank, 1 <= m <= max_m.
ModeMap random_mode_map(Rng& rng, int rank, int max_m, int max_entry, int entries);

struct SceCase {
  ModeMap nu;
  ModeMap pattern;
};

/// A pair (nu, N) with P >= 0 on the support of N, total string count
/// sum N <= max_dim, and 0 < |det A| <= max_det. Gives up after `attempts`.
std::optional<SceCase> random_sce_case(Rng& rng, const CartanData& c, int max_dim, const Integer& max_det,
                                       int attempts = 10000);

}  // namespace krf
