#include "krf/sampling.hpp"

#include <vector>

#include "krf/fermionic.hpp"
#include "krf/sce.hpp"

namespace krf {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

ModeMap random_mode_map(Rng& rng, int rank, int max_m, int max_entry, int entries) {
  ModeMap n;
  for (int i = 0; i < entries; ++i) n.add({uniform(rng, 0, rank - 1), uniform(rng, 1, max_m)}, uniform(rng, 1, max_entry));
  return n;
}

std::optional<SceCase> random_sce_case(Rng& rng, const CartanData& c, int max_dim, const Integer& max_det,
                                       int attempts) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ModeMap pattern;
    const int d = uniform(rng, 1, max_dim);
    // Few distinct modes, so that groups of equal strings are common.
    std::vector<ModeIndex> modes(static_cast<std::size_t>(uniform(rng, 1, d)));
    for (auto& am : modes) am = {uniform(rng, 0, c.rank() - 1), uniform(rng, 1, 3)};
    for (int i = 0; i < d; ++i) pattern.add(modes[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(modes.size()) - 1))], 1);
    ModeMap nu = random_mode_map(rng, c.rank(), 3, 4, uniform(rng, 1, 4));
    bool ok = true;
    for (const ModeIndex& am : pattern.support()) ok = ok && vacancy(c, nu, pattern, am) >= 0;
    if (!ok) continue;
    const Integer det = abs(bareiss_determinant(build_sce(c, nu, pattern).a));
    if (det == 0 || det > max_det) continue;
    return SceCase{std::move(nu), std::move(pattern)};
  }
  return std::nullopt;
}

}  // namespace krf
