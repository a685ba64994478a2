#include "krf/fermionic.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "krf/qsystem.hpp"

namespace krf {

Rational gen_binomial(const Rational& k, std::int64_t j) {
  if (j < 0) return 0;
  Rational r = 1;
  for (std::int64_t i = 0; i < j; ++i) {
    r *= (k - i);
    r /= (i + 1);
  }
  return r;
}

namespace {

Integer integer_binomial(std::int64_t top, std::int64_t j) {
  if (j < 0) return 0;
  if (j == 0) return 1;
  if (top >= 0) {
    if (top < j) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(j));
    return r;
  }
  // binom(-x, j) = (-1)^j binom(x + j - 1, j)
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(-top + j - 1), static_cast<unsigned long>(j));
  return (j % 2) ? Integer(-r) : r;
}

}  // namespace

std::int64_t gamma(const CartanData&, const ModeMap& nu, ModeIndex am) {
  std::int64_t s = 0;
  for (const auto& [bk, v] : nu.entries()) {
    if (bk.a == am.a) s += std::int64_t(std::min(am.m, bk.m)) * v;
  }
  return s;
}

std::int64_t vacancy(const CartanData& c, const ModeMap& nu, const ModeMap& n, ModeIndex am) {
  std::int64_t p = gamma(c, nu, am);
  for (const auto& [bk, v] : n.entries()) {
    if (c.cartan(am.a, bk.a) == 0) continue;
    p -= c.pairing_min(am.a, am.m, bk.a, bk.m) * v;
  }
  return p;
}

Matrix<Integer> f_matrix(const CartanData& c, const ModeMap& nu, const ModeMap& n) {
  const auto h = n.support();
  const std::size_t d = h.size();
  Matrix<Integer> f(d, std::vector<Integer>(d, Integer(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      f[i][j] = Integer(c.pairing_min(h[i].a, h[i].m, h[j].a, h[j].m)) * Integer(n.get(h[j]));
    }
    f[i][i] += vacancy(c, nu, n, h[i]);
  }
  return f;
}

CountReport r_number(const CartanData& c, const ModeMap& nu, const ModeMap& n) {
  CountReport rep;
  if (!n.is_nonnegative()) {
    rep.value = 0;
    rep.det_f = 0;
    return rep;
  }
  if (n.is_zero()) {
    rep.value = 1;
    rep.det_f = 1;
    return rep;
  }
  rep.det_f = bareiss_determinant(f_matrix(c, nu, n));
  Rational value = Rational(rep.det_f);
  for (const ModeIndex& am : n.support()) {
    const std::int64_t nn = n.get(am);
    const std::int64_t p = vacancy(c, nu, n, am);
    Rational factor = Rational(integer_binomial(p + nn - 1, nn - 1)) / Rational(nn);
    value *= factor;
    rep.factors.push_back(std::move(factor));
  }
  rep.value = to_integer(value, "R(nu,N)");
  return rep;
}

Integer k_number(const CartanData& c, const ModeMap& nu, const ModeMap& n) {
  Integer value = 1;
  for (const auto& [am, nn] : n.entries()) {
    value *= integer_binomial(vacancy(c, nu, n, am) + nn, nn);
    if (value == 0) break;
  }
  return value;
}

Integer r_number_alt(const CartanData& c, const ModeMap& nu, const ModeMap& n) {
  if (!n.is_nonnegative()) return 0;
  const auto h = n.support();
  const std::size_t d = h.size();
  if (d > 20) throw std::invalid_argument("r_number_alt: support too large for subset sum");
  Matrix<Integer> dmat(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      dmat[i][j] = c.pairing_min(h[i].a, h[i].m, h[j].a, h[j].m) - (i == j ? 1 : 0);
    }
  }
  Integer total = 0;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) idx.push_back(i);

    Integer dj = 1;
    if (!idx.empty()) {
      Matrix<Integer> sub(idx.size(), std::vector<Integer>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = dmat[idx[i]][idx[j]];
      dj = bareiss_determinant(std::move(sub));
      if (dj == 0) continue;
    }

    ModeMap nu_j = nu;
    ModeMap n_j = n;
    for (std::size_t i : idx) {
      const ModeIndex bk = h[i];
      n_j.add(bk, -1);
      for (const auto& [am, b] : b_support(c, bk)) {
        if (c.cartan(am.a, bk.a) == 0) continue;
        nu_j.add(am, -c.form_times(am.a, bk.a, b));
      }
    }
    Integer term = dj;
    for (const auto& [am, nn] : n_j.entries()) {
      term *= integer_binomial(vacancy(c, nu_j, n_j, am) + nn, nn);
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

const std::vector<std::vector<int>>& integer_partitions(int d) {
  static std::mutex mutex;
  static std::deque<std::vector<std::vector<int>>> cache;  // stable references
  if (d < 0) throw std::invalid_argument("integer_partitions: negative size");
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(cache.size()) <= d) {
    const int n = static_cast<int>(cache.size());
    std::vector<std::vector<int>> parts;
    std::vector<int> counts(std::max(n, 1), 0);
    // Largest part first, descending.
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
      if (remaining == 0) {
        parts.push_back(std::vector<int>(counts.begin(), counts.begin() + n));
        return;
      }
      for (int p = std::min(remaining, max_part); p >= 1; --p) {
        ++counts[p - 1];
        rec(remaining - p, p);
        --counts[p - 1];
      }
    };
    rec(n, n);
    cache.push_back(std::move(parts));
  }
  return cache[d];
}

std::vector<ModeMap> patterns_of_depth(const std::vector<std::int64_t>& depth) {
  std::vector<ModeMap> out{ModeMap{}};
  for (std::size_t a = 0; a < depth.size(); ++a) {
    if (depth[a] < 0) return {};
    if (depth[a] > 1000) throw std::invalid_argument("patterns_of_depth: depth too large");
    const auto& parts = integer_partitions(static_cast<int>(depth[a]));
    std::vector<ModeMap> next;
    next.reserve(out.size() * parts.size());
    for (const ModeMap& base : out) {
      for (const auto& counts : parts) {
        ModeMap n = base;
        for (std::size_t i = 0; i < counts.size(); ++i) {
          if (counts[i]) n.set({static_cast<int>(a), static_cast<int>(i + 1)}, counts[i]);
        }
        next.push_back(std::move(n));
      }
    }
    out = std::move(next);
  }
  return out;
}

Weight top_weight(const CartanData& c, const ModeMap& nu) {
  Weight w = Weight::zero(c.rank());
  for (const auto& [am, v] : nu.entries()) {
    if (am.a >= c.rank()) throw std::invalid_argument("mode color exceeds rank");
    w[am.a] += std::int64_t(am.m) * v;
  }
  return w;
}

std::vector<ModeMap> enumerate_patterns(const CartanData& c, const ModeMap& nu, const Weight& lambda) {
  auto depth = c.weight_to_root(top_weight(c, nu) - lambda);
  if (!depth) return {};
  return patterns_of_depth(*depth);
}

Integer weight_multiplicity_r(const CartanData& c, const ModeMap& nu, const Weight& lambda) {
  Integer s = 0;
  for (const ModeMap& n : enumerate_patterns(c, nu, lambda)) s += r_number(c, nu, n).value;
  return s;
}

Integer weight_multiplicity_k(const CartanData& c, const ModeMap& nu, const Weight& lambda) {
  Integer s = 0;
  for (const ModeMap& n : enumerate_patterns(c, nu, lambda)) s += k_number(c, nu, n);
  return s;
}

namespace {

template <class Count>
TruncatedSeries pattern_series(const CartanData& c, int level, Count&& count) {
  const TruncationSpec spec = TruncationSpec::for_level(c, level);
  TruncatedSeries s(spec);
  std::vector<std::int64_t> depth(c.rank(), 0);
  // Odometer over the box d_a <= t_a l.
  while (true) {
    Rational coeff = 0;
    for (const ModeMap& n : patterns_of_depth(depth)) coeff += Rational(count(n));
    std::vector<int> e(depth.begin(), depth.end());
    s.add_term(e, coeff);
    int a = 0;
    for (; a < c.rank(); ++a) {
      if (depth[a] < spec.max_degree[a]) {
        ++depth[a];
        break;
      }
      depth[a] = 0;
    }
    if (a == c.rank()) break;
  }
  return s;
}

}  // namespace

TruncatedSeries r_series(const CartanData& c, const ModeMap& nu, int level) {
  return pattern_series(c, level, [&](const ModeMap& n) { return r_number(c, nu, n).value; });
}

TruncatedSeries k_series(const CartanData& c, const ModeMap& nu, int level) {
  return pattern_series(c, level, [&](const ModeMap& n) { return k_number(c, nu, n); });
}

QTable fermionic_qtable(const CartanData& c, int level) {
  QTable table(c, level);
  for (int a = 0; a < c.rank(); ++a) {
    for (int m = 1; m <= table.max_m(a); ++m) table.set({a, m}, r_series(c, ModeMap::unit({a, m}), level));
  }
  return table;
}

std::vector<WeightMultiplicity> all_weight_multiplicities(const CartanData& c, const ModeMap& nu) {
  const Weight top = top_weight(c, nu);
  const Weight lowest = c.antidominant_conjugate(top);
  auto box = c.weight_to_root(top - lowest);
  if (!box) throw std::logic_error("lowest weight not in the root lattice of the top weight");
  std::vector<WeightMultiplicity> out;
  std::vector<std::int64_t> depth(c.rank(), 0);
  while (true) {
    Weight lambda = top - c.root_to_weight(depth);
    Integer r = 0;
    Integer k = 0;
    const bool dominant = lambda.is_dominant();
    for (const ModeMap& n : patterns_of_depth(depth)) {
      r += r_number(c, nu, n).value;
      if (dominant) k += k_number(c, nu, n);
    }
    if (r != 0 || (dominant && k != 0)) {
      out.push_back({lambda, r, dominant ? std::optional<Integer>(k) : std::nullopt});
    }
    int a = 0;
    for (; a < c.rank(); ++a) {
      if (depth[a] < (*box)[a]) {
        ++depth[a];
        break;
      }
      depth[a] = 0;
    }
    if (a == c.rank()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.weight > y.weight; });
  return out;
}

}  // namespace krf
