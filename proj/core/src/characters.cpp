#include "krf/characters.hpp"

#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace krf {

namespace {

using CacheKey = std::tuple<AlgebraId, Weight, std::vector<std::int64_t>>;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<CacheKey, Character>& cache() {
  static std::map<CacheKey, Character> c;
  return c;
}

Character freudenthal(const CartanData& c, const Weight& lambda, const std::vector<std::int64_t>& limit) {
  const int n = c.rank();
  const Weight rho = c.rho();
  const Rational top_norm = c.weight_form(lambda + rho, lambda + rho);
  std::vector<Weight> roots;
  for (const auto& r : c.positive_roots()) roots.push_back(c.root_to_weight(r));

  std::map<Weight, Integer> mult{{lambda, 1}};
  // Current layer: weights at a fixed height of lambda - mu, with their depth vectors.
  std::map<Weight, std::vector<std::int64_t>> layer{{lambda, std::vector<std::int64_t>(n, 0)}};
  auto lookup = [&](const Weight& mu) -> Integer {
    auto it = mult.find(mu);
    return it == mult.end() ? Integer(0) : it->second;
  };

  while (!layer.empty()) {
    std::map<Weight, std::vector<std::int64_t>> next;
    for (const auto& [w, depth] : layer) {
      for (int a = 0; a < n; ++a) {
        if (depth[a] >= limit[a]) continue;
        Weight mu = w - c.simple_root(a);
        if (next.count(mu)) continue;
        auto d = depth;
        ++d[a];
        next.emplace(std::move(mu), std::move(d));
      }
    }
    std::map<Weight, std::vector<std::int64_t>> kept;
    for (auto& [mu, depth] : next) {
      Integer m = 0;
      const Weight dom = c.dominant_conjugate(mu);
      if (dom != mu) {
        m = lookup(dom);
      } else {
        Rational num = 0;
        for (const Weight& alpha : roots) {
          Weight shifted = mu + alpha;
          for (Integer mk = lookup(shifted); mk != 0; shifted += alpha, mk = lookup(shifted)) {
            num += Rational(mk) * c.weight_form(shifted, alpha);
          }
        }
        const Rational den = top_norm - c.weight_form(mu + rho, mu + rho);
        if (num != 0) {
          if (den == 0) throw std::logic_error("Freudenthal: zero denominator");
          m = to_integer(2 * num / den, "Freudenthal multiplicity");
        }
      }
      if (m != 0) {
        mult.emplace(mu, m);
        kept.emplace(mu, depth);
      }
    }
    layer = std::move(kept);
  }
  Character ch(n);
  for (const auto& [w, m] : mult) ch.add_term(w, m);
  return ch;
}

}  // namespace

Character irreducible_character(const CartanData& c, const Weight& lambda,
                                const std::optional<std::vector<std::int64_t>>& depth_limit) {
  if (static_cast<int>(lambda.size()) != c.rank()) throw std::invalid_argument("character: rank mismatch");
  if (!lambda.is_dominant()) throw std::invalid_argument("character: weight " + lambda.str() + " is not dominant");
  std::vector<std::int64_t> limit =
      depth_limit ? *depth_limit : std::vector<std::int64_t>(c.rank(), std::numeric_limits<std::int64_t>::max());
  if (static_cast<int>(limit.size()) != c.rank()) throw std::invalid_argument("character: depth limit rank");
  const CacheKey key{c.id(), lambda, limit};
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  Character ch = freudenthal(c, lambda, limit);
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache().emplace(key, ch);
  return ch;
}

Integer weyl_dimension(const CartanData& c, const Weight& lambda) {
  const Weight rho = c.rho();
  Rational d = 1;
  for (const auto& r : c.positive_roots()) {
    const Weight alpha = c.root_to_weight(r);
    d *= c.weight_form(lambda + rho, alpha) / c.weight_form(rho, alpha);
  }
  return to_integer(d, "Weyl dimension");
}

std::map<Weight, Integer> classical_kr_decomposition(const CartanData& c, int a, int m) {
  const int n = c.rank();
  const char family = c.id().family;
  if (!c.id().is_classical()) throw std::invalid_argument("KR character formula only for classical types");
  if (a < 0 || a >= n || m < 0) throw std::out_of_range("classical_kr_decomposition: index");
  std::map<Weight, Integer> out;
  auto add = [&](const Weight& w) { out[w] += 1; };
  const int label = a + 1;  // 1-based vertex

  const bool single = family == 'A' || (family == 'C' && label == n) || (family == 'D' && label >= n - 1);
  if (single) {
    Weight w = Weight::zero(n);
    w[a] = m;
    add(w);
    return out;
  }

  if (family == 'B' || family == 'D') {
    // Labels a0, a0+2, ..., a with a0 = a mod 2; Lambda_0 = 0.
    std::vector<int> labels;
    for (int b = label % 2; b <= label; b += 2) labels.push_back(b);
    const int ta = c.t(a);
    std::vector<int> k(labels.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
      if (i + 1 == labels.size()) {
        // t_a (k_{a0} + ... + k_{a-2}) + k_a = m
        const int ka = m - ta * used;
        if (ka < 0) return;
        Weight w = Weight::zero(n);
        for (std::size_t j = 0; j + 1 < labels.size(); ++j)
          if (labels[j] > 0) w[labels[j] - 1] += k[j];
        w[a] += ka;
        add(w);
        return;
      }
      for (int v = 0; ta * (used + v) <= m; ++v) {
        k[i] = v;
        rec(i + 1, used + v);
      }
      k[i] = 0;
    };
    rec(0, 0);
    return out;
  }

  // C_n, a < n: k_1 + ... + k_a <= m with k_b = m delta_ab mod 2.
  std::vector<int> k(label, 0);
  std::function<void(int, int)> rec = [&](int b, int used) {
    if (b == label) {
      Weight w = Weight::zero(n);
      for (int j = 0; j < label; ++j) w[j] = k[j];
      add(w);
      return;
    }
    const int parity = (b == a) ? (m % 2) : 0;
    for (int v = parity; used + v <= m; v += 2) {
      k[b] = v;
      rec(b + 1, used + v);
    }
    k[b] = 0;
  };
  rec(0, 0);
  return out;
}

Character classical_kr_character(const CartanData& c, int a, int m) {
  return character_from_decomposition(c, classical_kr_decomposition(c, a, m));
}

Integer tensor_weight_multiplicity(const CartanData& c, const std::vector<Character>& factors, const Weight& lambda) {
  Character prod = Character::one(c.rank());
  for (const auto& f : factors) prod = prod * f;
  return prod.coefficient(lambda);
}

Character weyl_denominator(const CartanData& c) {
  Character prod = Character::one(c.rank());
  for (const auto& r : c.positive_roots()) {
    Character factor = Character::one(c.rank());
    factor.add_term(Weight::zero(c.rank()) - c.root_to_weight(r), -1);
    prod = prod * factor;
  }
  return prod;
}

TruncatedSeries weyl_denominator_series(const CartanData& c, const TruncationSpec& spec) {
  TruncatedSeries prod = TruncatedSeries::one(spec);
  for (const auto& r : c.positive_roots()) {
    std::vector<int> e(r.begin(), r.end());
    prod = mul(prod, TruncatedSeries::one(spec) - TruncatedSeries::monomial(spec, e));
  }
  return prod;
}

std::map<Weight, Integer> decompose_into_irreducibles(const CartanData& c, const Character& ch) {
  std::map<Weight, Integer> out;
  Character rest = ch;
  const Weight rho = c.rho();
  while (!rest.is_zero()) {
    const Weight* best = nullptr;
    Rational best_height;
    for (const auto& [w, m] : rest.terms()) {
      Rational h = c.weight_form(w, rho);
      if (!best || h > best_height) {
        best = &w;
        best_height = h;
      }
    }
    const Weight top = *best;
    const Integer mult = rest.coefficient(top);
    if (!top.is_dominant()) throw std::domain_error("decompose: leading weight " + top.str() + " is not dominant");
    if (mult < 0) throw std::domain_error("decompose: negative multiplicity at " + top.str());
    out[top] = mult;
    Character chi = irreducible_character(c, top);
    chi *= mult;
    rest -= chi;
  }
  return out;
}

Character character_from_decomposition(const CartanData& c, const std::map<Weight, Integer>& decomposition) {
  Character ch(c.rank());
  for (const auto& [w, m] : decomposition) {
    Character chi = irreducible_character(c, w);
    chi *= m;
    ch += chi;
  }
  return ch;
}

bool is_weyl_invariant(const CartanData& c, const Character& ch) {
  for (const auto& [w, m] : ch.terms()) {
    for (int a = 0; a < c.rank(); ++a) {
      if (ch.coefficient(c.reflect(a, w)) != m) return false;
    }
  }
  return true;
}

}  // namespace krf
