#include "krf/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace krf {

namespace {

using IntMatrix = std::vector<std::vector<int>>;

void add_simple_edge(IntMatrix& c, int a, int b) {
  c[a][b] = -1;
  c[b][a] = -1;
}

IntMatrix chain(int n) {
  IntMatrix c(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a) c[a][a] = 2;
  for (int a = 0; a + 1 < n; ++a) add_simple_edge(c, a, a + 1);
  return c;
}

void check_rank(const AlgebraId& id) {
  const int n = id.rank;
  bool ok = false;
  switch (id.family) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 2; break;
    case 'D': ok = n >= 3; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: throw std::invalid_argument(std::string("unknown Lie algebra family '") + id.family + "'");
  }
  if (!ok) throw std::invalid_argument("invalid rank for family: " + id.name());
  if (n > 8) throw std::invalid_argument("rank above 8 is not supported: " + id.name());
}

}  // namespace

AlgebraId AlgebraId::parse(const std::string& text) {
  if (text.size() < 2) throw std::invalid_argument("bad algebra name '" + text + "'");
  AlgebraId id;
  id.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string digits = text.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw std::invalid_argument("bad algebra name '" + text + "'");
  }
  id.rank = std::stoi(digits);
  check_rank(id);
  return id;
}

std::string AlgebraId::name() const { return std::string(1, family) + std::to_string(rank); }

bool Weight::is_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.size() != size()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.size() != size()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string Weight::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + "]";
}

std::vector<RootCoords> compute_positive_roots(const std::vector<std::vector<int>>& cartan) {
  const int n = static_cast<int>(cartan.size());
  std::set<RootCoords> known;
  std::vector<RootCoords> layer;
  for (int a = 0; a < n; ++a) {
    RootCoords r(n, 0);
    r[a] = 1;
    known.insert(r);
    layer.push_back(r);
  }
  std::vector<RootCoords> all = layer;
  while (!layer.empty()) {
    std::set<RootCoords> next;
    for (const auto& beta : layer) {
      for (int a = 0; a < n; ++a) {
        // Length p of the a-string below beta.
        int p = 0;
        RootCoords down = beta;
        while (true) {
          down[a] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        std::int64_t pairing = 0;  // <beta, alpha_a^vee>
        for (int b = 0; b < n; ++b) pairing += beta[b] * cartan[a][b];
        if (p - pairing > 0) {
          RootCoords up = beta;
          up[a] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& r : layer) {
      known.insert(r);
      all.push_back(r);
    }
  }
  return all;
}

std::size_t expected_positive_root_count(AlgebraId id) {
  const std::size_t n = static_cast<std::size_t>(id.rank);
  switch (id.family) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
    default: return 0;
  }
}

CartanData CartanData::build(AlgebraId id) {
  check_rank(id);
  const int n = id.rank;
  IntMatrix c = chain(n);
  std::vector<int> t(n, 1);
  switch (id.family) {
    case 'A': break;
    case 'B':
      t[n - 1] = 2;
      c[n - 1][n - 2] = -2;
      break;
    case 'C':
      for (int a = 0; a + 1 < n; ++a) t[a] = 2;
      c[n - 2][n - 1] = -2;
      break;
    case 'D':
      c = chain(n - 1);
      for (auto& row : c) row.push_back(0);
      c.emplace_back(n, 0);
      c[n - 1][n - 1] = 2;
      add_simple_edge(c, n - 3, n - 1);
      break;
    case 'E': {
      c = chain(n - 1);
      for (auto& row : c) row.push_back(0);
      c.emplace_back(n, 0);
      c[n - 1][n - 1] = 2;
      add_simple_edge(c, n == 8 ? 4 : 2, n - 1);
      break;
    }
    case 'F':
      t = {1, 1, 2, 2};
      c[2][1] = -2;
      break;
    case 'G':
      t = {1, 3};
      c[1][0] = -3;
      break;
  }

  CartanData d;
  d.id_ = id;
  d.rank_ = n;
  d.cartan_ = c;
  d.t_ = t;
  d.t_max_ = *std::max_element(t.begin(), t.end());
  d.form_.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) d.form_[a][b] = make_rational(c[a][b], t[a]);
  }
  for (int a = 0; a < n; ++a) {
    if (c[a][a] != 2) throw std::logic_error("Cartan diagonal must be 2");
    if (d.form_[a][a] != make_rational(2, t[a])) throw std::logic_error("(alpha_a|alpha_a) != 2/t_a");
    for (int b = 0; b < n; ++b) {
      if (a != b && c[a][b] > 0) throw std::logic_error("positive off-diagonal Cartan entry");
      if (d.form_[a][b] != d.form_[b][a]) throw std::logic_error("bilinear form is not symmetric for " + id.name());
      if (!is_integer(Rational(d.form_[a][b] * t[a]))) throw std::logic_error("form denominator does not divide t_a");
    }
  }

  Matrix<Rational> cq(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cq[a][b] = c[a][b];
  d.cartan_inverse_ = rational_inverse(cq);
  d.weight_gram_.assign(n, std::vector<Rational>(n));
  for (int b = 0; b < n; ++b)
    for (int cc = 0; cc < n; ++cc) d.weight_gram_[b][cc] = d.cartan_inverse_[cc][b] / t[cc];

  d.positive_roots_ = compute_positive_roots(c);
  if (d.positive_roots_.size() != expected_positive_root_count(id)) {
    throw std::logic_error("positive root count mismatch for " + id.name());
  }
  return d;
}

std::int64_t CartanData::pairing_min(int a, int m, int b, int k) const {
  return form_times(a, b, std::min<std::int64_t>(std::int64_t(t_[b]) * m, std::int64_t(t_[a]) * k));
}

std::int64_t CartanData::form_times(int a, int b, std::int64_t x) const {
  const std::int64_t num = std::int64_t(cartan_[a][b]) * x;
  if (num % t_[a] != 0) throw IntegralityError("(alpha_a|alpha_b)*x is not an integer");
  return num / t_[a];
}

Weight CartanData::simple_root(int a) const {
  Weight w = Weight::zero(rank_);
  for (int b = 0; b < rank_; ++b) w[b] = cartan_[b][a];
  return w;
}

Weight CartanData::root_to_weight(const RootCoords& coeffs) const {
  Weight w = Weight::zero(rank_);
  for (int a = 0; a < rank_; ++a) {
    if (coeffs[a] == 0) continue;
    for (int b = 0; b < rank_; ++b) w[b] += coeffs[a] * cartan_[b][a];
  }
  return w;
}

std::optional<RootCoords> CartanData::weight_to_root(const Weight& lambda) const {
  RootCoords d(rank_, 0);
  for (int a = 0; a < rank_; ++a) {
    Rational s = 0;
    for (int b = 0; b < rank_; ++b) s += cartan_inverse_[a][b] * static_cast<long>(lambda[b]);
    if (!is_integer(s)) return std::nullopt;
    d[a] = to_int64(s.get_num(), "weight_to_root");
  }
  return d;
}

Rational CartanData::weight_form(const Weight& lambda, const Weight& mu) const {
  Rational s = 0;
  for (int a = 0; a < rank_; ++a) {
    if (lambda[a] == 0) continue;
    for (int b = 0; b < rank_; ++b) {
      if (mu[b] == 0) continue;
      s += weight_gram_[a][b] * static_cast<long>(lambda[a] * mu[b]);
    }
  }
  return s;
}

Weight CartanData::rho() const { return Weight(std::vector<std::int64_t>(rank_, 1)); }

Weight CartanData::fundamental(int a) const {
  Weight w = Weight::zero(rank_);
  w[a] = 1;
  return w;
}

Weight CartanData::reflect(int a, const Weight& lambda) const {
  const std::int64_t s = lambda[a];
  Weight r = lambda;
  if (s == 0) return r;
  for (int b = 0; b < rank_; ++b) r[b] -= s * cartan_[b][a];
  return r;
}

Weight CartanData::dominant_conjugate(Weight lambda) const {
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < rank_; ++a) {
      if (lambda[a] < 0) {
        lambda = reflect(a, lambda);
        changed = true;
      }
    }
  }
  return lambda;
}

Weight CartanData::antidominant_conjugate(Weight lambda) const {
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < rank_; ++a) {
      if (lambda[a] > 0) {
        lambda = reflect(a, lambda);
        changed = true;
      }
    }
  }
  return lambda;
}

std::uint64_t CartanData::weyl_group_order() const {
  auto fact = [](std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
  };
  const std::uint64_t n = static_cast<std::uint64_t>(rank_);
  switch (id_.family) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return (std::uint64_t(1) << n) * fact(n);
    case 'D': return (std::uint64_t(1) << (n - 1)) * fact(n);
    case 'E': return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

Weight simple_reflection(const CartanData& c, int a, const Weight& lambda) {
  if (a < 0 || a >= c.rank()) throw std::out_of_range("simple_reflection: index out of range");
  if (static_cast<int>(lambda.size()) != c.rank()) throw std::invalid_argument("simple_reflection: rank mismatch");
  return c.reflect(a, lambda);
}

}  // namespace krf
