#include "krf/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace krf {

TruncationSpec::TruncationSpec(std::vector<int> d) : max_degree(std::move(d)) {
  if (max_degree.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw std::invalid_argument("TruncationSpec: at most 8 variables");
  }
  for (int x : max_degree) {
    if (x < 0 || x > kMaxDegree) throw std::invalid_argument("TruncationSpec: degree out of range");
  }
}

TruncationSpec TruncationSpec::for_level(const CartanData& c, int level) {
  if (level < 0) throw std::invalid_argument("truncation level must be nonnegative");
  std::vector<int> d(c.rank());
  for (int a = 0; a < c.rank(); ++a) d[a] = c.t(a) * level;
  return TruncationSpec(d);
}

// ---------------------------------------------------------------------------

TruncatedSeries::Key TruncatedSeries::pack(const Exponents& exps) const {
  Key key = 0;
  for (std::size_t a = 0; a < exps.size(); ++a) key = (key << 8) | static_cast<Key>(exps[a]);
  return key;
}

TruncatedSeries::Exponents TruncatedSeries::unpack(Key key) const {
  const std::size_t n = num_vars();
  Exponents e(n);
  for (std::size_t i = 0; i < n; ++i) e[n - 1 - i] = static_cast<int>((key >> (8 * i)) & 0xff);
  return e;
}

int TruncatedSeries::degree_in(Key key, int a) const {
  return static_cast<int>((key >> (8 * (num_vars() - 1 - a))) & 0xff);
}

bool TruncatedSeries::fits(const Exponents& exps) const {
  if (exps.size() != num_vars()) throw std::invalid_argument("exponent vector has wrong length");
  for (std::size_t a = 0; a < exps.size(); ++a) {
    if (exps[a] < 0) throw std::invalid_argument("negative exponent");
    if (exps[a] > spec_.max_degree[a]) return false;
  }
  return true;
}

void TruncatedSeries::add_packed(Key key, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::constant(const TruncationSpec& spec, const Rational& c) {
  TruncatedSeries s(spec);
  s.add_packed(0, c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(const TruncationSpec& spec, int a) {
  Exponents e(spec.num_vars(), 0);
  e.at(a) = 1;
  return monomial(spec, e);
}

TruncatedSeries TruncatedSeries::monomial(const TruncationSpec& spec, const Exponents& exps, const Rational& coeff) {
  TruncatedSeries s(spec);
  s.add_term(exps, coeff);
  return s;
}

Rational TruncatedSeries::coefficient(const Exponents& exps) const {
  if (!fits(exps)) return 0;
  auto it = terms_.find(pack(exps));
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const Exponents& exps, const Rational& coeff) {
  if (!fits(exps)) return;
  add_packed(pack(exps), coeff);
}

std::vector<std::pair<TruncatedSeries::Exponents, Rational>> TruncatedSeries::terms() const {
  std::vector<std::pair<Exponents, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& [k, v] : terms_) out.emplace_back(unpack(k), v);
  return out;
}

bool TruncatedSeries::all_integer() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return is_integer(kv.second); });
}

TruncatedSeries TruncatedSeries::truncated(const TruncationSpec& smaller) const {
  if (smaller.num_vars() != num_vars()) throw std::invalid_argument("truncated: variable count mismatch");
  TruncatedSeries r(smaller);
  for (const auto& [k, v] : terms_) {
    Exponents e = unpack(k);
    if (r.fits(e)) r.terms_.emplace(r.pack(e), v);
  }
  return r;
}

TruncatedSeries TruncatedSeries::mod_variable_power(int a, int k) const {
  TruncatedSeries r(spec_);
  for (const auto& [key, v] : terms_) {
    if (degree_in(key, a) < k) r.terms_.emplace_hint(r.terms_.end(), key, v);
  }
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (!(spec_ == o.spec_)) throw std::invalid_argument("series truncation mismatch");
  for (const auto& [k, v] : o.terms_) add_packed(k, v);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (!(spec_ == o.spec_)) throw std::invalid_argument("series truncation mismatch");
  for (const auto& [k, v] : o.terms_) add_packed(k, -v);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return mul(f, g); }

nlohmann::json TruncatedSeries::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, v] : terms_) {
    arr.push_back({{"exponents", unpack(k)}, {"coeff", rational_string(v)}});
  }
  return arr;
}

TruncatedSeries TruncatedSeries::from_json(const TruncationSpec& spec, const nlohmann::json& j) {
  TruncatedSeries s(spec);
  for (const auto& term : j) {
    s.add_term(term.at("exponents").get<Exponents>(), parse_rational(term.at("coeff").get<std::string>()));
  }
  return s;
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << v.get_str();
    Exponents e = unpack(k);
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a] == 1) os << "*y" << a + 1;
      else if (e[a] > 1) os << "*y" << a + 1 << "^" << e[a];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!(f.truncation() == g.truncation())) throw std::invalid_argument("mul: truncation mismatch");
  const auto& d = f.truncation().max_degree;
  const std::size_t n = d.size();
  TruncatedSeries r(f.truncation());
  if (f.is_zero() || g.is_zero()) return r;

  // Byte-wise sums never carry because every d_a <= 127.
  std::map<TruncatedSeries::Key, Rational> acc;
  for (const auto& [kf, vf] : f.raw_terms()) {
    for (const auto& [kg, vg] : g.raw_terms()) {
      const TruncatedSeries::Key k = kf + kg;
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>((k >> (8 * (n - 1 - i))) & 0xff) > d[i]) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      auto [it, inserted] = acc.try_emplace(k, vf * vg);
      if (!inserted) it->second += vf * vg;
    }
  }
  for (auto& [k, v] : acc) {
    if (v != 0) r.add_term(r.unpack(k), v);
  }
  return r;
}

TruncatedSeries invert_unit(const TruncatedSeries& f) {
  const Rational c0 = f.constant_term();
  if (c0 == 0) throw std::domain_error("invert_unit: zero constant term");
  const auto& spec = f.truncation();
  const int total = std::accumulate(spec.max_degree.begin(), spec.max_degree.end(), 0);
  const TruncatedSeries one = TruncatedSeries::one(spec);
  TruncatedSeries h = TruncatedSeries::constant(spec, 1 / c0);
  // Newton iteration; precision in total degree doubles every step.
  for (int precision = 1; precision <= 2 * total + 1; precision *= 2) {
    TruncatedSeries err = one - mul(f, h);
    if (err.is_zero()) return h;
    h += mul(h, err);
  }
  if (!(mul(f, h) == one)) throw std::logic_error("invert_unit: Newton iteration did not converge");
  return h;
}

TruncatedSeries pow_int(const TruncatedSeries& f, std::int64_t e) {
  TruncatedSeries base = e < 0 ? invert_unit(f) : f;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  TruncatedSeries result = TruncatedSeries::one(f.truncation());
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

TruncatedSeries pow_rational(const TruncatedSeries& f, const Rational& r) {
  if (is_integer(r) && r.get_num().fits_slong_p()) return pow_int(f, r.get_num().get_si());
  if (f.constant_term() != 1) throw std::domain_error("pow_rational: constant term must be 1");
  const auto& spec = f.truncation();
  const TruncatedSeries g = f - TruncatedSeries::one(spec);
  TruncatedSeries result = TruncatedSeries::one(spec);
  TruncatedSeries g_power = TruncatedSeries::one(spec);
  Rational binom = 1;
  for (int j = 1;; ++j) {
    g_power = mul(g_power, g);
    if (g_power.is_zero()) break;
    binom *= (r - (j - 1));
    binom /= j;
    result += g_power * binom;
  }
  return result;
}

TruncatedSeries partial_derivative(const TruncatedSeries& f, int a) {
  if (a < 0 || a >= static_cast<int>(f.num_vars())) throw std::out_of_range("partial_derivative: bad variable");
  std::vector<int> d = f.truncation().max_degree;
  d[a] = std::max(0, d[a] - 1);
  TruncatedSeries r{TruncationSpec(d)};
  for (const auto& [k, v] : f.raw_terms()) {
    auto e = f.unpack(k);
    if (e[a] == 0) continue;
    const int power = e[a];
    e[a] -= 1;
    r.add_term(e, v * power);
  }
  return r;
}

TruncatedSeries euler_derivative(const TruncatedSeries& f, int a) {
  if (a < 0 || a >= static_cast<int>(f.num_vars())) throw std::out_of_range("euler_derivative: bad variable");
  TruncatedSeries r(f.truncation());
  for (const auto& [k, v] : f.raw_terms()) {
    const int power = f.degree_in(k, a);
    if (power != 0) r.add_term(f.unpack(k), v * power);
  }
  return r;
}

TruncatedSeries series_determinant(const std::vector<std::vector<TruncatedSeries>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("series_determinant: empty matrix");
  if (n > 20) throw std::invalid_argument("series_determinant: matrix too large");
  const TruncationSpec& spec = m[0][0].truncation();
  // minors[mask] = det of rows [n - popcount(mask), n) x columns in mask.
  std::map<std::uint32_t, TruncatedSeries> minors;
  minors.emplace(0u, TruncatedSeries::one(spec));
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    std::map<std::uint32_t, TruncatedSeries> next;
    for (const auto& [mask, minor] : minors) {
      for (std::size_t col = 0; col < n; ++col) {
        if (mask & (1u << col)) continue;
        // Sign of inserting col ahead of the mask columns in front of it.
        int smaller = 0;
        for (std::size_t c2 = 0; c2 < col; ++c2)
          if (mask & (1u << c2)) ++smaller;
        TruncatedSeries term = mul(m[row][col], minor);
        if (smaller % 2) term = -term;
        auto [it, inserted] = next.try_emplace(mask | (1u << col), term);
        if (!inserted) it->second += term;
      }
    }
    minors = std::move(next);
  }
  return minors.begin()->second;
}

// ---------------------------------------------------------------------------

GroupAlgebraElement GroupAlgebraElement::exponential(const Weight& lambda, const Integer& coeff) {
  GroupAlgebraElement g(static_cast<int>(lambda.size()));
  g.add_term(lambda, coeff);
  return g;
}

Integer GroupAlgebraElement::coefficient(const Weight& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Integer(0) : it->second;
}

void GroupAlgebraElement::add_term(const Weight& lambda, const Integer& coeff) {
  if (static_cast<int>(lambda.size()) != rank_) throw std::invalid_argument("group algebra: rank mismatch");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(lambda, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer GroupAlgebraElement::total() const {
  Integer s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator*=(const Integer& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("group algebra: rank mismatch");
  GroupAlgebraElement r(a.rank());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa + wb, ca * cb);
  }
  return r;
}

TruncatedSeries embed_weight(const CartanData& c, const GroupAlgebraElement& g, const Weight& highest,
                             const TruncationSpec& trunc) {
  if (static_cast<int>(trunc.num_vars()) != c.rank()) throw std::invalid_argument("embed_weight: rank mismatch");
  TruncatedSeries s(trunc);
  for (const auto& [mu, coeff] : g.terms()) {
    auto depth = c.weight_to_root(highest - mu);
    if (!depth) throw std::domain_error("embed_weight: weight " + mu.str() + " not in highest - root lattice");
    std::vector<int> e(c.rank());
    for (int a = 0; a < c.rank(); ++a) {
      if ((*depth)[a] < 0) {
        throw std::domain_error("embed_weight: weight " + mu.str() + " lies above the given highest weight");
      }
      e[a] = static_cast<int>(std::min<std::int64_t>((*depth)[a], TruncationSpec::kMaxDegree + 1));
    }
    bool inside = true;
    for (int a = 0; a < c.rank(); ++a) inside = inside && e[a] <= trunc.max_degree[a];
    if (inside) s.add_term(e, Rational(coeff));
  }
  return s;
}

}  // namespace krf
