#pragma once

// Sparse multivariate power series in y_1..y_n with exact rational
// coefficients, truncated per variable (y_a^{d_a + 1} = 0), and the group
// algebra of the weight lattice used for characters.
//
// The y-variables are e^{-alpha_a}. Working with Z[P] instead of Laurent
// series in x_a = e^{Lambda_a} sidesteps the fractional powers that x(y)
// would need for non simply-laced algebras.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "krf/cartan.hpp"
#include "krf/numeric.hpp"

namespace krf {

/// Per-variable maximum exponents. Each d_a must lie in [0, kMaxDegree].
struct TruncationSpec {
  static constexpr int kMaxVariables = 8;
  static constexpr int kMaxDegree = 127;

  std::vector<int> max_degree;

  TruncationSpec() = default;
  explicit TruncationSpec(std::vector<int> d);

  /// The ideal I_l: d_a = t_a * l.
  static TruncationSpec for_level(const CartanData& c, int level);

  std::size_t num_vars() const { return max_degree.size(); }
  bool operator==(const TruncationSpec&) const = default;
};

class TruncatedSeries {
 public:
  /// Exponents packed one byte per variable, variable 0 most significant, so
  /// that numeric order of keys is lexicographic order of exponent vectors.
  using Key = std::uint64_t;
  using Exponents = std::vector<int>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(TruncationSpec spec) : spec_(std::move(spec)) {}

  static TruncatedSeries constant(const TruncationSpec& spec, const Rational& c);
  static TruncatedSeries one(const TruncationSpec& spec) { return constant(spec, 1); }
  /// y_a (zero if d_a = 0).
  static TruncatedSeries variable(const TruncationSpec& spec, int a);
  /// coeff * prod y^exps, or zero if outside the truncation.
  static TruncatedSeries monomial(const TruncationSpec& spec, const Exponents& exps, const Rational& coeff = 1);

  const TruncationSpec& truncation() const { return spec_; }
  std::size_t num_vars() const { return spec_.num_vars(); }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& exps) const;
  Rational constant_term() const;
  /// Adds coeff * y^exps; silently drops exponents beyond the truncation.
  void add_term(const Exponents& exps, const Rational& coeff);

  /// Terms in lexicographic order of exponent vectors.
  std::vector<std::pair<Exponents, Rational>> terms() const;
  bool all_integer() const;

  /// Projection onto a (per-variable) smaller truncation.
  TruncatedSeries truncated(const TruncationSpec& smaller) const;
  /// Drops every term whose exponent of y_a is >= k (reduction mod y_a^k).
  TruncatedSeries mod_variable_power(int a, int k) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& s);
  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  bool operator==(const TruncatedSeries& o) const { return spec_ == o.spec_ && terms_ == o.terms_; }

  /// {exponents: [...], coeff: "num/den"} list, lexicographically sorted.
  nlohmann::json to_json() const;
  static TruncatedSeries from_json(const TruncationSpec& spec, const nlohmann::json& j);
  std::string str() const;

  Key pack(const Exponents& exps) const;
  Exponents unpack(Key key) const;
  int degree_in(Key key, int a) const;
  const std::map<Key, Rational>& raw_terms() const { return terms_; }

 private:
  bool fits(const Exponents& exps) const;
  void add_packed(Key key, const Rational& coeff);

  TruncationSpec spec_;
  std::map<Key, Rational> terms_;
};

/// Throws std::invalid_argument on mismatched truncation specs.
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
/// Throws std::domain_error if the constant term is zero.
TruncatedSeries invert_unit(const TruncatedSeries& f);
/// Repeated squaring; negative exponents require a unit.
TruncatedSeries pow_int(const TruncatedSeries& f, std::int64_t e);
/// f^r for rational r, requires constant term 1 (binomial series in f - 1).
TruncatedSeries pow_rational(const TruncatedSeries& f, const Rational& r);
/// d f / d y_a; the truncation degree of y_a drops by one (floored at 0).
TruncatedSeries partial_derivative(const TruncatedSeries& f, int a);
/// y_a d f / d y_a; keeps the truncation.
TruncatedSeries euler_derivative(const TruncatedSeries& f, int a);
/// Determinant of a square matrix of series (Laplace expansion over column subsets).
TruncatedSeries series_determinant(const std::vector<std::vector<TruncatedSeries>>& m);

/// Finitely supported map weight -> integer; e^lambda basis of Z[P].
class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(int rank) : rank_(rank) {}

  static GroupAlgebraElement exponential(const Weight& lambda, const Integer& coeff = 1);
  static GroupAlgebraElement one(int rank) { return exponential(Weight::zero(rank)); }

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Weight, Integer>& terms() const { return terms_; }
  Integer coefficient(const Weight& lambda) const;
  void add_term(const Weight& lambda, const Integer& coeff);
  /// Sum of coefficients (the dimension, for a character).
  Integer total() const;

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator*=(const Integer& s);
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  bool operator==(const GroupAlgebraElement& o) const { return terms_ == o.terms_; }

 private:
  int rank_ = 0;
  std::map<Weight, Integer> terms_;
};

/// y-series of e^{-highest} * g: every support weight must be
/// highest - sum d_a alpha_a with d_a >= 0 integers (else std::domain_error).
TruncatedSeries embed_weight(const CartanData& c, const GroupAlgebraElement& g, const Weight& highest,
                             const TruncationSpec& trunc);

}  // namespace krf
