#pragma once

// Multivariate power series in the string variables w_m^{(a)}, (a, m) in H_l,
// truncated by total degree, together with the v/w/z changes of variables and
// checks of the generating-series identities against the counting numbers.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/numeric.hpp"
#include "krf/series.hpp"

namespace krf {

/// Sparse series in `num_vars` variables keeping total degree <= max_degree.
class WSeries {
 public:
  using Exponent = std::vector<int>;

  WSeries(int num_vars, int max_degree);
  static WSeries constant(int num_vars, int max_degree, const Rational& c);
  static WSeries variable(int num_vars, int max_degree, int i);

  int num_vars() const { return num_vars_; }
  int max_degree() const { return max_degree_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;
  Rational constant_term() const { return coefficient(Exponent(num_vars_, 0)); }
  /// Terms of total degree above the cutoff are dropped.
  void add_term(const Exponent& e, const Rational& c);
  bool is_zero() const { return terms_.empty(); }

  WSeries& operator+=(const WSeries& o);
  WSeries& operator-=(const WSeries& o);
  WSeries& operator*=(const Rational& s);
  friend WSeries operator+(WSeries x, const WSeries& y) { return x += y; }
  friend WSeries operator-(WSeries x, const WSeries& y) { return x -= y; }
  friend WSeries operator*(WSeries x, const Rational& s) { return x *= s; }
  friend WSeries operator*(const WSeries& x, const WSeries& y);
  bool operator==(const WSeries& o) const = default;

  std::string str() const;

 private:
  int num_vars_;
  int max_degree_;
  std::map<Exponent, Rational> terms_;
};

/// f^r for f with constant term 1, by the binomial series.
WSeries w_pow(const WSeries& f, const Rational& r);
/// 1/f for f with nonzero constant term.
WSeries w_invert(const WSeries& f);
/// d f / d x_i
WSeries w_partial(const WSeries& f, int i);
/// x_i d f / d x_i
WSeries w_euler(const WSeries& f, int i);
/// f(g_1, ..., g_n) for substitutes with zero constant term.
WSeries w_compose(const WSeries& f, const std::vector<WSeries>& subs);
/// Determinant by cofactor expansion with memoized minors.
WSeries w_determinant(const std::vector<std::vector<WSeries>>& m);

/// The variables of the generating series: H_l in lexicographic order.
struct StringVariables {
  std::vector<ModeIndex> modes;
  int max_degree = 1;

  int size() const { return static_cast<int>(modes.size()); }
  int index_of(ModeIndex am) const;
};

/// Guards against exponential term growth in the w-space checks.
struct GenseriesLimits {
  int max_degree = 5;
  int max_variables = 6;
};

/// Throws std::invalid_argument if D < 1 or the instance exceeds the limits.
StringVariables string_variables(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits = {});

/// w(v) = v prod (1 - v)^{-(alpha_a|alpha_b) min(t_b m, t_a k)}, in the v variables.
std::vector<WSeries> w_of_v(const CartanData& c, const StringVariables& vars);
/// Inverse of w_of_v by fixed-point iteration, in the w variables.
std::vector<WSeries> v_of_w(const CartanData& c, const StringVariables& vars);
/// z(v) = v prod_{t_b m > t_a k} (1 - v)^{(alpha_a|alpha_b)(t_b m - t_a k)}, in the v variables.
std::vector<WSeries> z_of_v(const CartanData& c, const StringVariables& vars);
/// Inverse of z_of_v, in the z variables.
std::vector<WSeries> v_of_z(const CartanData& c, const StringVariables& vars);

/// det((y_k / x_m) dx_m / dy_k) for x_m = y_m h_m(y), computed from the
/// units h_m as det(delta_mk + y_k d(log h_m)/dy_k).
WSeries log_jacobian_determinant(const std::vector<WSeries>& h);

/// All N supported on the variables with total <= max_degree.
std::vector<ModeMap> patterns_up_to(const StringVariables& vars);

/// sum_N R(nu, N) w^N and sum_N K(nu, N) w^N up to the cutoff.
WSeries r_generating(const CartanData& c, const ModeMap& nu, const StringVariables& vars);
WSeries k_generating(const CartanData& c, const ModeMap& nu, const StringVariables& vars);

struct IdentityCheck {
  std::string name;
  bool ok = true;
  std::size_t compared = 0;
  /// Human-readable description of the first differing coefficient, if any.
  std::string first_mismatch;
};

struct GenseriesReport {
  std::vector<IdentityCheck> checks;
  /// Identities relying on a hypothesis only established for classical types.
  bool experimental = false;

  bool clean() const;
};

/// The product forms of R and K, the two determinant forms of K^0 and R = K / K^0.
GenseriesReport verify_generating_identities(const CartanData& c, const ModeMap& nu, int level, int max_degree,
                                      const GenseriesLimits& limits = {});

/// prod (1 - v(z))^{-beta - 1} against prod binom(beta + c + N, N) z^N, with
/// beta indexed like the string variables.
GenseriesReport verify_binomial_expansion(const CartanData& c, int level, int max_degree,
                                       const std::vector<Rational>& beta, const GenseriesLimits& limits = {});

/// det((z_k / v_m) dv_m / dz_k) = 1 up to the cutoff.
GenseriesReport verify_z_jacobian(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits = {});

/// Round trips w(v(w)) = w and v(w(v)) = v.
GenseriesReport verify_round_trip(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits = {});

/// K~^0(y) from the counting numbers, the Weyl denominator and the Jacobian of
/// U_a = y_a prod Q~_1^{(b)}^{-(alpha_a|alpha_b) t_b}, all mod I_l.
/// Exceptional types are evaluated but the report is marked experimental.
GenseriesReport verify_k0_identities(const CartanData& c, int level);

/// Partial sums sum_{|N| <= d} K(nu, N) x^{|N|} for d = 0..max_degree with
/// every variable set to the same rational point.
std::vector<Rational> k_partial_sums(const CartanData& c, const ModeMap& nu, int level, const Rational& point,
                                     int max_degree);

}  // namespace krf
