#include "krf/genseries.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "krf/characters.hpp"
#include "krf/fermionic.hpp"

namespace krf {

namespace {

int total_degree(const WSeries::Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_shape(const WSeries& x, const WSeries& y) {
  if (x.num_vars() != y.num_vars() || x.max_degree() != y.max_degree())
    throw std::invalid_argument("WSeries: mismatched variables or cutoff");
}

}  // namespace

WSeries::WSeries(int num_vars, int max_degree) : num_vars_(num_vars), max_degree_(max_degree) {
  if (num_vars < 0 || max_degree < 0) throw std::invalid_argument("WSeries: negative shape");
}

WSeries WSeries::constant(int num_vars, int max_degree, const Rational& c) {
  WSeries s(num_vars, max_degree);
  s.add_term(Exponent(num_vars, 0), c);
  return s;
}

WSeries WSeries::variable(int num_vars, int max_degree, int i) {
  WSeries s(num_vars, max_degree);
  Exponent e(num_vars, 0);
  e.at(i) = 1;
  s.add_term(e, 1);
  return s;
}

Rational WSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void WSeries::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != num_vars_) throw std::invalid_argument("WSeries: exponent length");
  if (c == 0 || total_degree(e) > max_degree_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WSeries& WSeries::operator+=(const WSeries& o) {
  check_shape(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

WSeries& WSeries::operator-=(const WSeries& o) {
  check_shape(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

WSeries& WSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

WSeries operator*(const WSeries& x, const WSeries& y) {
  check_shape(x, y);
  WSeries out(x.num_vars(), x.max_degree());
  WSeries::Exponent e(x.num_vars());
  for (const auto& [ex, cx] : x.terms_) {
    const int dx = total_degree(ex);
    for (const auto& [ey, cy] : y.terms_) {
      if (dx + total_degree(ey) > x.max_degree()) continue;
      for (int i = 0; i < x.num_vars(); ++i) e[i] = ex[i] + ey[i];
      out.add_term(e, cx * cy);
    }
  }
  return out;
}

std::string WSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < num_vars_; ++i)
      if (e[i]) os << "*w" << i << "^" << e[i];
  }
  return os.str();
}

WSeries w_pow(const WSeries& f, const Rational& r) {
  if (f.constant_term() != 1) throw std::domain_error("w_pow: constant term must be 1");
  const WSeries one = WSeries::constant(f.num_vars(), f.max_degree(), 1);
  const WSeries g = f - one;
  WSeries out = one;
  WSeries power = one;
  Rational binom = 1;
  for (int j = 1; j <= f.max_degree(); ++j) {
    binom *= (r - (j - 1));
    binom /= j;
    power = power * g;
    if (power.is_zero()) break;
    out += power * binom;
  }
  return out;
}

WSeries w_invert(const WSeries& f) {
  const Rational c = f.constant_term();
  if (c == 0) throw std::domain_error("w_invert: zero constant term");
  return w_pow(f * (1 / c), -1) * (1 / c);
}

WSeries w_partial(const WSeries& f, int i) {
  WSeries out(f.num_vars(), f.max_degree());
  for (const auto& [e, c] : f.terms()) {
    if (e.at(i) == 0) continue;
    WSeries::Exponent d = e;
    --d[i];
    out.add_term(d, c * e[i]);
  }
  return out;
}

WSeries w_euler(const WSeries& f, int i) {
  WSeries out(f.num_vars(), f.max_degree());
  for (const auto& [e, c] : f.terms()) out.add_term(e, c * e.at(i));
  return out;
}

WSeries w_compose(const WSeries& f, const std::vector<WSeries>& subs) {
  if (static_cast<int>(subs.size()) != f.num_vars()) throw std::invalid_argument("w_compose: one substitute per variable");
  if (subs.empty()) return f;
  const int n = subs.front().num_vars();
  const int d = subs.front().max_degree();
  for (const auto& s : subs) {
    if (s.constant_term() != 0) throw std::domain_error("w_compose: substitutes must vanish at 0");
  }
  // powers[i][p] = subs[i]^p
  std::vector<std::vector<WSeries>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) powers[i].push_back(WSeries::constant(n, d, 1));
  WSeries out(n, d);
  for (const auto& [e, c] : f.terms()) {
    WSeries term = WSeries::constant(n, d, c);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * subs[i]);
      if (e[i]) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

WSeries w_determinant(const std::vector<std::vector<WSeries>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("w_determinant: empty matrix");
  if (n > 20) throw std::invalid_argument("w_determinant: matrix too large");
  const int vars = m[0][0].num_vars();
  const int deg = m[0][0].max_degree();
  // minor[S] = det of the first |S| rows restricted to the column set S.
  std::map<std::uint32_t, WSeries> minor;
  minor.emplace(0u, WSeries::constant(vars, deg, 1));
  std::function<const WSeries&(std::uint32_t, std::size_t)> get = [&](std::uint32_t mask, std::size_t k) -> const WSeries& {
    auto it = minor.find(mask);
    if (it != minor.end()) return it->second;
    WSeries acc(vars, deg);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const WSeries& entry = m[k - 1][j];
      if (!entry.is_zero()) {
        WSeries term = entry * get(mask & ~(1u << j), k - 1);
        if ((k - 1 + pos) % 2) acc -= term;
        else acc += term;
      }
      ++pos;
    }
    return minor.emplace(mask, std::move(acc)).first->second;
  };
  return get((1u << n) - 1u, n);
}

int StringVariables::index_of(ModeIndex am) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i] == am) return static_cast<int>(i);
  return -1;
}

StringVariables string_variables(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits) {
  if (level < 1) throw std::invalid_argument("string_variables: level must be >= 1");
  if (max_degree < 1) throw std::invalid_argument("string_variables: degree must be >= 1");
  StringVariables vars{level_set(c, level), max_degree};
  if (max_degree > limits.max_degree || vars.size() > limits.max_variables) {
    throw std::invalid_argument("string_variables: " + std::to_string(vars.size()) + " variables at degree " +
                                std::to_string(max_degree) + " exceed the configured limits");
  }
  return vars;
}

namespace {

WSeries var(const StringVariables& vars, int i) { return WSeries::variable(vars.size(), vars.max_degree, i); }
WSeries one(const StringVariables& vars) { return WSeries::constant(vars.size(), vars.max_degree, 1); }

using ExponentTable = std::vector<std::vector<std::int64_t>>;

// e[i][j] = (alpha_a|alpha_b) min(t_b m, t_a k)
ExponentTable pairing_table(const CartanData& c, const StringVariables& vars) {
  ExponentTable e(vars.size(), std::vector<std::int64_t>(vars.size()));
  for (int i = 0; i < vars.size(); ++i)
    for (int j = 0; j < vars.size(); ++j) {
      const ModeIndex am = vars.modes[i], bk = vars.modes[j];
      e[i][j] = c.pairing_min(am.a, am.m, bk.a, bk.m);
    }
  return e;
}

// e[i][j] = (alpha_a|alpha_b)(t_b m - t_a k) when positive difference, else 0
ExponentTable shift_table(const CartanData& c, const StringVariables& vars) {
  ExponentTable e(vars.size(), std::vector<std::int64_t>(vars.size(), 0));
  for (int i = 0; i < vars.size(); ++i)
    for (int j = 0; j < vars.size(); ++j) {
      const ModeIndex am = vars.modes[i], bk = vars.modes[j];
      const std::int64_t diff = std::int64_t(c.t(bk.a)) * am.m - std::int64_t(c.t(am.a)) * bk.m;
      if (diff > 0) e[i][j] = c.form_times(am.a, bk.a, diff);
    }
  return e;
}

// prod_j (1 - x_j)^{sign * e[i][j]} for every i.
std::vector<WSeries> unit_products(const StringVariables& vars, const std::vector<WSeries>& x, const ExponentTable& e,
                                   int sign) {
  std::vector<WSeries> out;
  for (int i = 0; i < vars.size(); ++i) {
    WSeries p = one(vars);
    for (int j = 0; j < vars.size(); ++j) {
      if (e[i][j] == 0) continue;
      p = p * w_pow(one(vars) - x[j], Rational(Integer(static_cast<long>(sign * e[i][j]))));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<WSeries> identity_map(const StringVariables& vars) {
  std::vector<WSeries> out;
  for (int i = 0; i < vars.size(); ++i) out.push_back(var(vars, i));
  return out;
}

// Solves x = y * h(x) with h = prod (1 - x)^{sign e}; returns {x(y), h(x(y))}.
std::pair<std::vector<WSeries>, std::vector<WSeries>> fixed_point(const StringVariables& vars, const ExponentTable& e,
                                                                  int sign) {
  std::vector<WSeries> x = identity_map(vars);
  std::vector<WSeries> h;
  for (int iter = 0; iter <= vars.max_degree; ++iter) {
    h = unit_products(vars, x, e, sign);
    std::vector<WSeries> next;
    for (int i = 0; i < vars.size(); ++i) next.push_back(var(vars, i) * h[i]);
    if (next == x) break;
    x = std::move(next);
  }
  h = unit_products(vars, x, e, sign);
  return {x, h};
}

std::vector<WSeries> times_variables(const StringVariables& vars, const std::vector<WSeries>& h) {
  std::vector<WSeries> out;
  for (int i = 0; i < vars.size(); ++i) out.push_back(var(vars, i) * h[i]);
  return out;
}

ModeMap pattern_from_exponent(const StringVariables& vars, const WSeries::Exponent& e) {
  ModeMap n;
  for (int i = 0; i < vars.size(); ++i)
    if (e[i]) n.set(vars.modes[i], e[i]);
  return n;
}

WSeries::Exponent exponent_of(const StringVariables& vars, const ModeMap& n) {
  WSeries::Exponent e(vars.size(), 0);
  for (const auto& [am, v] : n.entries()) {
    const int i = vars.index_of(am);
    if (i < 0) throw std::invalid_argument("pattern outside the string variables");
    e[i] = static_cast<int>(v);
  }
  return e;
}

IdentityCheck compare(const std::string& name, const WSeries& lhs, const WSeries& rhs) {
  IdentityCheck check{name, true, 0, {}};
  std::map<WSeries::Exponent, bool> keys;
  for (const auto& [e, c] : lhs.terms()) keys[e] = true;
  for (const auto& [e, c] : rhs.terms()) keys[e] = true;
  check.compared = keys.size();
  for (const auto& [e, unused] : keys) {
    if (lhs.coefficient(e) != rhs.coefficient(e)) {
      check.ok = false;
      std::ostringstream os;
      os << "exponent [";
      for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
      os << "]: " << lhs.coefficient(e).get_str() << " vs " << rhs.coefficient(e).get_str();
      check.first_mismatch = os.str();
      break;
    }
  }
  return check;
}

IdentityCheck compare(const std::string& name, const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
  IdentityCheck check{name, true, 0, {}};
  const TruncatedSeries diff = lhs - rhs;
  check.compared = lhs.terms().size() + rhs.terms().size();
  if (!diff.is_zero()) {
    check.ok = false;
    check.first_mismatch = "difference " + diff.str();
  }
  return check;
}

}  // namespace

std::vector<WSeries> w_of_v(const CartanData& c, const StringVariables& vars) {
  return times_variables(vars, unit_products(vars, identity_map(vars), pairing_table(c, vars), -1));
}

std::vector<WSeries> v_of_w(const CartanData& c, const StringVariables& vars) {
  return fixed_point(vars, pairing_table(c, vars), 1).first;
}

std::vector<WSeries> z_of_v(const CartanData& c, const StringVariables& vars) {
  return times_variables(vars, unit_products(vars, identity_map(vars), shift_table(c, vars), 1));
}

std::vector<WSeries> v_of_z(const CartanData& c, const StringVariables& vars) {
  return fixed_point(vars, shift_table(c, vars), -1).first;
}

WSeries log_jacobian_determinant(const std::vector<WSeries>& h) {
  const std::size_t n = h.size();
  std::vector<std::vector<WSeries>> m;
  for (std::size_t i = 0; i < n; ++i) {
    const WSeries inv = w_invert(h[i]);
    std::vector<WSeries> row;
    for (std::size_t k = 0; k < n; ++k) {
      WSeries entry = w_euler(h[i], static_cast<int>(k)) * inv;
      if (i == k) entry += WSeries::constant(h[i].num_vars(), h[i].max_degree(), 1);
      row.push_back(std::move(entry));
    }
    m.push_back(std::move(row));
  }
  return w_determinant(m);
}

std::vector<ModeMap> patterns_up_to(const StringVariables& vars) {
  std::vector<ModeMap> out;
  WSeries::Exponent e(vars.size(), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == vars.size()) {
      out.push_back(pattern_from_exponent(vars, e));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(0, vars.max_degree);
  return out;
}

WSeries r_generating(const CartanData& c, const ModeMap& nu, const StringVariables& vars) {
  WSeries s(vars.size(), vars.max_degree);
  for (const ModeMap& n : patterns_up_to(vars)) s.add_term(exponent_of(vars, n), Rational(r_number(c, nu, n).value));
  return s;
}

WSeries k_generating(const CartanData& c, const ModeMap& nu, const StringVariables& vars) {
  WSeries s(vars.size(), vars.max_degree);
  for (const ModeMap& n : patterns_up_to(vars)) s.add_term(exponent_of(vars, n), Rational(k_number(c, nu, n)));
  return s;
}

bool GenseriesReport::clean() const {
  for (const auto& check : checks)
    if (!check.ok) return false;
  return true;
}

GenseriesReport verify_generating_identities(const CartanData& c, const ModeMap& nu, int level, int max_degree,
                                      const GenseriesLimits& limits) {
  const StringVariables vars = string_variables(c, level, max_degree, limits);
  const ExponentTable g = pairing_table(c, vars);
  const auto [v, h] = fixed_point(vars, g, 1);

  WSeries gamma_product = one(vars);
  WSeries inverse_product = one(vars);
  for (int i = 0; i < vars.size(); ++i) {
    const WSeries base = one(vars) - v[i];
    const std::int64_t gm = gamma(c, nu, vars.modes[i]);
    if (gm) gamma_product = gamma_product * w_pow(base, Rational(Integer(static_cast<long>(-gm))));
    inverse_product = inverse_product * w_invert(base);
  }

  const WSeries r = r_generating(c, nu, vars);
  const WSeries k = k_generating(c, nu, vars);
  const WSeries k0 = k_generating(c, ModeMap{}, vars);

  std::vector<std::vector<WSeries>> dmat;
  for (int i = 0; i < vars.size(); ++i) {
    std::vector<WSeries> row;
    for (int j = 0; j < vars.size(); ++j) {
      WSeries entry = v[i] * Rational(Integer(static_cast<long>(g[i][j] - (i == j ? 1 : 0))));
      if (i == j) entry += one(vars);
      row.push_back(std::move(entry));
    }
    dmat.push_back(std::move(row));
  }

  GenseriesReport report;
  report.checks.push_back(compare("R = prod (1 - v)^-gamma", r, gamma_product));
  report.checks.push_back(compare("K = K0 prod (1 - v)^-gamma", k, k0 * gamma_product));
  report.checks.push_back(
      compare("K0 = det(w dv / v dw) prod (1 - v)^-1", k0, log_jacobian_determinant(h) * inverse_product));
  report.checks.push_back(compare("K0 = det(1 + D v)^-1", k0, w_invert(w_determinant(dmat))));
  report.checks.push_back(compare("R K0 = K", r * k0, k));
  return report;
}

GenseriesReport verify_binomial_expansion(const CartanData& c, int level, int max_degree, const std::vector<Rational>& beta,
                                       const GenseriesLimits& limits) {
  const StringVariables vars = string_variables(c, level, max_degree, limits);
  if (static_cast<int>(beta.size()) != vars.size()) throw std::invalid_argument("binomial expansion: one exponent per variable");
  const std::vector<WSeries> v = v_of_z(c, vars);
  WSeries lhs = one(vars);
  for (int i = 0; i < vars.size(); ++i) lhs = lhs * w_pow(one(vars) - v[i], -beta[i] - 1);

  WSeries rhs(vars.size(), vars.max_degree);
  for (const ModeMap& n : patterns_up_to(vars)) {
    Rational coeff = 1;
    for (int i = 0; i < vars.size(); ++i) {
      const ModeIndex am = vars.modes[i];
      std::int64_t shift = 0;
      for (const auto& [bk, count] : n.entries()) {
        const std::int64_t diff = std::int64_t(c.t(am.a)) * bk.m - std::int64_t(c.t(bk.a)) * am.m;
        if (diff > 0) shift += c.form_times(am.a, bk.a, diff) * count;
      }
      const std::int64_t nn = n.get(am);
      coeff *= gen_binomial(beta[i] + Rational(Integer(static_cast<long>(shift + nn))), nn);
    }
    rhs.add_term(exponent_of(vars, n), coeff);
  }
  GenseriesReport report;
  report.checks.push_back(compare("prod (1 - v(z))^(-beta-1) binomial expansion", lhs, rhs));
  return report;
}

GenseriesReport verify_z_jacobian(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits) {
  const StringVariables vars = string_variables(c, level, max_degree, limits);
  const auto [v, h] = fixed_point(vars, shift_table(c, vars), -1);
  GenseriesReport report;
  report.checks.push_back(compare("det(z dv / v dz) = 1", log_jacobian_determinant(h), one(vars)));
  return report;
}

GenseriesReport verify_round_trip(const CartanData& c, int level, int max_degree, const GenseriesLimits& limits) {
  const StringVariables vars = string_variables(c, level, max_degree, limits);
  const auto w_v = w_of_v(c, vars);
  const auto v_w = v_of_w(c, vars);
  GenseriesReport report;
  IdentityCheck wvw{"w(v(w)) = w", true, 0, {}};
  IdentityCheck vwv{"v(w(v)) = v", true, 0, {}};
  for (int i = 0; i < vars.size(); ++i) {
    IdentityCheck a = compare(wvw.name, w_compose(w_v[i], v_w), var(vars, i));
    IdentityCheck b = compare(vwv.name, w_compose(v_w[i], w_v), var(vars, i));
    wvw.compared += a.compared;
    vwv.compared += b.compared;
    if (!a.ok && wvw.ok) wvw = a;
    if (!b.ok && vwv.ok) vwv = b;
  }
  report.checks.push_back(wvw);
  report.checks.push_back(vwv);
  return report;
}

GenseriesReport verify_k0_identities(const CartanData& c, int level) {
  const TruncationSpec spec = TruncationSpec::for_level(c, level);
  const int n = c.rank();
  const TruncatedSeries fermionic = k_series(c, ModeMap{}, level);
  const TruncatedSeries denominator = weyl_denominator_series(c, spec);

  std::vector<TruncatedSeries> q1;
  std::vector<TruncatedSeries> q1_inv;
  for (int a = 0; a < n; ++a) {
    q1.push_back(r_series(c, ModeMap::unit({a, 1}), level));
    q1_inv.push_back(invert_unit(q1.back()));
  }
  // (y_b / U_a) dU_a / dy_b = delta_ab - sum_c (alpha_a|alpha_c) t_c (y_b dQ_c / dy_b) / Q_c
  std::vector<std::vector<TruncatedSeries>> jac;
  for (int a = 0; a < n; ++a) {
    std::vector<TruncatedSeries> row;
    for (int b = 0; b < n; ++b) {
      TruncatedSeries entry = a == b ? TruncatedSeries::one(spec) : TruncatedSeries(spec);
      for (int cc = 0; cc < n; ++cc) {
        const std::int64_t e = c.form_times(a, cc, c.t(cc));
        if (e == 0) continue;
        entry = entry - mul(euler_derivative(q1[cc], b), q1_inv[cc]) * Rational(Integer(static_cast<long>(e)));
      }
      row.push_back(std::move(entry));
    }
    jac.push_back(std::move(row));
  }
  TruncatedSeries jacobian = series_determinant(jac);
  for (const auto& q : q1) jacobian = mul(jacobian, q);

  GenseriesReport report;
  report.experimental = !c.id().is_classical();
  report.checks.push_back(compare("K0 (counting) = Weyl denominator", fermionic, denominator));
  report.checks.push_back(compare("K0 (Jacobian of U) = Weyl denominator", jacobian, denominator));
  report.checks.push_back(compare("K0 (counting) = K0 (Jacobian of U)", fermionic, jacobian));
  return report;
}

std::vector<Rational> k_partial_sums(const CartanData& c, const ModeMap& nu, int level, const Rational& point,
                                     int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("k_partial_sums: negative degree");
  const StringVariables vars{level_set(c, level), max_degree};
  std::vector<Rational> by_degree(max_degree + 1, Rational(0));
  for (const ModeMap& n : patterns_up_to(vars)) {
    Rational term = Rational(k_number(c, nu, n));
    const std::int64_t d = n.total();
    for (std::int64_t i = 0; i < d; ++i) term *= point;
    by_degree[d] += term;
  }
  std::vector<Rational> partial;
  Rational acc = 0;
  for (const auto& x : by_degree) partial.push_back(acc += x);
  return partial;
}

}  // namespace krf
