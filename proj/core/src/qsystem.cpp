#include "krf/qsystem.hpp"

#include <algorithm>
#include <stdexcept>

namespace krf {

std::int64_t b_coeff(const CartanData& c, ModeIndex am, ModeIndex bk) {
  const std::int64_t tm = std::int64_t(c.t(bk.a)) * am.m;
  const std::int64_t ta = c.t(am.a);
  const std::int64_t k = bk.m;
  return 2 * std::min(tm, ta * k) - std::min(tm, ta * (k + 1)) - std::min(tm, ta * (k - 1));
}

std::int64_t b_coeff_closed_form(const CartanData& c, ModeIndex am, ModeIndex bk) {
  const int ta = c.t(am.a);
  const int tb = c.t(bk.a);
  const std::int64_t m = am.m;
  const std::int64_t k = bk.m;
  auto delta = [](std::int64_t x, std::int64_t y) -> std::int64_t { return x == y ? 1 : 0; };
  if (ta == 2 && tb == 1) return 2 * delta(m, 2 * k) + delta(m, 2 * k + 1) + delta(m, 2 * k - 1);
  if (ta == 3 && tb == 1) {
    return 3 * delta(m, 3 * k) + 2 * delta(m, 3 * k + 1) + 2 * delta(m, 3 * k - 1) + delta(m, 3 * k + 2) +
           delta(m, 3 * k - 2);
  }
  return ta * delta(tb * m, ta * k);
}

std::vector<std::pair<ModeIndex, std::int64_t>> b_support(const CartanData& c, ModeIndex am) {
  std::vector<std::pair<ModeIndex, std::int64_t>> out;
  for (int b = 0; b < c.rank(); ++b) {
    // Nonzero only when t_a (k-1) < t_b m < t_a (k+1).
    const int k_max = (c.t(b) * am.m) / c.t(am.a) + 1;
    for (int k = 1; k <= k_max; ++k) {
      const std::int64_t v = b_coeff(c, am, {b, k});
      if (v != 0) out.emplace_back(ModeIndex{b, k}, v);
    }
  }
  return out;
}

QTable::QTable(const CartanData& c, int level)
    : level_(level), rank_(c.rank()), spec_(TruncationSpec::for_level(c, level)) {
  if (level < 1) throw std::invalid_argument("QTable: level must be >= 1");
  for (int a = 0; a < rank_; ++a) max_m_.push_back(c.t(a) * level + 1);
}

TruncatedSeries QTable::get(ModeIndex am) const {
  if (am.m == 0) return TruncatedSeries::one(spec_);
  auto it = entries_.find(am);
  if (it == entries_.end()) {
    throw std::out_of_range("QTable: missing entry (" + std::to_string(am.a + 1) + "," + std::to_string(am.m) + ")");
  }
  return it->second;
}

void QTable::set(ModeIndex am, TruncatedSeries q) {
  if (am.a < 0 || am.a >= rank_ || am.m < 1 || am.m > max_m_[am.a]) throw std::out_of_range("QTable: index");
  if (!(q.truncation() == spec_)) throw std::invalid_argument("QTable: truncation mismatch");
  entries_.insert_or_assign(am, std::move(q));
}

TruncatedSeries q_coupling_product(const CartanData& c, const QTable& table, ModeIndex am) {
  TruncatedSeries prod = TruncatedSeries::one(table.truncation());
  for (const auto& [bk, b] : b_support(c, am)) {
    const std::int64_t e = -c.form_times(am.a, bk.a, b);
    if (e == 0) continue;
    prod = mul(prod, pow_int(table.get(bk), e));
  }
  return prod;
}

namespace {

TruncatedSeries y_power(const TruncationSpec& spec, int a, int m) {
  std::vector<int> e(spec.num_vars(), 0);
  e[a] = m;
  return TruncatedSeries::monomial(spec, e);
}

bool factors_ready(const CartanData& c, const QTable& table, ModeIndex am) {
  if (!table.has({am.a, am.m - 1})) return false;
  for (const auto& [bk, b] : b_support(c, am)) {
    if (c.form(am.a, bk.a) != 0 && !table.has(bk)) return false;
  }
  return true;
}

}  // namespace

QTable q_forward(const CartanData& c, const std::vector<TruncatedSeries>& q1, int level) {
  if (static_cast<int>(q1.size()) != c.rank()) throw std::invalid_argument("q_forward: need one Q_1 per color");
  QTable table(c, level);
  for (int a = 0; a < c.rank(); ++a) {
    if (q1[a].constant_term() == 0) throw std::domain_error("q_forward: Q_1 must be invertible");
    table.set({a, 1}, q1[a].truncated(table.truncation()));
  }
  // Filtration step L covers every (a, m) with t_max (m-1) <= t_a (L-1);
  // within a step, modes are produced as soon as their factors exist.
  const int steps = c.t_max() * level + 1;
  for (int step = 2; step <= steps + 1; ++step) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int a = 0; a < c.rank(); ++a) {
        for (int m = 1; m + 1 <= table.max_m(a); ++m) {
          const ModeIndex next{a, m + 1};
          if (table.has(next) || !in_filtration(c, step, next)) continue;
          if (!table.has({a, m}) || !factors_ready(c, table, {a, m})) continue;
          const TruncatedSeries qm = table.get({a, m});
          const TruncatedSeries prev = table.get({a, m - 1});
          const TruncatedSeries coupling = q_coupling_product(c, table, {a, m});
          TruncatedSeries factor = TruncatedSeries::one(table.truncation()) -
                                   mul(y_power(table.truncation(), a, m), coupling);
          table.set(next, mul(mul(mul(qm, qm), invert_unit(prev)), factor));
          progress = true;
        }
      }
    }
  }
  for (int a = 0; a < c.rank(); ++a) {
    for (int m = 1; m <= table.max_m(a); ++m) {
      if (!table.has({a, m})) throw std::logic_error("q_forward: recursion left an entry unfilled");
    }
  }
  return table;
}

QResidualReport check_qsystem(const CartanData& c, const QTable& table) {
  QResidualReport report;
  const auto& spec = table.truncation();
  for (int a = 0; a < table.rank(); ++a) {
    for (int m = 1; m <= c.t(a) * table.level(); ++m) {
      const TruncatedSeries qm = table.get({a, m});
      const TruncatedSeries qm2 = mul(qm, qm);
      TruncatedSeries residual = qm2 - mul(table.get({a, m + 1}), table.get({a, m - 1})) -
                                 mul(mul(y_power(spec, a, m), qm2), q_coupling_product(c, table, {a, m}));
      ++report.checked;
      if (!residual.is_zero()) report.residuals.emplace_back(ModeIndex{a, m}, std::move(residual));
    }
  }
  return report;
}

std::vector<bool> check_convergence(const QTable& table) {
  std::vector<bool> ok(table.rank(), true);
  for (int a = 0; a < table.rank(); ++a) {
    for (int m = 1; m + 1 <= table.max_m(a); ++m) {
      if (!table.has({a, m}) || !table.has({a, m + 1})) continue;
      if (!(table.get({a, m}) - table.get({a, m + 1})).mod_variable_power(a, m + 1).is_zero()) ok[a] = false;
    }
  }
  return ok;
}

}  // namespace krf

namespace krf {

BIdentityReport verify_b_identities(const CartanData& c, int max_index, int max_level) {
  BIdentityReport report;
  auto fail = [&](const std::string& what, ModeIndex am, int b, int k) {
    report.failures.push_back(what + " at (a,m)=(" + std::to_string(am.a + 1) + "," + std::to_string(am.m) + "), b=" +
                              std::to_string(b + 1) + ", k=" + std::to_string(k));
  };
  for (int a = 0; a < c.rank(); ++a) {
    for (int m = 1; m <= max_index; ++m) {
      const ModeIndex am{a, m};
      // B_{am,bk} vanishes once t_a (k - 1) >= t_b m.
      std::vector<Rational> weighted(c.rank(), Rational(0));
      for (int b = 0; b < c.rank(); ++b) {
        const int k_end = c.t(b) * m / c.t(a) + 2;
        std::int64_t first_moment = 0;
        for (int k = 1; k <= std::max(k_end, max_index); ++k) {
          const std::int64_t v = b_coeff(c, am, {b, k});
          ++report.checked;
          if (v != b_coeff_closed_form(c, am, {b, k})) fail("closed form", am, b, k);
          first_moment += v * k;
        }
        if (first_moment != std::int64_t(c.t(b)) * m) fail("sum_k B k = t_b m", am, b, 0);
        for (int k = 1; k <= max_index; ++k) {
          std::int64_t s = 0;
          for (int j = 1; j <= k_end; ++j) s += b_coeff(c, am, {b, j}) * std::min(j, k);
          ++report.checked;
          if (s != std::min<std::int64_t>(std::int64_t(c.t(b)) * m, std::int64_t(c.t(a)) * k))
            fail("sum_j B min(j, k) = min(t_b m, t_a k)", am, b, k);
        }
        weighted[b] = c.form(a, b) * Rational(Integer(static_cast<long>(first_moment)));
      }
      const Weight target = m * c.simple_root(a);
      for (int b = 0; b < c.rank(); ++b) {
        ++report.checked;
        if (weighted[b] != Rational(Integer(static_cast<long>(target[b])))) fail("sum (alpha_a|alpha_b) B k Lambda_b = m alpha_a", am, b, 0);
      }
    }
  }
  for (int l = 1; l <= max_level; ++l) {
    for (const ModeIndex& am : level_set(c, l)) {
      for (const auto& [bk, v] : b_support(c, am)) {
        ++report.checked;
        if (!in_level_set(c, l, bk)) fail("H_" + std::to_string(l) + " closure", am, bk.a, bk.m);
      }
    }
  }
  return report;
}

}  // namespace krf
