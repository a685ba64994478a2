#include "krf/sce.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "krf/fermionic.hpp"

namespace krf {

namespace {

Rational mod_one(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

Integer int_pow(const Integer& base, std::size_t e) {
  Integer r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

SCEInstance build_sce(const CartanData& c, const ModeMap& nu, const ModeMap& pattern) {
  if (pattern.is_zero()) throw std::invalid_argument("build_sce: pattern must be nonzero");
  if (!pattern.is_nonnegative()) throw std::invalid_argument("build_sce: pattern has a negative entry");
  SCEInstance inst{c, nu, pattern, {}, {}, {}};
  std::size_t d = 0;
  for (const auto& [am, n] : pattern.entries()) {
    inst.groups.push_back({am, d, static_cast<std::size_t>(n)});
    d += static_cast<std::size_t>(n);
  }
  std::vector<ModeIndex> row_mode(d);
  std::vector<std::int64_t> diag(d);
  for (const auto& g : inst.groups) {
    const std::int64_t pn = vacancy(c, nu, pattern, g.mode) + pattern.get(g.mode);
    for (std::size_t i = 0; i < g.count; ++i) {
      row_mode[g.start + i] = g.mode;
      diag[g.start + i] = pn;
      inst.rhs.push_back(Rational(Integer(static_cast<long>(pn + 1)), Integer(2)));
      inst.rhs.back().canonicalize();
    }
  }
  inst.a.assign(d, std::vector<Integer>(d, Integer(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const ModeIndex am = row_mode[i];
      const ModeIndex bk = row_mode[j];
      std::int64_t v = c.pairing_min(am.a, am.m, bk.a, bk.m) - (am == bk ? 1 : 0);
      if (i == j) v += diag[i];
      inst.a[i][j] = Integer(static_cast<long>(v));
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (inst.a[i][j] != inst.a[j][i]) throw std::logic_error("build_sce: matrix not symmetric");
  return inst;
}

SetPartition::SetPartition(std::vector<std::vector<int>> blocks) {
  int n = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
    std::sort(b.begin(), b.end());
    n += static_cast<int>(b.size());
  }
  std::vector<bool> seen(n, false);
  for (const auto& b : blocks) {
    for (int x : b) {
      if (x < 0 || x >= n || seen[x]) throw std::invalid_argument("SetPartition: blocks must partition {0..n-1}");
      seen[x] = true;
    }
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  size_ = n;
  blocks_ = std::move(blocks);
}

SetPartition SetPartition::finest(int n) {
  std::vector<std::vector<int>> b;
  for (int i = 0; i < n; ++i) b.push_back({i});
  return SetPartition(std::move(b));
}

SetPartition SetPartition::coarsest(int n) {
  if (n == 0) return SetPartition();
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return SetPartition({all});
}

std::vector<SetPartition> SetPartition::all(int n) {
  if (n < 0 || n > 12) throw std::invalid_argument("SetPartition::all: size out of range");
  std::vector<SetPartition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == n) {
      std::vector<std::vector<int>> blocks(max_label + 1);
      for (int j = 0; j < n; ++j) blocks[rgs[j]].push_back(j);
      out.emplace_back(std::move(blocks));
      return;
    }
    for (int label = 0; label <= max_label + 1; ++label) {
      rgs[i] = label;
      rec(i + 1, std::max(max_label, label));
    }
  };
  if (n == 0) return {SetPartition()};
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

int SetPartition::block_of(int i) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), i)) return static_cast<int>(b);
  throw std::out_of_range("SetPartition::block_of");
}

bool SetPartition::is_coarsening_of(const SetPartition& finer) const {
  if (finer.size_ != size_) return false;
  for (const auto& fb : finer.blocks_) {
    const int home = block_of(fb.front());
    for (int x : fb)
      if (block_of(x) != home) return false;
  }
  return true;
}

Integer mobius_partition(const SetPartition& pi, const SetPartition& top) {
  if (!pi.is_coarsening_of(top)) throw std::invalid_argument("mobius_partition: pi is not below top");
  // The interval is a product of full partition lattices, one per block of pi
  // on the set of top-blocks it contains.
  std::vector<int> inside(pi.length(), 0);
  for (const auto& tb : top.blocks()) ++inside[pi.block_of(tb.front())];
  Integer mu = 1;
  for (int k : inside) {
    mu *= factorial(static_cast<unsigned>(k - 1));
    if ((k - 1) % 2) mu = -mu;
  }
  return mu;
}

std::vector<PartitionFamily> all_partition_families(const SCEInstance& inst) {
  std::vector<PartitionFamily> out{PartitionFamily{}};
  for (const auto& g : inst.groups) {
    const auto parts = SetPartition::all(static_cast<int>(g.count));
    std::vector<PartitionFamily> next;
    next.reserve(out.size() * parts.size());
    for (const auto& base : out) {
      for (const auto& p : parts) {
        PartitionFamily f = base;
        f.push_back(p);
        next.push_back(std::move(f));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

void check_family(const SCEInstance& inst, const PartitionFamily& pi) {
  if (pi.size() != inst.groups.size()) throw std::invalid_argument("partition family: one partition per group");
  for (std::size_t g = 0; g < pi.size(); ++g) {
    if (pi[g].ground_size() != static_cast<int>(inst.groups[g].count))
      throw std::invalid_argument("partition family: wrong ground set size");
  }
}

}  // namespace

Integer det_a_pi_direct(const SCEInstance& inst, const PartitionFamily& pi) {
  check_family(inst, pi);
  // Global index sets of every block, in group order.
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t g = 0; g < pi.size(); ++g) {
    for (const auto& b : pi[g].blocks()) {
      std::vector<std::size_t> idx;
      for (int x : b) idx.push_back(inst.groups[g].start + static_cast<std::size_t>(x));
      blocks.push_back(std::move(idx));
    }
  }
  const std::size_t r = blocks.size();
  Matrix<Integer> red(r, std::vector<Integer>(r, Integer(0)));
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t row = blocks[i].front();
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t col : blocks[j]) red[i][j] += inst.a[row][col];
  }
  return bareiss_determinant(std::move(red));
}

Integer det_a_pi_closed(const SCEInstance& inst, const PartitionFamily& pi) {
  check_family(inst, pi);
  const CartanData& c = inst.algebra;
  Integer det = bareiss_determinant(f_matrix(c, inst.nu, inst.pattern));
  for (std::size_t g = 0; g < pi.size(); ++g) {
    const ModeIndex am = inst.groups[g].mode;
    const Integer pn(static_cast<long>(vacancy(c, inst.nu, inst.pattern, am) + inst.pattern.get(am)));
    det *= int_pow(pn, pi[g].length() - 1);
  }
  return det;
}

Integer det_a_pi(const SCEInstance& inst, const PartitionFamily& pi) {
  Integer direct = det_a_pi_direct(inst, pi);
  Integer closed = det_a_pi_closed(inst, pi);
  if (direct != closed) {
    throw std::logic_error("det A^pi: reduction gives " + direct.get_str() + ", closed form gives " +
                           closed.get_str());
  }
  return direct;
}

MobiusCount count_offdiagonal_mobius(const SCEInstance& inst) {
  MobiusCount out;
  out.hypothesis_ok = true;
  for (const auto& g : inst.groups)
    if (vacancy(inst.algebra, inst.nu, inst.pattern, g.mode) < 0) out.hypothesis_ok = false;

  Integer sum = 0;
  for (const PartitionFamily& pi : all_partition_families(inst)) {
    Integer mu = 1;
    for (const auto& p : pi) mu *= mobius_partition(p, SetPartition::finest(p.ground_size()));
    sum += mu * det_a_pi(inst, pi);
  }
  Integer denom = 1;
  for (const auto& g : inst.groups) denom *= factorial(static_cast<unsigned>(g.count));
  out.value = Rational(sum, denom);
  out.value.canonicalize();
  return out;
}

namespace {

// U a V = diag with U, V unimodular; a is overwritten by the diagonal form.
struct Diagonalization {
  Matrix<Integer> u;
  Matrix<Integer> v;
};

Matrix<Integer> identity(std::size_t n) {
  Matrix<Integer> m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Diagonalization diagonalize(Matrix<Integer>& a) {
  const std::size_t n = a.size();
  Diagonalization t{identity(n), identity(n)};
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(t.u[i], t.u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(a[r][i], a[r][j]);
      std::swap(t.v[r][i], t.v[r][j]);
    }
  };
  // row_i -= q row_j
  auto row_op = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t k = 0; k < n; ++k) {
      a[i][k] -= q * a[j][k];
      t.u[i][k] -= q * t.u[j][k];
    }
  };
  // col_i -= q col_j
  auto col_op = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < n; ++r) {
      a[r][i] -= q * a[r][j];
      t.v[r][i] -= q * t.v[r][j];
    }
  };
  for (std::size_t p = 0; p < n; ++p) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = n, bj = n;
      for (std::size_t i = p; i < n; ++i)
        for (std::size_t j = p; j < n; ++j)
          if (a[i][j] != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == n) return t;
      swap_rows(p, bi);
      swap_cols(p, bj);
      bool clean = true;
      for (std::size_t i = p + 1; i < n; ++i) {
        if (a[i][p] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][p].get_mpz_t(), a[p][p].get_mpz_t());
        row_op(i, p, q);
        if (a[i][p] != 0) clean = false;
      }
      for (std::size_t j = p + 1; j < n; ++j) {
        if (a[p][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[p][j].get_mpz_t(), a[p][p].get_mpz_t());
        col_op(j, p, q);
        if (a[p][j] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  return t;
}

}  // namespace

std::vector<std::vector<Rational>> enumerate_solutions_bruteforce(const SCEInstance& inst, const Integer& max_det) {
  const std::size_t n = inst.dimension();
  const Integer det = abs(bareiss_determinant(inst.a));
  if (det == 0) throw std::domain_error("enumerate_solutions_bruteforce: A is singular");
  if (det > max_det) {
    throw std::length_error("enumerate_solutions_bruteforce: |det A| = " + det.get_str() + " exceeds the limit " +
                            max_det.get_str());
  }
  Matrix<Integer> s = inst.a;
  const Diagonalization t = diagonalize(s);

  // s_i x_i = (U rhs)_i mod Z, then u = V x.
  std::vector<Rational> target(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) target[i] += Rational(t.u[i][k]) * inst.rhs[k];
  std::vector<std::int64_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = to_int64(abs(s[i][i]), "diagonal entry");

  std::vector<std::vector<Rational>> out;
  std::vector<std::int64_t> digit(n, 0);
  while (true) {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (target[i] + Rational(Integer(static_cast<long>(digit[i])))) / Rational(s[i][i]);
    std::vector<Rational> u(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) u[i] += Rational(t.v[i][k]) * x[k];
      u[i] = mod_one(u[i]);
    }
    out.push_back(std::move(u));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::logic_error("enumerate_solutions_bruteforce: duplicate representative");
  return out;
}

std::vector<std::vector<Rational>> filter_offdiagonal(const SCEInstance& inst,
                                                      const std::vector<std::vector<Rational>>& sols) {
  std::vector<std::vector<Rational>> out;
  for (const auto& u : sols) {
    bool keep = true;
    for (const auto& g : inst.groups) {
      for (std::size_t i = 0; i < g.count && keep; ++i)
        for (std::size_t j = i + 1; j < g.count && keep; ++j)
          if (mod_one(u[g.start + i]) == mod_one(u[g.start + j])) keep = false;
    }
    if (keep) out.push_back(u);
  }
  return out;
}

std::int64_t order_correction(const CartanData& c, const ModeMap& pattern, int a, int j) {
  if (c.t(a) != 1) return 0;
  std::int64_t delta = 0;
  for (int b = 0; b < c.rank(); ++b) {
    if (b == a || c.cartan(a, b) == 0) continue;
    if (c.t(b) == 2) delta -= pattern.get({b, 2 * j});
    if (c.t(b) == 3) delta -= pattern.get({b, 3 * j - 1}) + 2 * pattern.get({b, 3 * j}) + pattern.get({b, 3 * j + 1});
  }
  return delta;
}

bool check_order_condition(const CartanData& c, const ModeMap& nu, const ModeMap& pattern) {
  const std::int64_t t = c.t_max();
  for (const ModeIndex& am : pattern.support()) {
    const int m = am.m;
    const std::int64_t ratio = t / c.t(am.a);  // t_a divides t_max for every Cartan type
    for (int i = 2; i <= m; ++i) {
      std::int64_t sum = 0;
      for (int k = 1; k <= std::min(i - 1, m + 1 - i); ++k) {
        const ModeIndex aj{am.a, m + 1 - 2 * k};
        sum += ratio * (vacancy(c, nu, pattern, aj) + pattern.get(aj)) + order_correction(c, pattern, am.a, aj.m);
      }
      if (sum <= 0) return false;
    }
  }
  return true;
}

int genericity_shift(const CartanData& c, ModeIndex am, ModeIndex bk) {
  const std::int64_t ta = c.t(am.a);
  const std::int64_t tb = c.t(bk.a);
  const std::int64_t two_t = 2 * c.t_max();
  const std::int64_t diff = tb * am.m - ta * bk.m;
  const std::int64_t r = ((diff % two_t) + two_t) % two_t;
  const bool near_odd = r == 1 || r == two_t - 1;
  if (!near_odd) return 0;
  const int sign = (r == 1) ? 1 : -1;  // sign with value = diff mod 2t
  if (ta < tb && diff > 0) return sign;
  if (ta > tb && diff < 0) return -sign;
  return 0;
}

Rational genericity_exponent(const CartanData& c, ModeIndex am, ModeIndex bk) {
  const std::int64_t ta = c.t(am.a);
  const std::int64_t tb = c.t(bk.a);
  const std::int64_t t = c.t_max();
  const std::int64_t tab = std::max(ta, tb);
  const std::int64_t inner = std::min(tb * am.m, ta * bk.m) + (1 - t) * genericity_shift(c, am, bk);
  Rational e = make_rational(inner, tab);
  if (am == bk) e -= 1;
  return e;
}

bool check_genericity(const SCEInstance& inst, const std::vector<Rational>& sol) {
  const CartanData& c = inst.algebra;
  if (sol.size() != inst.dimension()) throw std::invalid_argument("check_genericity: wrong solution length");
  std::vector<ModeIndex> mode(inst.dimension());
  for (const auto& g : inst.groups)
    for (std::size_t i = 0; i < g.count; ++i) mode[g.start + i] = g.mode;

  for (std::size_t i = 0; i < sol.size(); ++i) {
    const ModeIndex am = mode[i];
    std::int64_t exponent = 0;
    for (int k = 1; k < am.m; ++k)
      if ((am.m - k) % 2) exponent += inst.nu.get({am.a, k});
    if (exponent > 0 && mod_one(sol[i]) == 0) return false;

    for (std::size_t j = 0; j < sol.size(); ++j) {
      if (j == i) continue;
      const ModeIndex bk = mode[j];
      const std::int64_t parity = std::int64_t(c.t(bk.a)) * (am.m - 1) - std::int64_t(c.t(am.a)) * (bk.m - 1) -
                                  std::int64_t(c.t(bk.a)) * c.cartan(am.a, bk.a);
      if (parity % 2 != 0) continue;
      if (genericity_exponent(c, am, bk) != 0 && mod_one(sol[i]) == mod_one(sol[j])) return false;
    }
  }
  return true;
}

}  // namespace krf
