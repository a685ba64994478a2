#pragma once

// Cartan data for the simple Lie algebras A_n .. G_2.
//
// Vertex numbering (0-based here, 1-based in all user-facing output):
//   A_n  chain 1-2-...-n
//   B_n  chain, vertex n short (t_n = 2)
//   C_n  chain, vertices 1..n-1 short (t = 2), vertex n long
//   D_n  chain 1-...-(n-2), spin nodes n-1 and n both attached to n-2
//   E_6  chain 1-2-3-4-5, vertex 6 attached to 3
//   E_7  chain 1-...-6,   vertex 7 attached to 3
//   E_8  chain 1-...-7,   vertex 8 attached to 5
//   F_4  1-2=>3-4, vertices 3,4 short (t = 2)
//   G_2  1=>2, vertex 2 short (t = 3)
// The bilinear form is normalized so that long roots have (a|a) = 2,
// t_a = 2/(a_a|a_a) and C_ab = t_a (a_a|a_b).

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "krf/numeric.hpp"

namespace krf {

struct AlgebraId {
  char family = 'A';
  int rank = 1;

  /// Parses strings like "A1", "B2", "d4", "G2".
  static AlgebraId parse(const std::string& text);
  std::string name() const;
  bool is_classical() const { return family >= 'A' && family <= 'D'; }

  auto operator<=>(const AlgebraId&) const = default;
};

/// Integer vector in the fundamental-weight basis.
struct Weight {
  std::vector<std::int64_t> coords;

  Weight() = default;
  explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<std::int64_t> c) : coords(c) {}
  static Weight zero(std::size_t n) { return Weight(std::vector<std::int64_t>(n, 0)); }

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t& operator[](std::size_t i) { return coords[i]; }

  bool is_dominant() const;
  bool is_zero() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(std::int64_t s, Weight w) {
    for (auto& c : w.coords) c *= s;
    return w;
  }
  auto operator<=>(const Weight&) const = default;

  std::string str() const;
};

/// Simple-root coordinates of a root (or any element of the root lattice).
using RootCoords = std::vector<std::int64_t>;

class CartanData {
 public:
  /// Throws std::invalid_argument for ranks outside the family's range.
  static CartanData build(AlgebraId id);

  const AlgebraId& id() const { return id_; }
  int rank() const { return rank_; }
  int cartan(int a, int b) const { return cartan_[a][b]; }
  int t(int a) const { return t_[a]; }
  /// max_a t_a
  int t_max() const { return t_max_; }
  const std::vector<int>& t_vector() const { return t_; }
  /// (alpha_a | alpha_b)
  const Rational& form(int a, int b) const { return form_[a][b]; }

  /// (alpha_a|alpha_b) * min(t_b m, t_a k); integral for every valid input.
  std::int64_t pairing_min(int a, int m, int b, int k) const;
  /// (alpha_a|alpha_b) * x, asserted integral.
  std::int64_t form_times(int a, int b, std::int64_t x) const;

  const std::vector<RootCoords>& positive_roots() const { return positive_roots_; }

  /// alpha_a expressed in the fundamental-weight basis (column a of C).
  Weight simple_root(int a) const;
  /// sum_a c_a alpha_a in the fundamental-weight basis.
  Weight root_to_weight(const RootCoords& c) const;
  /// Solves lambda = sum_a d_a alpha_a; nullopt unless every d_a is an integer.
  std::optional<RootCoords> weight_to_root(const Weight& lambda) const;

  /// (lambda | mu) for weights in the fundamental-weight basis.
  Rational weight_form(const Weight& lambda, const Weight& mu) const;
  Weight rho() const;
  Weight fundamental(int a) const;

  /// s_a(lambda) = lambda - lambda_a alpha_a.
  Weight reflect(int a, const Weight& lambda) const;
  /// Dominant representative of the Weyl orbit of lambda.
  Weight dominant_conjugate(Weight lambda) const;
  /// Antidominant (lowest) representative of the Weyl orbit of lambda.
  Weight antidominant_conjugate(Weight lambda) const;
  /// Order of the Weyl group (standard formulas).
  std::uint64_t weyl_group_order() const;

 private:
  AlgebraId id_;
  int rank_ = 0;
  int t_max_ = 1;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> t_;
  Matrix<Rational> form_;
  Matrix<Rational> cartan_inverse_;
  Matrix<Rational> weight_gram_;  // (Lambda_a | Lambda_b)
  std::vector<RootCoords> positive_roots_;
};

inline CartanData build_cartan(AlgebraId id) { return CartanData::build(id); }
inline CartanData build_cartan(const std::string& name) { return CartanData::build(AlgebraId::parse(name)); }

/// Positive roots by root-string closure from the simple roots, sorted by height.
std::vector<RootCoords> compute_positive_roots(const std::vector<std::vector<int>>& cartan);

inline const std::vector<RootCoords>& positive_roots(const CartanData& c) { return c.positive_roots(); }

/// Throws std::out_of_range for a bad index.
Weight simple_reflection(const CartanData& c, int a, const Weight& lambda);

/// Number of positive roots for the family (n(n+1)/2 for A_n, ...).
std::size_t expected_positive_root_count(AlgebraId id);

}  // namespace krf
