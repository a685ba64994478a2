#pragma once

// String center equation A u = (P + N + 1)/2 mod Z: the matrix, Mobius
// counting of off-diagonal solutions over set-partition lattices, an
// independent diagonal-form enumerator, and the admissibility predicates.

#include <cstdint>
#include <vector>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/numeric.hpp"

namespace krf {

/// Columns [start, start + count) of A belong to string mode `mode`.
struct SceGroup {
  ModeIndex mode;
  std::size_t start = 0;
  std::size_t count = 0;
};

struct SCEInstance {
  CartanData algebra;
  ModeMap nu;
  ModeMap pattern;
  Matrix<Integer> a;
  std::vector<Rational> rhs;
  std::vector<SceGroup> groups;

  std::size_t dimension() const { return rhs.size(); }
};

/// Throws std::invalid_argument if the pattern is zero or has a negative entry.
SCEInstance build_sce(const CartanData& c, const ModeMap& nu, const ModeMap& pattern);

/// Blocks of a partition of {0, ..., size-1}; each block sorted, blocks
/// ordered by their smallest element.
class SetPartition {
 public:
  SetPartition() = default;
  /// Normalizes block order; throws std::invalid_argument unless the blocks
  /// are disjoint and cover {0, ..., n-1}.
  explicit SetPartition(std::vector<std::vector<int>> blocks);

  static SetPartition finest(int n);
  static SetPartition coarsest(int n);
  /// All partitions of {0, ..., n-1} (restricted growth strings).
  static std::vector<SetPartition> all(int n);

  int ground_size() const { return size_; }
  std::size_t length() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Index of the block containing i.
  int block_of(int i) const;

  /// Every block of *this is a union of blocks of finer.
  bool is_coarsening_of(const SetPartition& finer) const;

  bool operator==(const SetPartition&) const = default;

 private:
  int size_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// Mobius function of the partition lattice ordered so that coarser is
/// smaller: mu(pi, top) for pi a coarsening of top.
/// Throws std::invalid_argument otherwise.
Integer mobius_partition(const SetPartition& pi, const SetPartition& top);

/// One partition per instance group, in group order.
using PartitionFamily = std::vector<SetPartition>;

/// Every family in the product lattice of the instance.
std::vector<PartitionFamily> all_partition_families(const SCEInstance& inst);

/// Determinant of A with columns summed over each block and one row kept per block.
Integer det_a_pi_direct(const SCEInstance& inst, const PartitionFamily& pi);
/// det F * prod (P + N)^{l(pi) - 1}
Integer det_a_pi_closed(const SCEInstance& inst, const PartitionFamily& pi);
/// Both routes; throws std::logic_error if they differ.
Integer det_a_pi(const SCEInstance& inst, const PartitionFamily& pi);

struct MobiusCount {
  Rational value;
  /// P >= 0 on the support of the pattern, under which the count equals R.
  bool hypothesis_ok = false;
};

/// sum_pi mu(pi, finest) det A^pi / prod N!
MobiusCount count_offdiagonal_mobius(const SCEInstance& inst);

/// All solutions in [0, 1)^d, sorted lexicographically.
/// Throws std::domain_error if A is singular and std::length_error if
/// |det A| exceeds max_det.
std::vector<std::vector<Rational>> enumerate_solutions_bruteforce(const SCEInstance& inst,
                                                                  const Integer& max_det = 1000000);

/// Keeps solutions whose coordinates are pairwise distinct inside each group.
std::vector<std::vector<Rational>> filter_offdiagonal(const SCEInstance& inst,
                                                      const std::vector<std::vector<Rational>>& sols);

/// The correction Delta_j^{(a)} of the order condition.
std::int64_t order_correction(const CartanData& c, const ModeMap& pattern, int a, int j);

/// Necessary condition on (nu, N) for a generic string solution.
bool check_order_condition(const CartanData& c, const ModeMap& nu, const ModeMap& pattern);

/// Delta_{am}^{bk} in the exponents of the genericity condition; 0, 1 or -1.
int genericity_shift(const CartanData& c, ModeIndex am, ModeIndex bk);

/// Exponent of (z_{am} - z_{bk}) in the genericity condition.
Rational genericity_exponent(const CartanData& c, ModeIndex am, ModeIndex bk);

/// Genericity of a solution given as coordinates mod 1.
bool check_genericity(const SCEInstance& inst, const std::vector<Rational>& sol);

}  // namespace krf
