#pragma once

#include "mtrans/core.hpp"
#include "mtrans/sperner.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mtrans {

enum class SolveMode { exhaustive, branch_and_bound };

struct SolveResult {
  MultiTransversal best;
  BigInt weight;
  std::int64_t node_count = 0;
  bool optimal = false;
};

/// Largest sum of weight(v, m) over simple transversals C for p. Among
/// optimal sets the one whose sorted vector list is lexicographically
/// smallest is returned. Exhaustive mode needs prod n_j <= 20, branch and
/// bound prod n_j <= 10^4; otherwise ScaleError. If branch and bound runs out
/// of `node_budget`, the incumbent is returned with optimal = false.
SolveResult max_weight_transversal(const ParamSet& p, const std::vector<int>& m, SolveMode mode,
                                   std::int64_t node_budget = 50'000'000);

/// prod_i C(m_i, floor(m_i / 2)).
BigInt max_size_k_eq_M(const std::vector<int>& m);
/// sum_{i=0}^{m_last} prod_j C(m_j, ceil(m_j/2) + (-1)^i ceil(i/2)). Throws
/// ParameterError unless the last part is a smallest one.
BigInt max_size_k_eq_M_minus_1(const std::vector<int>& m);

/// sum_l prod_j a[l][j]. Throws ParameterError if a column increases or the
/// rows are ragged.
Rational rearrangement_max(const std::vector<std::vector<Rational>>& a);

struct GenhomVerdict {
  /// k < M or k = M = 1.
  bool theorem_applies = false;
  /// Largest size of a homogeneous family (multiplicities <= cap).
  BigInt homogeneous_max;
  /// Transversals whose realisation reaches homogeneous_max.
  std::vector<MultiTransversal> homogeneous_maxima;
  /// Every such realisation meets the size bound of every P with equality.
  bool hypothesis_holds = false;
  /// Largest Sperner family found by the exhaustive sweep.
  std::int64_t family_max = 0;
  std::int64_t families_checked = 0;
  std::int64_t maximum_families = 0;
  bool all_maxima_homogeneous = true;
  std::optional<SetFamily> counterexample;
};

/// Compares maximum homogeneous families with an exhaustive sweep over every
/// family on the ground set whose multiplicities are at most `cap`. Throws
/// ScaleError when (cap + 1)^(2^sum m) exceeds 2^20.
GenhomVerdict genhom_check(const ParamSet& p, const std::vector<int>& m, std::int64_t cap = 1);

}  // namespace mtrans
