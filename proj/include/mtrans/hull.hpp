#pragma once

#include "mtrans/core.hpp"
#include "mtrans/sperner.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace mtrans {

/// One linear cap: sum_v alpha_v * (multiplicity measure of v) <= A.
struct GammaRow {
  std::int64_t A = 0;
  std::map<ProfileVector, std::int64_t> alpha;

  friend bool operator==(const GammaRow&, const GammaRow&) = default;
};

/// A finite set of caps. Families are measured by the largest multiplicity
/// of any set with profile v, multisets by the multiplicity of v itself.
class GammaConstraint {
 public:
  GammaConstraint() = default;
  /// Throws ParameterError on a negative A or coefficient.
  explicit GammaConstraint(std::vector<GammaRow> rows);

  /// Multiplicity at most one for every profile (characterises simple families).
  static GammaConstraint simplicity(const Dimensions& dims);
  /// Multiplicity at most `cap` for every profile.
  static GammaConstraint multiplicity_cap(const Dimensions& dims, std::int64_t cap);

  [[nodiscard]] const std::vector<GammaRow>& rows() const { return rows_; }
  [[nodiscard]] bool empty() const { return rows_.empty(); }
  /// Smallest floor(A / alpha_v) over rows with alpha_v > 0; nullopt if no row mentions v.
  [[nodiscard]] std::optional<std::int64_t> cap_for(const ProfileVector& v) const;

 private:
  std::vector<GammaRow> rows_;
};

/// Per-part orderings of the elements of each X_i.
class ProductPermutation {
 public:
  /// Throws ParameterError unless orders[i] is a permutation of {0..m_i-1}.
  ProductPermutation(const GroundSet& ground, std::vector<std::vector<int>> orders);
  static ProductPermutation identity(const GroundSet& ground);

  [[nodiscard]] const std::vector<int>& order(int part) const { return orders_[static_cast<std::size_t>(part)]; }
  /// The set whose part i is the first v_i elements of order(i).
  [[nodiscard]] PartedSet initial_set(const ProfileVector& v) const;
  [[nodiscard]] bool is_initial(const PartedSet& s) const;

 private:
  std::vector<std::vector<int>> orders_;
};

/// All product permutations of the ground set (prod_i m_i! of them).
std::vector<ProductPermutation> all_product_permutations(const GroundSet& ground);

/// T(I): the multiplicities of I as a dense matrix.
ProfileMatrix t_matrix(const MultiTransversal& i);
/// S(I): entry v is #[v, I] * prod_j C(m_j, v_j).
ProfileMatrix s_matrix(const MultiTransversal& i, const std::vector<int>& m);

/// One initial set per v in supp(I), repeated #[v, I] times.
SetFamily initial_family(const MultiTransversal& i, const GroundSet& ground, const ProductPermutation& order);
/// H(L): the members of f that are initial with respect to `order`.
SetFamily initial_restriction(const SetFamily& f, const ProductPermutation& order);

bool gamma_ok_family(const SetFamily& f, const GammaConstraint& g);
bool gamma_ok_multiset(const MultiTransversal& i, const GammaConstraint& g);

/// Every multi-transversal for p that satisfies g, smallest size first and
/// lexicographically by entries within a size. Multiplicities never exceed
/// min_P L_P (already forced by the bounds) or the caps derived from g.
/// Throws ScaleError once the search exceeds `node_budget` nodes.
std::vector<MultiTransversal> enumerate_transversals(const ParamSet& p, const GammaConstraint& g, bool simple_only,
                                                     std::int64_t node_budget = 20'000'000);

/// An ordering of supp(I) showing I is lexicographically maximal against
/// every competitor multi-transversal under g, or nullopt.
std::optional<std::vector<ProfileVector>> is_lem(const MultiTransversal& i, const ParamSet& p, const GammaConstraint& g);
/// Same test against a precomputed competitor list.
std::optional<std::vector<ProfileVector>> is_lem(const MultiTransversal& i, const std::vector<MultiTransversal>& competitors);

/// Weights lambda >= 0 summing to 1 with sum lambda_u * candidates[u] = target.
std::optional<std::vector<Rational>> convex_decomposition(const ProfileMatrix& target,
                                                          const std::vector<ProfileMatrix>& candidates);

/// The S(I) over all enumerated transversals that are not convex combinations
/// of the others, sorted.
std::vector<ProfileMatrix> extreme_points(const ParamSet& p, const GammaConstraint& g);
/// Extreme members of an arbitrary candidate list (duplicates collapse), sorted.
std::vector<ProfileMatrix> extreme_subset(std::vector<ProfileMatrix> candidates);

}  // namespace mtrans
