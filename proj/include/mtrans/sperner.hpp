#pragma once

#include "mtrans/core.hpp"
#include "mtrans/transversal.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace mtrans {

/// Partitioned ground set X = X_0 + ... + X_{M-1} with |X_i| = m_i.
/// Elements are addressed as (part, index) with index < m_i.
class GroundSet {
 public:
  GroundSet() = default;
  /// Throws ParameterError unless M >= 1 and 1 <= m_i <= 31.
  explicit GroundSet(std::vector<int> m);
  GroundSet(std::initializer_list<int> m) : GroundSet(std::vector<int>(m)) {}

  [[nodiscard]] int parts() const { return static_cast<int>(m_.size()); }
  [[nodiscard]] int part_size(int i) const { return m_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<int>& part_sizes() const { return m_; }
  /// n_i = m_i + 1.
  [[nodiscard]] Dimensions dims() const { return Dimensions::from_part_sizes(m_); }
  /// Total number of subsets, 2^(sum m_i).
  [[nodiscard]] std::size_t subset_count() const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<int> m_;
};

/// A subset of the ground set, stored as one bit mask per part.
class PartedSet {
 public:
  PartedSet() = default;
  explicit PartedSet(std::vector<std::uint32_t> masks) : masks_(std::move(masks)) {}
  static PartedSet from_indices(const std::vector<std::vector<int>>& parts);

  [[nodiscard]] int parts() const { return static_cast<int>(masks_.size()); }
  [[nodiscard]] std::uint32_t part(int i) const { return masks_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<std::uint32_t>& masks() const { return masks_; }
  [[nodiscard]] std::vector<int> indices(int i) const;
  /// (|F cap X_0|, ..., |F cap X_{M-1}|).
  [[nodiscard]] ProfileVector profile() const;
  [[nodiscard]] bool fits(const GroundSet& ground) const;

  friend bool operator==(const PartedSet&, const PartedSet&) = default;
  friend auto operator<=>(const PartedSet&, const PartedSet&) = default;

 private:
  std::vector<std::uint32_t> masks_;
};

std::ostream& operator<<(std::ostream& os, const PartedSet& s);

/// Multiset of subsets of a partitioned ground set.
class SetFamily {
 public:
  using Entries = std::map<PartedSet, std::int64_t>;

  SetFamily() = default;
  explicit SetFamily(GroundSet ground) : ground_(std::move(ground)) {}
  SetFamily(GroundSet ground, std::initializer_list<PartedSet> sets);

  void add(const PartedSet& s, std::int64_t count = 1);
  [[nodiscard]] std::int64_t multiplicity(const PartedSet& s) const;
  [[nodiscard]] std::int64_t size() const;
  [[nodiscard]] std::size_t support_size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] bool is_simple() const;

  [[nodiscard]] const Entries& entries() const { return entries_; }
  [[nodiscard]] const GroundSet& ground() const { return ground_; }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  GroundSet ground_;
  Entries entries_;
};

std::ostream& operator<<(std::ostream& os, const SetFamily& f);

/// Dense census over pi_M, stored in lexicographic order of profile vectors.
class ProfileMatrix {
 public:
  ProfileMatrix() = default;
  explicit ProfileMatrix(Dimensions dims);
  ProfileMatrix(Dimensions dims, std::vector<std::int64_t> counts);

  [[nodiscard]] std::int64_t at(const ProfileVector& v) const { return counts_[dims_.index_of(v)]; }
  std::int64_t& at(const ProfileVector& v) { return counts_[dims_.index_of(v)]; }
  [[nodiscard]] const std::vector<std::int64_t>& counts() const { return counts_; }
  [[nodiscard]] const Dimensions& dims() const { return dims_; }
  [[nodiscard]] std::int64_t total() const;

  friend bool operator==(const ProfileMatrix&, const ProfileMatrix&) = default;
  friend auto operator<=>(const ProfileMatrix& a, const ProfileMatrix& b) { return a.counts_ <=> b.counts_; }

 private:
  Dimensions dims_;
  std::vector<std::int64_t> counts_;
};

std::ostream& operator<<(std::ostream& os, const ProfileMatrix& p);

/// A chain product over the parts in P that holds too many members. `fixed`
/// lists D_i for the parts outside P (increasing order); `chains` gives, per
/// part in P, the element order whose prefixes form the maximal chain.
struct SpernerViolation {
  Subset P;
  std::vector<std::uint32_t> fixed;
  std::vector<std::vector<int>> chains;
  std::int64_t count = 0;
  std::int64_t bound = 0;
};

struct SpernerReport {
  bool ok = true;
  std::vector<SpernerViolation> witnesses;
};

/// Checks every k-subset P, every fixing D of the parts outside P and every
/// product of maximal chains over the parts in P.
SpernerReport check_sperner(const SetFamily& f, const ParamSet& p);
/// Same test, stopping at the first violation.
bool is_sperner(const SetFamily& f, const ParamSet& p);

ProfileMatrix profile_matrix(const SetFamily& f);

/// The multiplicity-per-profile map r when every set of profile v occurs
/// exactly r_v times; nullopt otherwise.
std::optional<MultiTransversal> is_homogeneous(const SetFamily& f);

/// Every set whose profile is in supp(I), with multiplicity #[v, I].
SetFamily realize_homogeneous(const MultiTransversal& i, const GroundSet& ground);

/// sum_v p_v / prod_j C(m_j, v_j).
Rational blym_lhs(const SetFamily& f);

struct BlymEntry {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// For each P: the normalised profile sum against L_P * prod_{j not in P} n_j.
std::map<Subset, BlymEntry> blym_report(const SetFamily& f, const ParamSet& p);

/// Largest multichain (pairwise comparable members, counted with
/// multiplicity). Requires a single part.
std::int64_t longest_multichain(const SetFamily& f);
/// True iff f has no multichain of length L+1. Throws PreconditionError
/// unless M = 1.
bool multichain_free(const SetFamily& f, std::int64_t L);

/// { F cap X_i : F in f } as a simple family on X_i.
SetFamily trace(const SetFamily& f, int part);
/// Per part: whether the trace is a union of complete levels of 2^{X_i}.
std::vector<bool> trace_full_levels(const SetFamily& f);

/// Members whose parts outside D equal `fixed`, restricted to the parts in D
/// (sorted). Entries of `fixed` for parts in D are ignored.
SetFamily restrict_family(const SetFamily& f, const PartedSet& fixed, const Subset& D);
/// The bounds L_P for P inside D, re-indexed onto the parts of D.
ParamSet restrict_params(const ParamSet& p, const Subset& D);

enum class ShadowDirection { lower, upper };

/// Lower or upper shadow of a simple single-part family whose members all
/// have the same size.
SetFamily shadow(const SetFamily& a, ShadowDirection direction);

/// Non-homogeneous k = M family: the union over l of
/// (prod_{j < M-1} C(X_j, levels[j][l])) x blocks[l], where the blocks
/// partition the r-subsets of the last part.
SetFamily example1(const GroundSet& ground, int r, const std::vector<std::vector<std::uint32_t>>& blocks,
                   const std::vector<std::vector<int>>& levels);

/// All bit masks over `bits` elements with exactly `size` bits set, ascending.
std::vector<std::uint32_t> masks_of_size(int bits, int size);

}  // namespace mtrans
