#pragma once

#include "mtrans/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mtrans {

/// Sorted list of 0-based part (coordinate) indices.
using Subset = std::vector<int>;

/// A point of the coordinate box: one level per part.
class ProfileVector {
 public:
  ProfileVector() = default;
  explicit ProfileVector(std::vector<int> coords) : coords_(std::move(coords)) {}
  ProfileVector(std::initializer_list<int> coords) : coords_(coords) {}

  [[nodiscard]] int size() const { return static_cast<int>(coords_.size()); }
  [[nodiscard]] int operator[](int j) const { return coords_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const std::vector<int>& coords() const { return coords_; }

  friend bool operator==(const ProfileVector&, const ProfileVector&) = default;
  friend auto operator<=>(const ProfileVector&, const ProfileVector&) = default;

 private:
  std::vector<int> coords_;
};

std::ostream& operator<<(std::ostream& os, const ProfileVector& v);
std::string to_string(const ProfileVector& v);

/// Level counts n_j of the coordinate box pi_M = prod_j {0, ..., n_j - 1}.
/// When a ground set is attached, n_j = m_j + 1 with m_j the part size.
class Dimensions {
 public:
  Dimensions() = default;
  explicit Dimensions(std::vector<int> n);
  Dimensions(std::initializer_list<int> n) : Dimensions(std::vector<int>(n)) {}

  /// Dimensions with n_j = m_j + 1.
  static Dimensions from_part_sizes(std::span<const int> m);

  [[nodiscard]] int parts() const { return static_cast<int>(n_.size()); }
  [[nodiscard]] int size(int j) const { return n_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const std::vector<int>& sizes() const { return n_; }
  [[nodiscard]] std::vector<int> part_sizes() const;

  /// prod_j n_j. Throws ScaleError if it does not fit in 63 bits.
  [[nodiscard]] std::size_t cell_count() const;

  [[nodiscard]] bool contains(const ProfileVector& v) const;
  /// Throws RangeError naming the offending coordinate.
  void require(const ProfileVector& v) const;

  /// Lexicographic rank of v (last coordinate varies fastest).
  [[nodiscard]] std::size_t index_of(const ProfileVector& v) const;
  [[nodiscard]] ProfileVector vector_at(std::size_t index) const;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;

 private:
  std::vector<int> n_;
};

std::ostream& operator<<(std::ostream& os, const Dimensions& d);

/// Finite multiset over pi_M. Absent vectors have multiplicity zero; stored
/// multiplicities are always >= 1.
class MultiTransversal {
 public:
  using Entries = std::map<ProfileVector, std::int64_t>;

  MultiTransversal() = default;
  explicit MultiTransversal(Dimensions dims) : dims_(std::move(dims)) {}
  /// Simple multiset containing each listed vector once.
  MultiTransversal(Dimensions dims, std::initializer_list<ProfileVector> vectors);

  /// Adds `count` copies of v (count >= 0).
  void add(const ProfileVector& v, std::int64_t count = 1);
  /// Sets the multiplicity of v; zero removes it.
  void set(const ProfileVector& v, std::int64_t count);

  [[nodiscard]] std::int64_t multiplicity(const ProfileVector& v) const;
  /// Total size counted with multiplicity.
  [[nodiscard]] std::int64_t size() const;
  [[nodiscard]] std::size_t support_size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  [[nodiscard]] const Entries& entries() const { return entries_; }
  [[nodiscard]] const Dimensions& dims() const { return dims_; }

  friend bool operator==(const MultiTransversal&, const MultiTransversal&) = default;

 private:
  Dimensions dims_;
  Entries entries_;
};

std::ostream& operator<<(std::ostream& os, const MultiTransversal& t);

/// All k-subsets of {0, ..., M-1} in lexicographic order.
std::vector<Subset> k_subsets(int M, int k);
/// {0, ..., M-1} \ P, sorted.
Subset complement(const Subset& P, int M);
std::string to_string(const Subset& P);

/// Dimensions, level k, and a bound L_P for every k-subset P.
class ParamSet {
 public:
  ParamSet() = default;
  /// Throws ParameterError unless 1 <= k <= M, every k-subset has a bound,
  /// no other key is present, and every bound is >= 1.
  ParamSet(Dimensions dims, int k, std::map<Subset, std::int64_t> bounds);

  /// Every L_P equal to `bound`.
  static ParamSet uniform(Dimensions dims, int k, std::int64_t bound);

  [[nodiscard]] const Dimensions& dims() const { return dims_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int parts() const { return dims_.parts(); }
  [[nodiscard]] std::int64_t bound(const Subset& P) const;
  [[nodiscard]] const std::map<Subset, std::int64_t>& bounds() const { return bounds_; }
  [[nodiscard]] std::vector<Subset> subsets() const { return k_subsets(parts(), k_); }

  /// K_P = prod_{i in P} n_i.
  [[nodiscard]] std::int64_t box_size(const Subset& P) const;
  /// N_P = lcm { n_i : i in P }.
  [[nodiscard]] std::int64_t box_lcm(const Subset& P) const;
  /// L_P * prod_{j not in P} n_j, the size bound attached to P.
  [[nodiscard]] std::int64_t size_bound(const Subset& P) const;
  /// L_P / K_P.
  [[nodiscard]] Rational density(const Subset& P) const;

  friend bool operator==(const ParamSet&, const ParamSet&) = default;

 private:
  Dimensions dims_;
  int k_ = 0;
  std::map<Subset, std::int64_t> bounds_;
};

/// Every vector of pi_M exactly once, lexicographically.
std::vector<ProfileVector> enumerate_pi(const Dimensions& dims);

/// Calls fn(v) for every v in pi_M in lexicographic order without
/// materialising the list.
void for_each_cell(const Dimensions& dims, const std::function<void(const ProfileVector&)>& fn);

/// prod_i C(m_i, t_i). Throws RangeError unless 0 <= t_i <= m_i.
BigInt weight(const ProfileVector& t, std::span<const int> m);

/// Fractional part of alpha + sum_j v_j / n_j.
Rational frac_sum(const ProfileVector& v, const Dimensions& dims, const Rational& alpha = Rational(0));

/// lcm of all n_j.
std::int64_t lcm_of(std::span<const int> values);

}  // namespace mtrans
