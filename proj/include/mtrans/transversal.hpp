#pragma once

#include "mtrans/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace mtrans {

/// One failed fixing: with the coordinates outside P pinned to `fixed`
/// (listed in increasing coordinate order) the multiset holds `count`
/// elements, more than `bound`.
struct Violation {
  Subset P;
  std::vector<int> fixed;
  std::int64_t count = 0;
  std::int64_t bound = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ViolationReport {
  bool ok = true;
  std::vector<Violation> witnesses;
};

struct Fullness {
  bool is_full = false;
  std::vector<Subset> tight_sets;
};

/// Mixed orthogonal array: rows over per-column symbol sets {0, ..., n_j - 1}.
/// `lambda` maps each `strength`-subset of columns to its index.
struct Moa {
  std::vector<int> levels;
  std::vector<std::vector<int>> rows;
  int strength = 0;
  std::map<Subset, std::int64_t> lambda;

  [[nodiscard]] int columns() const { return static_cast<int>(levels.size()); }
};

/// Outcome of a strength test. When it fails, `columns` is the offending
/// column subset and the two tuples occur `first_count` and `second_count`
/// times respectively.
struct StrengthResult {
  bool holds = false;
  std::map<Subset, std::int64_t> lambda;
  Subset columns;
  std::vector<int> first_tuple;
  std::int64_t first_count = 0;
  std::vector<int> second_tuple;
  std::int64_t second_count = 0;
};

struct TransversalWithParams {
  MultiTransversal transversal;
  ParamSet params;
};

/// Checks the defining inequality for every k-subset P and every fixing of
/// the coordinates outside P; every violation is reported.
ViolationReport check_transversal(const MultiTransversal& t, const ParamSet& p);

/// Subsets P whose size bound |T| = L_P * prod_{j not in P} n_j is met.
/// Throws PreconditionError if t is not a transversal for p.
Fullness fullness(const MultiTransversal& t, const ParamSet& p);

/// True iff K_P / L_P is the same for every P.
bool konstant_holds(const ParamSet& p);

bool is_simple(const MultiTransversal& t);

/// Expands a full transversal into the rows of a strength M-k array.
/// Throws ConstructionError naming the unmet condition.
Moa to_moa(const MultiTransversal& t, const ParamSet& p);

/// Counts every symbol tuple on every d-subset of columns.
StrengthResult moa_strength(const Moa& a, int d);

/// Reads a strength-d array back as a full (M-d)-dimensional transversal with
/// L_P = lambda(complement of P). Throws ConstructionError with the witness
/// when the strength test fails.
TransversalWithParams from_moa(const Moa& a, int d);

/// The multiset formed by the rows of `a`.
MultiTransversal rows_as_multiset(const Moa& a);

}  // namespace mtrans
