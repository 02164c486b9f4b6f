#include "mtrans/transversal.hpp"

#include "mtrans/error.hpp"

#include <sstream>

namespace mtrans {

namespace {

// Mixed-radix index over the coordinates in `coords`.
std::size_t group_index(const ProfileVector& v, const Subset& coords, const Dimensions& dims) {
  std::size_t index = 0;
  for (const int j : coords) {
    index = index * static_cast<std::size_t>(dims.size(j)) + static_cast<std::size_t>(v[j]);
  }
  return index;
}

std::size_t group_count(const Subset& coords, const Dimensions& dims) {
  std::size_t total = 1;
  for (const int j : coords) total *= static_cast<std::size_t>(dims.size(j));
  return total;
}

std::vector<int> decode_group(std::size_t index, const Subset& coords, const std::vector<int>& sizes) {
  std::vector<int> values(coords.size());
  for (std::size_t i = coords.size(); i-- > 0;) {
    const auto n = static_cast<std::size_t>(sizes[static_cast<std::size_t>(coords[i])]);
    values[i] = static_cast<int>(index % n);
    index /= n;
  }
  return values;
}

std::string tuple_string(const std::vector<int>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) os << ',';
    os << t[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

ViolationReport check_transversal(const MultiTransversal& t, const ParamSet& p) {
  const Dimensions& dims = p.dims();
  if (!(t.dims() == dims)) {
    throw PreconditionError("transversal dimensions differ from parameter dimensions");
  }
  ViolationReport report;
  for (const auto& P : p.subsets()) {
    const Subset outside = complement(P, dims.parts());
    std::vector<std::int64_t> counts(group_count(outside, dims), 0);
    for (const auto& [v, c] : t.entries()) counts[group_index(v, outside, dims)] += c;
    const std::int64_t bound = p.bound(P);
    for (std::size_t g = 0; g < counts.size(); ++g) {
      if (counts[g] > bound) {
        report.witnesses.push_back(Violation{P, decode_group(g, outside, dims.sizes()), counts[g], bound});
      }
    }
  }
  report.ok = report.witnesses.empty();
  return report;
}

Fullness fullness(const MultiTransversal& t, const ParamSet& p) {
  if (!check_transversal(t, p).ok) {
    throw PreconditionError("fullness requires a valid transversal");
  }
  Fullness result;
  const std::int64_t size = t.size();
  for (const auto& P : p.subsets()) {
    if (size == p.size_bound(P)) result.tight_sets.push_back(P);
  }
  result.is_full = !result.tight_sets.empty();
  return result;
}

bool konstant_holds(const ParamSet& p) {
  std::optional<Rational> ratio;
  for (const auto& P : p.subsets()) {
    const Rational r(p.box_size(P), p.bound(P));
    if (!ratio) {
      ratio = r;
    } else if (*ratio != r) {
      return false;
    }
  }
  return true;
}

bool is_simple(const MultiTransversal& t) {
  for (const auto& [v, c] : t.entries()) {
    if (c != 1) return false;
  }
  return true;
}

Moa to_moa(const MultiTransversal& t, const ParamSet& p) {
  if (!check_transversal(t, p).ok) {
    throw ConstructionError("to_moa: not a transversal for the given parameters");
  }
  if (!fullness(t, p).is_full) {
    throw ConstructionError("to_moa: transversal is not full");
  }
  if (!konstant_holds(p)) {
    throw ConstructionError("to_moa: K_P / L_P depends on P");
  }
  const int M = p.parts();
  Moa a;
  a.levels = p.dims().sizes();
  a.strength = M - p.k();
  for (const auto& [v, c] : t.entries()) {
    for (std::int64_t i = 0; i < c; ++i) a.rows.push_back(v.coords());
  }
  for (const auto& J : k_subsets(M, a.strength)) a.lambda[J] = p.bound(complement(J, M));
  return a;
}

StrengthResult moa_strength(const Moa& a, int d) {
  const int M = a.columns();
  if (d < 0 || d > M) {
    throw RangeError("strength " + std::to_string(d) + " outside [0, " + std::to_string(M) + "]");
  }
  for (const auto& row : a.rows) {
    if (static_cast<int>(row.size()) != M) {
      throw RangeError("array row has " + std::to_string(row.size()) + " symbols, expected " + std::to_string(M));
    }
    for (int j = 0; j < M; ++j) {
      if (row[static_cast<std::size_t>(j)] < 0 || row[static_cast<std::size_t>(j)] >= a.levels[static_cast<std::size_t>(j)]) {
        throw RangeError("symbol outside its column range in row " + tuple_string(row));
      }
    }
  }
  StrengthResult result;
  result.holds = true;
  for (const auto& J : k_subsets(M, d)) {
    std::size_t groups = 1;
    for (const int j : J) groups *= static_cast<std::size_t>(a.levels[static_cast<std::size_t>(j)]);
    std::vector<std::int64_t> counts(groups, 0);
    for (const auto& row : a.rows) {
      std::size_t index = 0;
      for (const int j : J) {
        index = index * static_cast<std::size_t>(a.levels[static_cast<std::size_t>(j)]) +
                static_cast<std::size_t>(row[static_cast<std::size_t>(j)]);
      }
      ++counts[index];
    }
    for (std::size_t g = 1; g < groups; ++g) {
      if (counts[g] != counts[0]) {
        result.holds = false;
        result.lambda.clear();
        result.columns = J;
        result.first_tuple = decode_group(0, J, a.levels);
        result.first_count = counts[0];
        result.second_tuple = decode_group(g, J, a.levels);
        result.second_count = counts[g];
        return result;
      }
    }
    result.lambda[J] = counts[0];
  }
  return result;
}

MultiTransversal rows_as_multiset(const Moa& a) {
  MultiTransversal t{Dimensions(a.levels)};
  for (const auto& row : a.rows) t.add(ProfileVector(row));
  return t;
}

TransversalWithParams from_moa(const Moa& a, int d) {
  const int M = a.columns();
  if (d < 0 || d >= M) {
    throw ConstructionError("from_moa: strength must lie in [0, M-1] so that k = M - d >= 1");
  }
  const StrengthResult s = moa_strength(a, d);
  if (!s.holds) {
    throw ConstructionError("from_moa: strength " + std::to_string(d) + " fails on columns " + to_string(s.columns) +
                                ": " + tuple_string(s.first_tuple) + " appears " + std::to_string(s.first_count) +
                                " times, " + tuple_string(s.second_tuple) + " appears " +
                                std::to_string(s.second_count) + " times",
                            s.columns);
  }
  const int k = M - d;
  std::map<Subset, std::int64_t> bounds;
  for (const auto& P : k_subsets(M, k)) {
    const std::int64_t lambda = s.lambda.at(complement(P, M));
    if (lambda < 1) {
      throw ConstructionError("from_moa: empty array has index 0", P);
    }
    bounds.emplace(P, lambda);
  }
  return {rows_as_multiset(a), ParamSet(Dimensions(a.levels), k, std::move(bounds))};
}

}  // namespace mtrans
