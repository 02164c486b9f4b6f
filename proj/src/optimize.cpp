#include "mtrans/optimize.hpp"

#include "mtrans/error.hpp"
#include "mtrans/hull.hpp"
#include "mtrans/transversal.hpp"
#include "load_table.hpp"

#include <algorithm>
#include <numeric>

namespace mtrans {

namespace {

std::vector<ProfileVector> sorted_list(const std::vector<ProfileVector>& cells, const std::vector<bool>& chosen) {
  std::vector<ProfileVector> out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (chosen[c]) out.push_back(cells[c]);
  }
  return out;  // cells are already in lexicographic order
}

MultiTransversal to_transversal(const Dimensions& dims, const std::vector<ProfileVector>& list) {
  MultiTransversal t(dims);
  for (const auto& v : list) t.add(v);
  return t;
}

SolveResult solve_exhaustive(const ParamSet& p, const std::vector<int>& m) {
  const auto cells = enumerate_pi(p.dims());
  if (cells.size() > 20) {
    throw ScaleError("exhaustive solver needs prod n_j <= 20, got " + std::to_string(cells.size()));
  }
  std::vector<BigInt> w;
  for (const auto& v : cells) w.push_back(weight(v, m));

  const auto subsets = p.subsets();
  SolveResult result;
  std::optional<std::vector<ProfileVector>> best_list;
  const std::uint64_t total = std::uint64_t{1} << cells.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++result.node_count;
    std::vector<ProfileVector> list;
    BigInt sum = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (mask >> c & 1u) {
        list.push_back(cells[c]);
        sum += w[c];
      }
    }
    if (best_list && sum < result.weight) continue;
    bool ok = true;
    for (const auto& P : subsets) {
      const Subset outside = complement(P, p.parts());
      std::map<std::vector<int>, std::int64_t> groups;
      for (const auto& v : list) {
        std::vector<int> key;
        for (const int j : outside) key.push_back(v[j]);
        if (++groups[key] > p.bound(P)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;
    if (!best_list || sum > result.weight || list < *best_list) {
      best_list = list;
      result.weight = sum;
    }
  }
  result.best = to_transversal(p.dims(), *best_list);
  result.optimal = true;
  return result;
}

template <class W>
W to_weight(const BigInt& x) {
  if constexpr (std::is_same_v<W, BigInt>) {
    return x;
  } else {
    return static_cast<W>(x);
  }
}

template <class W>
SolveResult solve_bnb(const ParamSet& p, const std::vector<int>& m, std::int64_t node_budget) {
  detail::LoadTable table(p);
  const auto& cells = table.cells();
  const std::size_t n = cells.size();

  // Branch order: heavier profiles first, lexicographic among equals.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<W> w(n);
  for (std::size_t c = 0; c < n; ++c) w[c] = to_weight<W>(weight(cells[c], m));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  std::vector<bool> chosen(n, false);
  std::optional<std::vector<ProfileVector>> best_list;
  W best{0};
  W current{0};
  std::int64_t nodes = 0;
  bool exhausted = false;

  // Upper bound on what the cells order[depth..] can still add: for each P,
  // every group takes at most its residual capacity of its heaviest
  // remaining cells; the smallest of these totals is admissible.
  std::vector<std::int64_t> taken;
  auto bound = [&](std::size_t depth) {
    std::optional<W> best_bound;
    for (std::size_t s = 0; s < table.subset_count(); ++s) {
      taken.assign(table.group_count(s), 0);
      W total{0};
      for (std::size_t t = depth; t < n; ++t) {
        const std::size_t c = order[t];
        const std::size_t g = table.key(s, c);
        if (taken[g] < table.residual(s, g)) {
          ++taken[g];
          total += w[c];
        }
      }
      if (!best_bound || total < *best_bound) best_bound = total;
    }
    return best_bound.value_or(W{0});
  };

  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (exhausted) return;
    if (++nodes > node_budget) {
      exhausted = true;
      return;
    }
    if (depth == n) {
      if (!best_list || current > best) {
        best = current;
        best_list = sorted_list(cells, chosen);
      } else if (current == best) {
        auto list = sorted_list(cells, chosen);
        if (list < *best_list) best_list = std::move(list);
      }
      return;
    }
    if (best_list && current + bound(depth) < best) return;
    const std::size_t c = order[depth];
    if (table.fits(c)) {
      table.apply(c, 1);
      chosen[c] = true;
      current += w[c];
      self(self, depth + 1);
      current -= w[c];
      chosen[c] = false;
      table.apply(c, -1);
    }
    self(self, depth + 1);
  };
  dfs(dfs, 0);

  SolveResult result;
  result.best = to_transversal(p.dims(), best_list.value_or(std::vector<ProfileVector>{}));
  result.weight = BigInt(best);
  result.node_count = nodes;
  result.optimal = !exhausted;
  return result;
}

}  // namespace

SolveResult max_weight_transversal(const ParamSet& p, const std::vector<int>& m, SolveMode mode,
                                   std::int64_t node_budget) {
  if (!(Dimensions::from_part_sizes(m) == p.dims())) {
    throw PreconditionError("parameter dimensions must equal part sizes + 1");
  }
  if (mode == SolveMode::exhaustive) return solve_exhaustive(p, m);
  const std::size_t cells = p.dims().cell_count();
  if (cells > 10'000) {
    throw ScaleError("branch and bound needs prod n_j <= 10000, got " + std::to_string(cells));
  }
  const int total_bits = std::accumulate(m.begin(), m.end(), 0);
  if (total_bits < 62) return solve_bnb<std::int64_t>(p, m, node_budget);
  return solve_bnb<BigInt>(p, m, node_budget);
}

BigInt max_size_k_eq_M(const std::vector<int>& m) {
  BigInt product = 1;
  for (const int mi : m) product *= binomial(mi, mi / 2);
  return product;
}

BigInt max_size_k_eq_M_minus_1(const std::vector<int>& m) {
  if (m.empty()) {
    throw ParameterError("need at least one part");
  }
  if (*std::min_element(m.begin(), m.end()) != m.back()) {
    throw ParameterError("the last part must be a smallest one; permute the parts first");
  }
  BigInt sum = 0;
  for (int i = 0; i <= m.back(); ++i) {
    const int shift = (i + 1) / 2 * (i % 2 == 0 ? 1 : -1);
    BigInt product = 1;
    for (const int mj : m) product *= binomial(mj, (mj + 1) / 2 + shift);
    sum += product;
  }
  return sum;
}

Rational rearrangement_max(const std::vector<std::vector<Rational>>& a) {
  if (a.empty()) return Rational(0);
  const std::size_t cols = a.front().size();
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l].size() != cols) {
      throw ParameterError("rows of the matrix differ in length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (a[l][j] < Rational(0)) {
        throw ParameterError("entries must be non-negative");
      }
      if (l > 0 && a[l][j] > a[l - 1][j]) {
        throw ParameterError("column " + std::to_string(j) + " is not non-increasing");
      }
    }
  }
  Rational sum(0);
  for (const auto& row : a) {
    Rational product(1);
    for (const auto& x : row) product *= x;
    sum += product;
  }
  return sum;
}

GenhomVerdict genhom_check(const ParamSet& p, const std::vector<int>& m, std::int64_t cap) {
  if (cap < 1) {
    throw ParameterError("multiplicity cap must be >= 1");
  }
  const GroundSet ground(m);
  if (!(ground.dims() == p.dims())) {
    throw PreconditionError("parameter dimensions must equal part sizes + 1");
  }
  const std::size_t sets = ground.subset_count();
  double space = 1;
  for (std::size_t i = 0; i < sets; ++i) space *= static_cast<double>(cap + 1);
  if (space > static_cast<double>(1 << 20)) {
    throw ScaleError("family space too large for an exhaustive sweep");
  }

  GenhomVerdict verdict;
  verdict.theorem_applies = p.k() < p.parts() || (p.k() == 1 && p.parts() == 1);

  const auto transversals = enumerate_transversals(p, GammaConstraint::multiplicity_cap(p.dims(), cap), false);
  for (const auto& t : transversals) {
    const auto size = s_matrix(t, m).total();
    if (verdict.homogeneous_maxima.empty() || BigInt(size) > verdict.homogeneous_max) {
      verdict.homogeneous_max = size;
      verdict.homogeneous_maxima.clear();
    }
    if (BigInt(size) == verdict.homogeneous_max) verdict.homogeneous_maxima.push_back(t);
  }
  // The normalised sum of a homogeneous family is |I|.
  const auto subsets = p.subsets();
  verdict.hypothesis_holds = std::all_of(verdict.homogeneous_maxima.begin(), verdict.homogeneous_maxima.end(),
                                         [&](const MultiTransversal& t) {
                                           return std::all_of(subsets.begin(), subsets.end(), [&](const Subset& P) {
                                             return t.size() == p.size_bound(P);
                                           });
                                         });

  std::vector<PartedSet> all_sets;
  for (std::size_t code = 0; code < sets; ++code) {
    std::vector<std::uint32_t> masks;
    std::size_t rest = code;
    for (const int mi : m) {
      masks.push_back(static_cast<std::uint32_t>(rest & ((std::size_t{1} << mi) - 1)));
      rest >>= mi;
    }
    all_sets.emplace_back(std::move(masks));
  }

  std::vector<std::int64_t> mult(sets, 0);
  while (true) {
    SetFamily f(ground);
    for (std::size_t i = 0; i < sets; ++i) {
      if (mult[i] > 0) f.add(all_sets[i], mult[i]);
    }
    ++verdict.families_checked;
    if (is_sperner(f, p)) {
      const auto size = f.size();
      if (size > verdict.family_max) {
        verdict.family_max = size;
        verdict.maximum_families = 0;
        verdict.all_maxima_homogeneous = true;
        verdict.counterexample.reset();
      }
      if (size == verdict.family_max) {
        ++verdict.maximum_families;
        if (!is_homogeneous(f) && verdict.all_maxima_homogeneous) {
          verdict.all_maxima_homogeneous = false;
          verdict.counterexample = f;
        }
      }
    }
    std::size_t i = 0;
    while (i < sets && ++mult[i] > cap) mult[i++] = 0;
    if (i == sets) break;
  }
  return verdict;
}

}  // namespace mtrans
