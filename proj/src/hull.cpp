#include "mtrans/hull.hpp"

#include "mtrans/error.hpp"
#include "mtrans/exact_lp.hpp"
#include "load_table.hpp"

#include <algorithm>
#include <numeric>

namespace mtrans {

GammaConstraint::GammaConstraint(std::vector<GammaRow> rows) : rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    if (row.A < 0) {
      throw ParameterError("gamma bound A must be non-negative");
    }
    for (const auto& [v, c] : row.alpha) {
      if (c < 0) {
        throw ParameterError("gamma coefficient for " + to_string(v) + " is negative");
      }
    }
  }
}

GammaConstraint GammaConstraint::simplicity(const Dimensions& dims) { return multiplicity_cap(dims, 1); }

GammaConstraint GammaConstraint::multiplicity_cap(const Dimensions& dims, std::int64_t cap) {
  std::vector<GammaRow> rows;
  for (const auto& v : enumerate_pi(dims)) rows.push_back({cap, {{v, 1}}});
  return GammaConstraint(std::move(rows));
}

std::optional<std::int64_t> GammaConstraint::cap_for(const ProfileVector& v) const {
  std::optional<std::int64_t> cap;
  for (const auto& row : rows_) {
    const auto it = row.alpha.find(v);
    if (it == row.alpha.end() || it->second == 0) continue;
    const std::int64_t c = row.A / it->second;
    cap = cap ? std::min(*cap, c) : c;
  }
  return cap;
}

ProductPermutation::ProductPermutation(const GroundSet& ground, std::vector<std::vector<int>> orders)
    : orders_(std::move(orders)) {
  if (static_cast<int>(orders_.size()) != ground.parts()) {
    throw ParameterError("product permutation needs one ordering per part");
  }
  for (int i = 0; i < ground.parts(); ++i) {
    auto sorted = orders_[static_cast<std::size_t>(i)];
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(static_cast<std::size_t>(ground.part_size(i)));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) {
      throw ParameterError("ordering of part " + std::to_string(i) + " is not a permutation");
    }
  }
}

ProductPermutation ProductPermutation::identity(const GroundSet& ground) {
  std::vector<std::vector<int>> orders;
  for (const int m : ground.part_sizes()) {
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    orders.push_back(std::move(order));
  }
  return ProductPermutation(ground, std::move(orders));
}

PartedSet ProductPermutation::initial_set(const ProfileVector& v) const {
  std::vector<std::uint32_t> masks;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint32_t mask = 0;
    for (int t = 0; t < v[static_cast<int>(i)]; ++t) mask |= 1u << orders_[i][static_cast<std::size_t>(t)];
    masks.push_back(mask);
  }
  return PartedSet(std::move(masks));
}

bool ProductPermutation::is_initial(const PartedSet& s) const { return initial_set(s.profile()) == s; }

std::vector<ProductPermutation> all_product_permutations(const GroundSet& ground) {
  std::vector<std::vector<std::vector<int>>> per_part;
  for (const int m : ground.part_sizes()) {
    std::vector<std::vector<int>> perms;
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    do {
      perms.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
    per_part.push_back(std::move(perms));
  }
  std::vector<ProductPermutation> out;
  std::vector<std::size_t> pick(per_part.size(), 0);
  while (true) {
    std::vector<std::vector<int>> orders;
    for (std::size_t i = 0; i < per_part.size(); ++i) orders.push_back(per_part[i][pick[i]]);
    out.emplace_back(ground, std::move(orders));
    std::size_t t = pick.size();
    while (t > 0) {
      --t;
      if (++pick[t] < per_part[t].size()) break;
      pick[t] = 0;
      if (t == 0) return out;
    }
  }
}

ProfileMatrix t_matrix(const MultiTransversal& i) {
  ProfileMatrix out(i.dims());
  for (const auto& [v, c] : i.entries()) out.at(v) = c;
  return out;
}

ProfileMatrix s_matrix(const MultiTransversal& i, const std::vector<int>& m) {
  if (!(Dimensions::from_part_sizes(m) == i.dims())) {
    throw PreconditionError("multiset dimensions must equal part sizes + 1");
  }
  ProfileMatrix out(i.dims());
  for (const auto& [v, c] : i.entries()) {
    const BigInt value = weight(v, m) * c;
    out.at(v) = Rational(value).to_int64();
  }
  return out;
}

SetFamily initial_family(const MultiTransversal& i, const GroundSet& ground, const ProductPermutation& order) {
  if (!(i.dims() == ground.dims())) {
    throw PreconditionError("multiset dimensions must equal part sizes + 1");
  }
  SetFamily f(ground);
  for (const auto& [v, c] : i.entries()) f.add(order.initial_set(v), c);
  return f;
}

SetFamily initial_restriction(const SetFamily& f, const ProductPermutation& order) {
  SetFamily out(f.ground());
  for (const auto& [s, c] : f.entries()) {
    if (order.is_initial(s)) out.add(s, c);
  }
  return out;
}

namespace {

bool rows_ok(const GammaConstraint& g, const std::map<ProfileVector, std::int64_t>& measure) {
  for (const auto& row : g.rows()) {
    std::int64_t sum = 0;
    for (const auto& [v, a] : row.alpha) {
      const auto it = measure.find(v);
      if (it != measure.end()) sum += a * it->second;
    }
    if (sum > row.A) return false;
  }
  return true;
}

bool entries_less(const MultiTransversal& a, const MultiTransversal& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end());
}

}  // namespace

bool gamma_ok_family(const SetFamily& f, const GammaConstraint& g) {
  std::map<ProfileVector, std::int64_t> measure;
  for (const auto& [s, c] : f.entries()) {
    auto& slot = measure[s.profile()];
    slot = std::max(slot, c);
  }
  return rows_ok(g, measure);
}

bool gamma_ok_multiset(const MultiTransversal& i, const GammaConstraint& g) {
  std::map<ProfileVector, std::int64_t> measure(i.entries().begin(), i.entries().end());
  return rows_ok(g, measure);
}

std::vector<MultiTransversal> enumerate_transversals(const ParamSet& p, const GammaConstraint& g, bool simple_only,
                                                     std::int64_t node_budget) {
  const Dimensions& dims = p.dims();
  detail::LoadTable table(p);
  const auto& cells = table.cells();

  std::int64_t min_bound = -1;
  for (const auto& [P, L] : p.bounds()) min_bound = min_bound < 0 ? L : std::min(min_bound, L);

  std::vector<std::int64_t> cap(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::int64_t value = simple_only ? 1 : min_bound;
    if (const auto gc = g.cap_for(cells[c])) value = std::min(value, *gc);
    cap[c] = std::max<std::int64_t>(value, 0);
  }

  // Partial sums of every gamma row, indexed by row.
  std::vector<std::int64_t> row_sum(g.rows().size(), 0);
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> row_terms(cells.size());
  for (std::size_t r = 0; r < g.rows().size(); ++r) {
    for (const auto& [v, a] : g.rows()[r].alpha) {
      if (a > 0 && dims.contains(v)) row_terms[dims.index_of(v)].emplace_back(r, a);
    }
  }

  std::vector<MultiTransversal> out;
  std::vector<std::int64_t> mult(cells.size(), 0);
  std::int64_t nodes = 0;

  auto fits = [&](std::size_t c) {
    if (!table.fits(c)) return false;
    for (const auto& [r, a] : row_terms[c]) {
      if (row_sum[r] + a > g.rows()[r].A) return false;
    }
    return true;
  };
  auto apply = [&](std::size_t c, std::int64_t delta) {
    table.apply(c, delta);
    for (const auto& [r, a] : row_terms[c]) row_sum[r] += a * delta;
    mult[c] += delta;
  };

  auto dfs = [&](auto&& self, std::size_t c) -> void {
    if (++nodes > node_budget) {
      throw ScaleError("transversal enumeration exceeded its node budget; tighten the gamma constraint");
    }
    if (c == cells.size()) {
      MultiTransversal t(dims);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (mult[i] > 0) t.set(cells[i], mult[i]);
      }
      out.push_back(std::move(t));
      return;
    }
    self(self, c + 1);
    std::int64_t added = 0;
    while (added < cap[c] && fits(c)) {
      apply(c, 1);
      ++added;
      self(self, c + 1);
    }
    apply(c, -added);
  };
  dfs(dfs, 0);

  std::sort(out.begin(), out.end(), entries_less);
  return out;
}

std::optional<std::vector<ProfileVector>> is_lem(const MultiTransversal& i, const std::vector<MultiTransversal>& competitors) {
  std::vector<ProfileVector> support;
  for (const auto& [v, c] : i.entries()) support.push_back(v);
  // Greedy order first: larger multiplicity, then lexicographic.
  std::stable_sort(support.begin(), support.end(),
                   [&](const auto& a, const auto& b) { return i.multiplicity(a) > i.multiplicity(b); });

  std::vector<ProfileVector> chosen;
  std::vector<bool> used(support.size(), false);

  // `tied` holds the competitors that contain every chosen vector with the
  // same multiplicity as I; only they constrain the next choice.
  auto dfs = [&](auto&& self, const std::vector<const MultiTransversal*>& tied) -> bool {
    if (chosen.size() == support.size()) return true;
    for (std::size_t t = 0; t < support.size(); ++t) {
      if (used[t]) continue;
      const auto& v = support[t];
      const std::int64_t mine = i.multiplicity(v);
      bool dominates = true;
      std::vector<const MultiTransversal*> next;
      for (const auto* other : tied) {
        const std::int64_t theirs = other->multiplicity(v);
        if (theirs > mine) {
          dominates = false;
          break;
        }
        if (theirs == mine) next.push_back(other);
      }
      if (!dominates) continue;
      used[t] = true;
      chosen.push_back(v);
      if (self(self, next)) return true;
      chosen.pop_back();
      used[t] = false;
    }
    return false;
  };

  std::vector<const MultiTransversal*> all;
  for (const auto& c : competitors) all.push_back(&c);
  if (dfs(dfs, all)) return chosen;
  return std::nullopt;
}

std::optional<std::vector<ProfileVector>> is_lem(const MultiTransversal& i, const ParamSet& p, const GammaConstraint& g) {
  return is_lem(i, enumerate_transversals(p, g, false));
}

std::optional<std::vector<Rational>> convex_decomposition(const ProfileMatrix& target,
                                                          const std::vector<ProfileMatrix>& candidates) {
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    if (candidates[u] == target) {
      std::vector<Rational> lambda(candidates.size(), Rational(0));
      lambda[u] = Rational(1);
      return lambda;
    }
  }
  if (candidates.empty()) return std::nullopt;
  const std::size_t cells = target.counts().size();
  for (const auto& c : candidates) {
    if (c.counts().size() != cells) {
      throw PreconditionError("candidate matrices must share the target's dimensions");
    }
  }
  RationalMatrix A(cells + 1, std::vector<Rational>(candidates.size(), Rational(0)));
  std::vector<Rational> b(cells + 1, Rational(0));
  for (std::size_t r = 0; r < cells; ++r) {
    for (std::size_t u = 0; u < candidates.size(); ++u) A[r][u] = Rational(candidates[u].counts()[r]);
    b[r] = Rational(target.counts()[r]);
  }
  for (std::size_t u = 0; u < candidates.size(); ++u) A[cells][u] = Rational(1);
  b[cells] = Rational(1);
  return find_nonnegative_solution(A, b);
}

std::vector<ProfileMatrix> extreme_subset(std::vector<ProfileMatrix> candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<ProfileMatrix> out;
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    std::vector<ProfileMatrix> others;
    for (std::size_t w = 0; w < candidates.size(); ++w) {
      if (w != u) others.push_back(candidates[w]);
    }
    if (!convex_decomposition(candidates[u], others)) out.push_back(candidates[u]);
  }
  return out;
}

std::vector<ProfileMatrix> extreme_points(const ParamSet& p, const GammaConstraint& g) {
  const auto m = p.dims().part_sizes();
  std::vector<ProfileMatrix> candidates;
  for (const auto& t : enumerate_transversals(p, g, false)) candidates.push_back(s_matrix(t, m));
  return extreme_subset(std::move(candidates));
}

}  // namespace mtrans
