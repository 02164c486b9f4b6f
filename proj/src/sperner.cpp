#include "mtrans/sperner.hpp"

#include "mtrans/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <set>

namespace mtrans {

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

// Odometer step over pick[t] < sizes[t], last index fastest. False after the
// final combination.
template <class Sizes>
bool advance(std::vector<std::size_t>& pick, const Sizes& sizes) {
  for (std::size_t t = pick.size(); t-- > 0;) {
    if (++pick[t] < sizes(t)) return true;
    pick[t] = 0;
  }
  return false;
}

// A maximal chain of 2^{X_j}: the element order and its prefix masks.
struct Chain {
  std::vector<int> order;
  std::vector<std::uint32_t> prefixes;
};

std::vector<Chain> maximal_chains(int m) {
  std::vector<Chain> out;
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  do {
    Chain c;
    c.order = order;
    c.prefixes.push_back(0);
    for (const int e : order) c.prefixes.push_back(c.prefixes.back() | (1u << e));
    out.push_back(std::move(c));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

void require_ground_matches(const SetFamily& f, const ParamSet& p) {
  if (!(f.ground().dims() == p.dims())) {
    throw PreconditionError("parameter dimensions must equal part sizes + 1");
  }
}

SpernerReport run_sperner(const SetFamily& f, const ParamSet& p, bool stop_at_first) {
  require_ground_matches(f, p);
  const int M = f.ground().parts();
  SpernerReport report;
  for (const auto& P : p.subsets()) {
    const Subset outside = complement(P, M);
    const std::int64_t bound = p.bound(P);

    struct Member {
      std::vector<std::uint32_t> inside;
      std::int64_t count;
    };
    std::map<std::vector<std::uint32_t>, std::vector<Member>> groups;
    for (const auto& [s, c] : f.entries()) {
      std::vector<std::uint32_t> key;
      for (const int i : outside) key.push_back(s.part(i));
      std::vector<std::uint32_t> inside;
      for (const int j : P) inside.push_back(s.part(j));
      groups[key].push_back({std::move(inside), c});
    }

    std::vector<std::vector<Chain>> chains;
    for (const int j : P) chains.push_back(maximal_chains(f.ground().part_size(j)));

    for (const auto& [key, members] : groups) {
      std::int64_t group_total = 0;
      for (const auto& m : members) group_total += m.count;
      if (group_total <= bound) continue;

      std::vector<std::size_t> pick(P.size(), 0);
      while (true) {
        std::int64_t count = 0;
        for (const auto& m : members) {
          bool inside = true;
          for (std::size_t t = 0; t < P.size() && inside; ++t) {
            const auto& prefixes = chains[t][pick[t]].prefixes;
            inside = prefixes[static_cast<std::size_t>(popcount(m.inside[t]))] == m.inside[t];
          }
          if (inside) count += m.count;
        }
        if (count > bound) {
          report.ok = false;
          if (stop_at_first) return report;
          SpernerViolation w{P, key, {}, count, bound};
          for (std::size_t t = 0; t < P.size(); ++t) w.chains.push_back(chains[t][pick[t]].order);
          report.witnesses.push_back(std::move(w));
        }
        if (!advance(pick, [&](std::size_t t) { return chains[t].size(); })) break;
      }
    }
  }
  return report;
}

}  // namespace

GroundSet::GroundSet(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty()) {
    throw ParameterError("ground set needs at least one part");
  }
  for (const int mi : m_) {
    if (mi < 1 || mi > 31) {
      throw ParameterError("part sizes must lie in [1, 31]");
    }
  }
}

std::size_t GroundSet::subset_count() const {
  const int total = std::accumulate(m_.begin(), m_.end(), 0);
  if (total > 62) {
    throw ScaleError("ground set too large to enumerate its subsets");
  }
  return std::size_t{1} << total;
}

PartedSet PartedSet::from_indices(const std::vector<std::vector<int>>& parts) {
  std::vector<std::uint32_t> masks;
  for (const auto& part : parts) {
    std::uint32_t mask = 0;
    for (const int e : part) {
      if (e < 0 || e > 31) {
        throw RangeError("element index " + std::to_string(e) + " out of range");
      }
      mask |= 1u << e;
    }
    masks.push_back(mask);
  }
  return PartedSet(std::move(masks));
}

std::vector<int> PartedSet::indices(int i) const {
  std::vector<int> out;
  for (int e = 0; e < 32; ++e) {
    if (part(i) & (1u << e)) out.push_back(e);
  }
  return out;
}

ProfileVector PartedSet::profile() const {
  std::vector<int> coords;
  coords.reserve(masks_.size());
  for (const auto mask : masks_) coords.push_back(popcount(mask));
  return ProfileVector(std::move(coords));
}

bool PartedSet::fits(const GroundSet& ground) const {
  if (parts() != ground.parts()) return false;
  for (int i = 0; i < parts(); ++i) {
    if (part(i) >> ground.part_size(i)) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const PartedSet& s) {
  os << '[';
  for (int i = 0; i < s.parts(); ++i) {
    if (i > 0) os << '|';
    const auto idx = s.indices(i);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (t > 0) os << ',';
      os << idx[t];
    }
  }
  return os << ']';
}

SetFamily::SetFamily(GroundSet ground, std::initializer_list<PartedSet> sets) : ground_(std::move(ground)) {
  for (const auto& s : sets) add(s);
}

void SetFamily::add(const PartedSet& s, std::int64_t count) {
  if (count < 0) {
    throw RangeError("negative multiplicity");
  }
  if (!s.fits(ground_)) {
    throw RangeError("set does not fit the ground set");
  }
  if (count > 0) entries_[s] += count;
}

std::int64_t SetFamily::multiplicity(const PartedSet& s) const {
  const auto it = entries_.find(s);
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t SetFamily::size() const {
  std::int64_t total = 0;
  for (const auto& [s, c] : entries_) total += c;
  return total;
}

bool SetFamily::is_simple() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second == 1; });
}

std::ostream& operator<<(std::ostream& os, const SetFamily& f) {
  os << '{';
  bool first = true;
  for (const auto& [s, c] : f.entries()) {
    if (!first) os << ' ';
    first = false;
    os << s;
    if (c != 1) os << '^' << c;
  }
  return os << '}';
}

ProfileMatrix::ProfileMatrix(Dimensions dims) : dims_(std::move(dims)), counts_(dims_.cell_count(), 0) {}

ProfileMatrix::ProfileMatrix(Dimensions dims, std::vector<std::int64_t> counts)
    : dims_(std::move(dims)), counts_(std::move(counts)) {
  if (counts_.size() != dims_.cell_count()) {
    throw ParameterError("profile matrix has the wrong number of entries");
  }
}

std::int64_t ProfileMatrix::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

std::ostream& operator<<(std::ostream& os, const ProfileMatrix& p) {
  os << '[';
  for (std::size_t i = 0; i < p.counts().size(); ++i) {
    if (i > 0) os << ' ';
    os << p.counts()[i];
  }
  return os << ']';
}

SpernerReport check_sperner(const SetFamily& f, const ParamSet& p) { return run_sperner(f, p, false); }

bool is_sperner(const SetFamily& f, const ParamSet& p) { return run_sperner(f, p, true).ok; }

ProfileMatrix profile_matrix(const SetFamily& f) {
  ProfileMatrix pm(f.ground().dims());
  for (const auto& [s, c] : f.entries()) pm.at(s.profile()) += c;
  return pm;
}

std::optional<MultiTransversal> is_homogeneous(const SetFamily& f) {
  const auto& m = f.ground().part_sizes();
  MultiTransversal r(f.ground().dims());
  std::map<ProfileVector, std::pair<std::int64_t, std::int64_t>> seen;  // profile -> (sets, multiplicity)
  for (const auto& [s, c] : f.entries()) {
    const auto it = seen.try_emplace(s.profile(), 0, c).first;
    if (it->second.second != c) return std::nullopt;
    ++it->second.first;
  }
  for (const auto& [v, info] : seen) {
    if (BigInt(info.first) != weight(v, m)) return std::nullopt;
    r.set(v, info.second);
  }
  return r;
}

std::vector<std::uint32_t> masks_of_size(int bits, int size) {
  std::vector<std::uint32_t> out;
  if (size < 0 || size > bits) return out;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    if (popcount(mask) == size) out.push_back(mask);
  }
  return out;
}

SetFamily realize_homogeneous(const MultiTransversal& i, const GroundSet& ground) {
  if (!(i.dims() == ground.dims())) {
    throw PreconditionError("multiset dimensions must equal part sizes + 1");
  }
  SetFamily f(ground);
  const int M = ground.parts();
  for (const auto& [v, c] : i.entries()) {
    std::vector<std::vector<std::uint32_t>> choices;
    for (int j = 0; j < M; ++j) choices.push_back(masks_of_size(ground.part_size(j), v[j]));
    std::vector<std::size_t> pick(static_cast<std::size_t>(M), 0);
    while (true) {
      std::vector<std::uint32_t> masks;
      for (int j = 0; j < M; ++j) masks.push_back(choices[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]]);
      f.add(PartedSet(std::move(masks)), c);
      if (!advance(pick, [&](std::size_t t) { return choices[t].size(); })) break;
    }
  }
  return f;
}

Rational blym_lhs(const SetFamily& f) {
  const auto& m = f.ground().part_sizes();
  Rational sum(0);
  for (const auto& [s, c] : f.entries()) sum += Rational(BigInt(c), weight(s.profile(), m));
  return sum;
}

std::map<Subset, BlymEntry> blym_report(const SetFamily& f, const ParamSet& p) {
  require_ground_matches(f, p);
  const Rational lhs = blym_lhs(f);
  std::map<Subset, BlymEntry> out;
  for (const auto& P : p.subsets()) {
    const Rational rhs(p.size_bound(P));
    out.emplace(P, BlymEntry{lhs, rhs, lhs == rhs});
  }
  return out;
}

std::int64_t longest_multichain(const SetFamily& f) {
  if (f.ground().parts() != 1) {
    throw PreconditionError("multichains are defined here for single-part families");
  }
  // Members sorted by size; best[i] = heaviest chain ending at member i.
  std::vector<std::pair<std::uint32_t, std::int64_t>> members;
  for (const auto& [s, c] : f.entries()) members.emplace_back(s.part(0), c);
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& a, const auto& b) { return popcount(a.first) < popcount(b.first); });
  std::vector<std::int64_t> best(members.size(), 0);
  std::int64_t longest = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::int64_t below = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if ((members[j].first & members[i].first) == members[j].first && members[j].first != members[i].first) {
        below = std::max(below, best[j]);
      }
    }
    best[i] = below + members[i].second;
    longest = std::max(longest, best[i]);
  }
  return longest;
}

bool multichain_free(const SetFamily& f, std::int64_t L) { return longest_multichain(f) <= L; }

SetFamily trace(const SetFamily& f, int part) {
  if (part < 0 || part >= f.ground().parts()) {
    throw RangeError("part index " + std::to_string(part) + " out of range");
  }
  SetFamily out(GroundSet({f.ground().part_size(part)}));
  std::set<std::uint32_t> seen;
  for (const auto& [s, c] : f.entries()) seen.insert(s.part(part));
  for (const auto mask : seen) out.add(PartedSet({mask}));
  return out;
}

std::vector<bool> trace_full_levels(const SetFamily& f) {
  std::vector<bool> out;
  for (int i = 0; i < f.ground().parts(); ++i) {
    const int m = f.ground().part_size(i);
    std::vector<std::int64_t> per_level(static_cast<std::size_t>(m + 1), 0);
    const SetFamily traced = trace(f, i);
    for (const auto& [s, c] : traced.entries()) ++per_level[static_cast<std::size_t>(popcount(s.part(0)))];
    bool full = true;
    for (int t = 0; t <= m; ++t) {
      const auto count = per_level[static_cast<std::size_t>(t)];
      if (count != 0 && BigInt(count) != binomial(m, t)) full = false;
    }
    out.push_back(full);
  }
  return out;
}

SetFamily restrict_family(const SetFamily& f, const PartedSet& fixed, const Subset& D) {
  const int M = f.ground().parts();
  if (fixed.parts() != M) {
    throw ParameterError("fixed set must give one part per ground part");
  }
  if (D.empty()) {
    throw ParameterError("restriction needs at least one free part");
  }
  std::vector<int> sizes;
  for (const int i : D) {
    if (i < 0 || i >= M) {
      throw RangeError("part index " + std::to_string(i) + " out of range");
    }
    sizes.push_back(f.ground().part_size(i));
  }
  const Subset outside = complement(D, M);
  SetFamily out{GroundSet(sizes)};
  for (const auto& [s, c] : f.entries()) {
    const bool matches =
        std::all_of(outside.begin(), outside.end(), [&](int i) { return s.part(i) == fixed.part(i); });
    if (!matches) continue;
    std::vector<std::uint32_t> masks;
    for (const int i : D) masks.push_back(s.part(i));
    out.add(PartedSet(std::move(masks)), c);
  }
  return out;
}

ParamSet restrict_params(const ParamSet& p, const Subset& D) {
  const int N = static_cast<int>(D.size());
  if (N < p.k()) {
    throw ParameterError("restriction keeps fewer parts than k");
  }
  std::vector<int> n;
  for (const int i : D) n.push_back(p.dims().size(i));
  std::map<Subset, std::int64_t> bounds;
  for (const auto& local : k_subsets(N, p.k())) {
    Subset global;
    for (const int t : local) global.push_back(D[static_cast<std::size_t>(t)]);
    bounds.emplace(local, p.bound(global));
  }
  return ParamSet(Dimensions(n), p.k(), std::move(bounds));
}

SetFamily shadow(const SetFamily& a, ShadowDirection direction) {
  if (a.ground().parts() != 1) {
    throw PreconditionError("shadow is defined for single-part families");
  }
  if (!a.is_simple()) {
    throw PreconditionError("shadow needs a simple family");
  }
  const int n = a.ground().part_size(0);
  SetFamily out(a.ground());
  std::optional<int> level;
  std::set<std::uint32_t> result;
  for (const auto& [s, c] : a.entries()) {
    const std::uint32_t mask = s.part(0);
    if (level && *level != popcount(mask)) {
      throw PreconditionError("shadow needs all members on one level");
    }
    level = popcount(mask);
    for (int e = 0; e < n; ++e) {
      const std::uint32_t bit = 1u << e;
      if (direction == ShadowDirection::lower && (mask & bit)) result.insert(mask & ~bit);
      if (direction == ShadowDirection::upper && !(mask & bit)) result.insert(mask | bit);
    }
  }
  for (const auto mask : result) out.add(PartedSet({mask}));
  return out;
}

SetFamily example1(const GroundSet& ground, int r, const std::vector<std::vector<std::uint32_t>>& blocks,
                   const std::vector<std::vector<int>>& levels) {
  const int M = ground.parts();
  if (M < 2) {
    throw ParameterError("example1 needs at least two parts");
  }
  const int last = ground.part_size(M - 1);
  if (last < 2 || r < 1 || r > last - 1) {
    throw ParameterError("example1 needs 1 <= r <= m_M - 1 (and m_M >= 2)");
  }
  const auto s = static_cast<int>(blocks.size());
  std::int64_t cap = static_cast<std::int64_t>(binomial(last, r));
  for (int j = 0; j + 1 < M; ++j) cap = std::min<std::int64_t>(cap, ground.part_size(j) + 1);
  if (s < 2 || s > cap) {
    throw ParameterError("example1 needs 2 <= s <= min(n_1, ..., n_{M-1}, C(m_M, r)); got s=" + std::to_string(s));
  }
  std::set<std::uint32_t> covered;
  for (const auto& block : blocks) {
    if (block.empty()) {
      throw ParameterError("example1 blocks must be non-empty");
    }
    for (const auto mask : block) {
      if (popcount(mask) != r || (mask >> last) != 0) {
        throw ParameterError("example1 block member is not an r-subset of the last part");
      }
      if (!covered.insert(mask).second) {
        throw ParameterError("example1 blocks overlap");
      }
    }
  }
  if (BigInt(covered.size()) != binomial(last, r)) {
    throw ParameterError("example1 blocks do not cover every r-subset of the last part");
  }
  if (static_cast<int>(levels.size()) != M - 1) {
    throw ParameterError("example1 needs level choices for each of the first M-1 parts");
  }
  for (int j = 0; j + 1 < M; ++j) {
    const auto& lv = levels[static_cast<std::size_t>(j)];
    if (static_cast<int>(lv.size()) != s || std::set<int>(lv.begin(), lv.end()).size() != lv.size()) {
      throw ParameterError("example1 needs s distinct levels for part " + std::to_string(j));
    }
    for (const int t : lv) {
      if (t < 0 || t > ground.part_size(j)) {
        throw ParameterError("example1 level outside [0, m_j]");
      }
    }
  }

  SetFamily f(ground);
  for (int l = 0; l < s; ++l) {
    std::vector<std::vector<std::uint32_t>> choices;
    for (int j = 0; j + 1 < M; ++j) {
      choices.push_back(masks_of_size(ground.part_size(j), levels[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]));
    }
    choices.push_back(blocks[static_cast<std::size_t>(l)]);
    std::vector<std::size_t> pick(static_cast<std::size_t>(M), 0);
    while (true) {
      std::vector<std::uint32_t> masks;
      for (int j = 0; j < M; ++j) masks.push_back(choices[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]]);
      f.add(PartedSet(std::move(masks)));
      if (!advance(pick, [&](std::size_t t) { return choices[t].size(); })) break;
    }
  }
  return f;
}

}  // namespace mtrans
