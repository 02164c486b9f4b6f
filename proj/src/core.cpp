#include "mtrans/core.hpp"

#include "mtrans/error.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mtrans {

std::ostream& operator<<(std::ostream& os, const ProfileVector& v) {
  os << '(';
  for (int j = 0; j < v.size(); ++j) {
    if (j > 0) os << ',';
    os << v[j];
  }
  return os << ')';
}

std::string to_string(const ProfileVector& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Dimensions::Dimensions(std::vector<int> n) : n_(std::move(n)) {
  if (n_.empty()) {
    throw ParameterError("dimensions need at least one part");
  }
  for (std::size_t j = 0; j < n_.size(); ++j) {
    if (n_[j] < 1) {
      throw ParameterError("level count n_" + std::to_string(j) + " must be positive");
    }
  }
}

Dimensions Dimensions::from_part_sizes(std::span<const int> m) {
  std::vector<int> n;
  n.reserve(m.size());
  for (const int mj : m) {
    if (mj < 0) {
      throw ParameterError("part sizes must be non-negative");
    }
    n.push_back(mj + 1);
  }
  return Dimensions(std::move(n));
}

std::vector<int> Dimensions::part_sizes() const {
  std::vector<int> m;
  m.reserve(n_.size());
  for (const int nj : n_) m.push_back(nj - 1);
  return m;
}

std::size_t Dimensions::cell_count() const {
  constexpr std::size_t limit = std::size_t{1} << 62;
  std::size_t total = 1;
  for (const int nj : n_) {
    if (total > limit / static_cast<std::size_t>(nj)) {
      throw ScaleError("coordinate box is too large");
    }
    total *= static_cast<std::size_t>(nj);
  }
  return total;
}

bool Dimensions::contains(const ProfileVector& v) const {
  if (v.size() != parts()) return false;
  for (int j = 0; j < parts(); ++j) {
    if (v[j] < 0 || v[j] >= size(j)) return false;
  }
  return true;
}

void Dimensions::require(const ProfileVector& v) const {
  if (v.size() != parts()) {
    throw RangeError("vector " + to_string(v) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                     std::to_string(parts()));
  }
  for (int j = 0; j < parts(); ++j) {
    if (v[j] < 0 || v[j] >= size(j)) {
      throw RangeError("coordinate " + std::to_string(j) + " of " + to_string(v) + " outside [0, " +
                       std::to_string(size(j) - 1) + "]");
    }
  }
}

std::size_t Dimensions::index_of(const ProfileVector& v) const {
  std::size_t index = 0;
  for (int j = 0; j < parts(); ++j) {
    index = index * static_cast<std::size_t>(size(j)) + static_cast<std::size_t>(v[j]);
  }
  return index;
}

ProfileVector Dimensions::vector_at(std::size_t index) const {
  std::vector<int> coords(n_.size());
  for (int j = parts() - 1; j >= 0; --j) {
    const auto nj = static_cast<std::size_t>(size(j));
    coords[static_cast<std::size_t>(j)] = static_cast<int>(index % nj);
    index /= nj;
  }
  return ProfileVector(std::move(coords));
}

std::ostream& operator<<(std::ostream& os, const Dimensions& d) {
  os << '(';
  for (int j = 0; j < d.parts(); ++j) {
    if (j > 0) os << ',';
    os << d.size(j);
  }
  return os << ')';
}

MultiTransversal::MultiTransversal(Dimensions dims, std::initializer_list<ProfileVector> vectors)
    : dims_(std::move(dims)) {
  for (const auto& v : vectors) add(v);
}

void MultiTransversal::add(const ProfileVector& v, std::int64_t count) {
  if (count < 0) {
    throw RangeError("negative multiplicity for " + to_string(v));
  }
  dims_.require(v);
  if (count == 0) return;
  entries_[v] += count;
}

void MultiTransversal::set(const ProfileVector& v, std::int64_t count) {
  if (count < 0) {
    throw RangeError("negative multiplicity for " + to_string(v));
  }
  dims_.require(v);
  if (count == 0) {
    entries_.erase(v);
  } else {
    entries_[v] = count;
  }
}

std::int64_t MultiTransversal::multiplicity(const ProfileVector& v) const {
  const auto it = entries_.find(v);
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t MultiTransversal::size() const {
  std::int64_t total = 0;
  for (const auto& [v, c] : entries_) total += c;
  return total;
}

std::ostream& operator<<(std::ostream& os, const MultiTransversal& t) {
  os << '{';
  bool first = true;
  for (const auto& [v, c] : t.entries()) {
    if (!first) os << ' ';
    first = false;
    os << v;
    if (c != 1) os << '^' << c;
  }
  return os << '}';
}

std::vector<Subset> k_subsets(int M, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > M) return out;
  Subset current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == M - k + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

Subset complement(const Subset& P, int M) {
  Subset out;
  std::size_t pos = 0;
  for (int j = 0; j < M; ++j) {
    if (pos < P.size() && P[pos] == j) {
      ++pos;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

std::string to_string(const Subset& P) {
  std::string s = "{";
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(P[i]);
  }
  return s + "}";
}

ParamSet::ParamSet(Dimensions dims, int k, std::map<Subset, std::int64_t> bounds)
    : dims_(std::move(dims)), k_(k), bounds_(std::move(bounds)) {
  const int M = dims_.parts();
  if (k_ < 1 || k_ > M) {
    throw ParameterError("level k=" + std::to_string(k_) + " outside [1, " + std::to_string(M) + "]");
  }
  const auto expected = k_subsets(M, k_);
  for (const auto& P : expected) {
    const auto it = bounds_.find(P);
    if (it == bounds_.end()) {
      throw ParameterError("missing bound L_P for P=" + to_string(P));
    }
    if (it->second < 1) {
      throw ParameterError("bound L_P for P=" + to_string(P) + " must be at least 1");
    }
  }
  if (bounds_.size() != expected.size()) {
    throw ParameterError("bounds given for subsets that are not " + std::to_string(k_) + "-subsets of the parts");
  }
}

ParamSet ParamSet::uniform(Dimensions dims, int k, std::int64_t bound) {
  std::map<Subset, std::int64_t> bounds;
  for (auto& P : k_subsets(dims.parts(), k)) bounds.emplace(std::move(P), bound);
  return ParamSet(std::move(dims), k, std::move(bounds));
}

std::int64_t ParamSet::bound(const Subset& P) const {
  const auto it = bounds_.find(P);
  if (it == bounds_.end()) {
    throw RangeError("no bound for P=" + to_string(P));
  }
  return it->second;
}

std::int64_t ParamSet::box_size(const Subset& P) const {
  std::int64_t k = 1;
  for (const int i : P) k *= dims_.size(i);
  return k;
}

std::int64_t ParamSet::box_lcm(const Subset& P) const {
  std::int64_t n = 1;
  for (const int i : P) n = std::lcm(n, static_cast<std::int64_t>(dims_.size(i)));
  return n;
}

std::int64_t ParamSet::size_bound(const Subset& P) const {
  std::int64_t s = bound(P);
  for (const int j : complement(P, parts())) s *= dims_.size(j);
  return s;
}

Rational ParamSet::density(const Subset& P) const { return Rational(bound(P), box_size(P)); }

std::vector<ProfileVector> enumerate_pi(const Dimensions& dims) {
  std::vector<ProfileVector> out;
  out.reserve(dims.cell_count());
  for_each_cell(dims, [&](const ProfileVector& v) { out.push_back(v); });
  return out;
}

void for_each_cell(const Dimensions& dims, const std::function<void(const ProfileVector&)>& fn) {
  const int M = dims.parts();
  std::vector<int> coords(static_cast<std::size_t>(M), 0);
  while (true) {
    fn(ProfileVector(coords));
    int j = M - 1;
    while (j >= 0) {
      auto& c = coords[static_cast<std::size_t>(j)];
      if (++c < dims.size(j)) break;
      c = 0;
      --j;
    }
    if (j < 0) return;
  }
}

BigInt weight(const ProfileVector& t, std::span<const int> m) {
  if (static_cast<std::size_t>(t.size()) != m.size()) {
    throw RangeError("weight: vector " + to_string(t) + " does not match " + std::to_string(m.size()) + " parts");
  }
  BigInt w = 1;
  for (int i = 0; i < t.size(); ++i) {
    const int mi = m[static_cast<std::size_t>(i)];
    if (t[i] < 0 || t[i] > mi) {
      throw RangeError("weight: coordinate " + std::to_string(i) + " of " + to_string(t) + " outside [0, " +
                       std::to_string(mi) + "]");
    }
    w *= binomial(mi, t[i]);
  }
  return w;
}

Rational frac_sum(const ProfileVector& v, const Dimensions& dims, const Rational& alpha) {
  dims.require(v);
  Rational s = alpha;
  for (int j = 0; j < v.size(); ++j) s += Rational(v[j], dims.size(j));
  return s.frac();
}

std::int64_t lcm_of(std::span<const int> values) {
  std::int64_t n = 1;
  for (const int v : values) n = std::lcm(n, static_cast<std::int64_t>(v));
  return n;
}

}  // namespace mtrans
