#pragma once

#include "mtrans/core.hpp"

#include <cstdint>
#include <vector>

namespace mtrans::detail {

// Running totals behind the transversal bounds: for every P and every fixing of
// the coordinates outside P, how much of the current multiset lies there.
class LoadTable {
 public:
  explicit LoadTable(const ParamSet& p) : cells_(enumerate_pi(p.dims())), subsets_(p.subsets()) {
    const Dimensions& dims = p.dims();
    key_.assign(subsets_.size(), std::vector<std::size_t>(cells_.size()));
    load_.resize(subsets_.size());
    bound_.resize(subsets_.size());
    for (std::size_t s = 0; s < subsets_.size(); ++s) {
      const Subset outside = complement(subsets_[s], p.parts());
      std::size_t span = 1;
      for (const int j : outside) span *= static_cast<std::size_t>(dims.size(j));
      load_[s].assign(span, 0);
      bound_[s] = p.bound(subsets_[s]);
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        std::size_t k = 0;
        for (const int j : outside) k = k * static_cast<std::size_t>(dims.size(j)) + static_cast<std::size_t>(cells_[c][j]);
        key_[s][c] = k;
      }
    }
  }

  [[nodiscard]] const std::vector<ProfileVector>& cells() const { return cells_; }
  [[nodiscard]] std::size_t subset_count() const { return subsets_.size(); }
  [[nodiscard]] std::size_t group_count(std::size_t s) const { return load_[s].size(); }
  [[nodiscard]] std::size_t key(std::size_t s, std::size_t c) const { return key_[s][c]; }
  [[nodiscard]] std::int64_t residual(std::size_t s, std::size_t group) const { return bound_[s] - load_[s][group]; }

  [[nodiscard]] bool fits(std::size_t c, std::int64_t count = 1) const {
    for (std::size_t s = 0; s < subsets_.size(); ++s) {
      if (load_[s][key_[s][c]] + count > bound_[s]) return false;
    }
    return true;
  }
  void apply(std::size_t c, std::int64_t delta) {
    for (std::size_t s = 0; s < subsets_.size(); ++s) load_[s][key_[s][c]] += delta;
  }

 private:
  std::vector<ProfileVector> cells_;
  std::vector<Subset> subsets_;
  std::vector<std::vector<std::size_t>> key_;
  std::vector<std::vector<std::int64_t>> load_;
  std::vector<std::int64_t> bound_;
};

}  // namespace mtrans::detail
