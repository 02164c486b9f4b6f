// Slow reference implementations used to cross-check the library. They work
// straight from the definitions on plain containers.
#pragma once

#include "mtrans/core.hpp"
#include "mtrans/rational.hpp"
#include "mtrans/sperner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using mtrans::Rational;

// Every vector of the box, odometer order.
inline std::vector<std::vector<int>> box(const std::vector<int>& n) {
  std::vector<std::vector<int>> out{{}};
  for (const int nj : n) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int x = 0; x < nj; ++x) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(v);
      }
    }
    out = next;
  }
  return out;
}

inline std::vector<std::vector<int>> subsets_of_size(int M, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << M); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<int> P;
    for (int j = 0; j < M; ++j) {
      if (mask >> j & 1) P.push_back(j);
    }
    out.push_back(P);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// For every P and every u in the box: the multiset restricted to vectors
// agreeing with u outside P holds at most L_P elements.
inline bool is_transversal(const std::map<std::vector<int>, long long>& t, const std::vector<int>& n, int k,
                           const std::map<std::vector<int>, long long>& L) {
  const int M = static_cast<int>(n.size());
  for (const auto& P : subsets_of_size(M, k)) {
    for (const auto& u : box(n)) {
      long long count = 0;
      for (const auto& [v, c] : t) {
        bool agree = true;
        for (int j = 0; j < M; ++j) {
          if (std::find(P.begin(), P.end(), j) == P.end() && v[j] != u[j]) agree = false;
        }
        if (agree) count += c;
      }
      if (count > L.at(P)) return false;
    }
  }
  return true;
}

inline std::map<std::vector<int>, long long> plain(const mtrans::MultiTransversal& t) {
  std::map<std::vector<int>, long long> out;
  for (const auto& [v, c] : t.entries()) out[v.coords()] = c;
  return out;
}

inline std::map<std::vector<int>, long long> plain(const mtrans::ParamSet& p) {
  return {p.bounds().begin(), p.bounds().end()};
}

inline bool is_transversal(const mtrans::MultiTransversal& t, const mtrans::ParamSet& p) {
  return is_transversal(plain(t), p.dims().sizes(), p.k(), plain(p));
}

// frac(alpha + sum v_j / n_j) by summing and subtracting the floor.
inline Rational frac_of_sum(const std::vector<int>& v, const std::vector<int>& n, const Rational& alpha) {
  Rational s = alpha;
  for (std::size_t j = 0; j < v.size(); ++j) s += Rational(mtrans::BigInt(v[j]), mtrans::BigInt(n[j]));
  return s - Rational(s.floor());
}

using Set = std::set<int>;

// All maximal chains of 2^{0..m-1}, each as its m+1 sets.
inline std::vector<std::vector<Set>> maximal_chains(int m) {
  std::vector<std::vector<Set>> out;
  std::vector<std::vector<Set>> partial{{Set{}}};
  for (int step = 0; step < m; ++step) {
    std::vector<std::vector<Set>> next;
    for (const auto& chain : partial) {
      for (int e = 0; e < m; ++e) {
        if (chain.back().count(e)) continue;
        auto grown = chain;
        auto top = chain.back();
        top.insert(e);
        grown.push_back(top);
        next.push_back(grown);
      }
    }
    partial = next;
  }
  return partial;
}

inline Set to_set(std::uint32_t mask) {
  Set s;
  for (int e = 0; e < 32; ++e) {
    if (mask >> e & 1u) s.insert(e);
  }
  return s;
}

// For every P, every fixing of the parts outside P to subsets D_i, and every
// product of chains over the parts in P: at most L_P members lie in it.
inline bool is_sperner(const mtrans::SetFamily& f, const mtrans::ParamSet& p) {
  const auto& m = f.ground().part_sizes();
  const int M = static_cast<int>(m.size());
  std::vector<std::pair<std::vector<Set>, long long>> members;
  for (const auto& [s, c] : f.entries()) {
    std::vector<Set> parts;
    for (int i = 0; i < M; ++i) parts.push_back(to_set(s.part(i)));
    members.emplace_back(parts, c);
  }
  for (const auto& P : subsets_of_size(M, p.k())) {
    const long long bound = p.bound(P);
    // Candidate fixings: those appearing among the members suffice, since
    // other fixings capture nothing.
    std::set<std::vector<Set>> fixings;
    for (const auto& [parts, c] : members) {
      std::vector<Set> key;
      for (int i = 0; i < M; ++i) {
        if (std::find(P.begin(), P.end(), i) == P.end()) key.push_back(parts[i]);
      }
      fixings.insert(key);
    }
    std::vector<std::vector<std::vector<Set>>> chains;
    for (const int j : P) chains.push_back(maximal_chains(m[j]));
    std::vector<std::size_t> pick(P.size(), 0);
    for (const auto& key : fixings) {
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        long long count = 0;
        for (const auto& [parts, c] : members) {
          bool in = true;
          std::size_t outside_index = 0;
          for (int i = 0; i < M && in; ++i) {
            const auto it = std::find(P.begin(), P.end(), i);
            if (it == P.end()) {
              in = parts[i] == key[outside_index++];
            } else {
              const auto& chain = chains[static_cast<std::size_t>(it - P.begin())][pick[static_cast<std::size_t>(it - P.begin())]];
              in = std::find(chain.begin(), chain.end(), parts[i]) != chain.end();
            }
          }
          if (in) count += c;
        }
        if (count > bound) return false;
        std::size_t t = P.size();
        bool done = true;
        while (t > 0) {
          --t;
          if (++pick[t] < chains[t].size()) {
            done = false;
            break;
          }
          pick[t] = 0;
        }
        if (done) break;
      }
    }
  }
  return true;
}

// Longest multichain of a single-part family by trying every subset of the
// support that is totally ordered by inclusion.
inline long long longest_multichain(const std::vector<std::pair<Set, long long>>& family) {
  const std::size_t s = family.size();
  long long best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    bool chain = true;
    long long total = 0;
    for (std::size_t a = 0; a < s && chain; ++a) {
      if (!(mask >> a & 1)) continue;
      total += family[a].second;
      for (std::size_t b = a + 1; b < s; ++b) {
        if (!(mask >> b & 1)) continue;
        const auto& x = family[a].first;
        const auto& y = family[b].first;
        const bool xy = std::includes(y.begin(), y.end(), x.begin(), x.end());
        const bool yx = std::includes(x.begin(), x.end(), y.begin(), y.end());
        if (!xy && !yx) chain = false;
      }
    }
    if (chain) best = std::max(best, total);
  }
  return best;
}

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
