#pragma once

#include "mtrans/core.hpp"
#include "mtrans/transversal.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mtrans {

/// Half-open window [beta, beta + mu) inside [0, 1).
class FracWindow {
 public:
  /// Throws ParameterError unless 0 < mu <= 1 and 0 <= beta <= 1 - mu.
  FracWindow(Rational beta, Rational mu);

  [[nodiscard]] const Rational& beta() const { return beta_; }
  [[nodiscard]] const Rational& mu() const { return mu_; }
  [[nodiscard]] Rational end() const { return beta_ + mu_; }
  [[nodiscard]] bool contains(const Rational& x) const { return beta_ <= x && x < end(); }

 private:
  Rational beta_;
  Rational mu_;
};

/// Number of i in {0, ..., n-1} with frac(alpha + i/n) in the window.
/// Always one of floor(mu n), ceil(mu n).
std::int64_t engel_count(std::int64_t n, const Rational& alpha, const FracWindow& w);

/// Number of v in pi with frac(alpha + sum_i v_i/n_i) in the window. With
/// N = lcm(n) and l = prod(n)/N this is l*floor(mu N) or l*ceil(mu N).
std::int64_t window_count(const Dimensions& dims, const Rational& alpha, const FracWindow& w);

/// Entry j counts the v in pi with frac(sum_i v_i/n_i) = j/N, N = lcm(n).
std::vector<std::int64_t> residue_census(const Dimensions& dims);

/// { v in pi : frac(sum_j v_j/n_j) in [beta, beta + mu) }, all multiplicities 1.
MultiTransversal fractional_construction(const Dimensions& dims, const FracWindow& w);

/// Subsets P with l_P * ceil(mu N_P) > L_P, where N_P = lcm{n_i : i in P}
/// and l_P = K_P / N_P. Throws ParameterError unless mu > 0.
std::vector<Subset> gencond_violations(const ParamSet& p, const Rational& mu);

/// True iff l_P * ceil(mu N_P) <= L_P for every k-subset P.
bool gencond_check(const ParamSet& p, const Rational& mu);

/// min_P L_P / K_P.
Rational full_density(const ParamSet& p);

/// Fractional construction at mu = min_P L_P / K_P. The result is a full
/// transversal. Throws ConstructionError citing the first P that breaks the
/// sufficient condition; ParameterError if beta is out of range.
MultiTransversal construct_full(const ParamSet& p, const Rational& beta);

/// Splits pi into ceil(1/mu0) fractional constructions over the windows
/// [t mu0, (t+1) mu0), the last one clipped at 1.
std::vector<MultiTransversal> partition_pi(const ParamSet& p, const Rational& mu0);

struct OArrayRecipe {
  ParamSet params;
  Rational mu;
};

/// n_i = j_1 * ... * j_i, mu = 1/q, L_P = mu K_P. Requires q | n_k.
OArrayRecipe oarray_recipe(std::span<const int> j_seq, int k, std::int64_t q);

/// The half-open intervals whose union selects the interval-union array for
/// an odd-length increasing list of window starts.
std::vector<std::pair<Rational, Rational>> union_intervals(const Rational& mu, std::span<const Rational> betas);

/// { v : frac(sum_j v_j/n_j) in union_intervals(mu, betas) }. Requires
/// mu N_P to be an integer for every k-subset P; the result is then a full
/// transversal with L_P = mu K_P and a simple array of strength M - k.
MultiTransversal interval_union_construction(const Dimensions& dims, int k, const Rational& mu,
                                             std::span<const Rational> betas);

enum class CombinationMode {
  /// Positive coefficients, L*_P = floor(sum alpha L_P).
  transversal,
  /// Nonzero coefficients over full transversals with constant K_P / L_P;
  /// L*_P = sum alpha L_P exactly.
  moa,
};

struct LinearTerm {
  Rational alpha;
  MultiTransversal transversal;
  ParamSet params;
};

/// Multiplicity-wise sum of alpha_l * T_l. Throws ConstructionError naming
/// the first vector whose combined multiplicity is negative or fractional.
TransversalWithParams linear_combination(std::span<const LinearTerm> terms, CombinationMode mode);

/// Entry (a_j n2_j + b_j)_j with multiplicity mult1(a) * mult2(b) on the box
/// with n_j = n1_j n2_j; L_P = L1_P L2_P.
TransversalWithParams tensor_product(const MultiTransversal& t1, const ParamSet& p1, const MultiTransversal& t2,
                                     const ParamSet& p2);

}  // namespace mtrans
