#include "mtrans/construct.hpp"

#include "mtrans/error.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <numeric>
#include <set>

namespace mtrans {

namespace {

// Marks the r in [0, N) with frac(alpha + r/N) in [lo, hi). With a = frac(alpha)
// and D = lcm(den a, N) every such value is X_r / D for the integer
// X_r = (a D + r D/N) mod D, so membership reduces to ceil(lo D) <= X_r < ceil(hi D).
template <typename Int>
void mark_residues(std::vector<char>& hits, Int start, Int step, Int modulus, Int lo, Int hi) {
  Int x = start;
  for (auto& hit : hits) {
    if (lo <= x && x < hi) hit = 1;
    x += step;
    if (x >= modulus) x -= modulus;
  }
}

void mark_interval(std::vector<char>& hits, const Rational& alpha, const Rational& lo, const Rational& hi) {
  const auto N = static_cast<std::int64_t>(hits.size());
  const Rational a = alpha.frac();
  const BigInt q = a.denominator();
  const BigInt D = q / boost::multiprecision::gcd(q, BigInt(N)) * N;
  const BigInt start = a.numerator() * (D / q);
  const BigInt step = D / N;
  const BigInt lo_scaled = (lo * Rational(D)).ceil();
  const BigInt hi_scaled = (hi * Rational(D)).ceil();
  if (D < (BigInt(1) << 61)) {
    mark_residues<std::int64_t>(hits, static_cast<std::int64_t>(start), static_cast<std::int64_t>(step),
                                static_cast<std::int64_t>(D), static_cast<std::int64_t>(lo_scaled),
                                static_cast<std::int64_t>(hi_scaled));
  } else {
    mark_residues<BigInt>(hits, start, step, D, lo_scaled, hi_scaled);
  }
}

// r(v) = sum_j v_j (N / n_j) mod N, so that frac(sum_j v_j/n_j) = r(v)/N.
std::vector<std::int64_t> cell_residues(const Dimensions& dims, std::int64_t N) {
  std::vector<std::int64_t> out;
  out.reserve(dims.cell_count());
  for_each_cell(dims, [&](const ProfileVector& v) {
    std::int64_t r = 0;
    for (int j = 0; j < v.size(); ++j) r = (r + v[j] * (N / dims.size(j))) % N;
    out.push_back(r);
  });
  return out;
}

MultiTransversal select_cells(const Dimensions& dims, const std::vector<char>& hits) {
  const std::int64_t N = lcm_of(dims.sizes());
  const auto residues = cell_residues(dims, N);
  MultiTransversal t(dims);
  std::size_t index = 0;
  for_each_cell(dims, [&](const ProfileVector& v) {
    if (hits[static_cast<std::size_t>(residues[index++])]) t.add(v);
  });
  return t;
}

void require_positive(const Rational& mu) {
  if (mu <= Rational(0)) {
    throw ParameterError("mu must be positive, got " + mu.to_string());
  }
}

}  // namespace

FracWindow::FracWindow(Rational beta, Rational mu) : beta_(std::move(beta)), mu_(std::move(mu)) {
  if (mu_ <= Rational(0) || mu_ > Rational(1)) {
    throw ParameterError("window length mu=" + mu_.to_string() + " outside (0, 1]");
  }
  if (beta_ < Rational(0) || beta_ + mu_ > Rational(1)) {
    throw ParameterError("window start beta=" + beta_.to_string() + " outside [0, 1 - mu] for mu=" +
                         mu_.to_string());
  }
}

std::int64_t engel_count(std::int64_t n, const Rational& alpha, const FracWindow& w) {
  if (n < 1) {
    throw ParameterError("engel_count needs n >= 1");
  }
  std::vector<char> hits(static_cast<std::size_t>(n), 0);
  mark_interval(hits, alpha, w.beta(), w.end());
  return std::count(hits.begin(), hits.end(), 1);
}

std::int64_t window_count(const Dimensions& dims, const Rational& alpha, const FracWindow& w) {
  const std::int64_t N = lcm_of(dims.sizes());
  std::vector<char> hits(static_cast<std::size_t>(N), 0);
  mark_interval(hits, alpha, w.beta(), w.end());
  std::int64_t count = 0;
  for (const auto r : cell_residues(dims, N)) count += hits[static_cast<std::size_t>(r)];
  return count;
}

std::vector<std::int64_t> residue_census(const Dimensions& dims) {
  const std::int64_t N = lcm_of(dims.sizes());
  std::vector<std::int64_t> census(static_cast<std::size_t>(N), 0);
  for (const auto r : cell_residues(dims, N)) ++census[static_cast<std::size_t>(r)];
  return census;
}

MultiTransversal fractional_construction(const Dimensions& dims, const FracWindow& w) {
  std::vector<char> hits(static_cast<std::size_t>(lcm_of(dims.sizes())), 0);
  mark_interval(hits, Rational(0), w.beta(), w.end());
  return select_cells(dims, hits);
}

std::vector<Subset> gencond_violations(const ParamSet& p, const Rational& mu) {
  require_positive(mu);
  std::vector<Subset> failed;
  for (const auto& P : p.subsets()) {
    const std::int64_t N = p.box_lcm(P);
    const std::int64_t ell = p.box_size(P) / N;
    const BigInt needed = BigInt(ell) * (mu * Rational(N)).ceil();
    if (needed > p.bound(P)) failed.push_back(P);
  }
  return failed;
}

bool gencond_check(const ParamSet& p, const Rational& mu) { return gencond_violations(p, mu).empty(); }

Rational full_density(const ParamSet& p) {
  std::optional<Rational> best;
  for (const auto& P : p.subsets()) {
    const Rational d = p.density(P);
    if (!best || d < *best) best = d;
  }
  return *best;
}

MultiTransversal construct_full(const ParamSet& p, const Rational& beta) {
  const Rational mu = full_density(p);
  if (mu > Rational(1)) {
    throw ConstructionError("every L_P exceeds K_P; min L_P/K_P = " + mu.to_string() + " > 1");
  }
  const auto failed = gencond_violations(p, mu);
  if (!failed.empty()) {
    throw ConstructionError("sufficient condition l_P*ceil(mu*N_P) <= L_P fails at P=" + to_string(failed.front()) +
                                " for mu=" + mu.to_string(),
                            failed.front());
  }
  return fractional_construction(p.dims(), FracWindow(beta, mu));
}

std::vector<MultiTransversal> partition_pi(const ParamSet& p, const Rational& mu0) {
  require_positive(mu0);
  if (mu0 > Rational(1)) {
    throw ParameterError("mu0=" + mu0.to_string() + " exceeds 1");
  }
  const auto failed = gencond_violations(p, mu0);
  if (!failed.empty()) {
    throw ConstructionError("sufficient condition fails at P=" + to_string(failed.front()) + " for mu0=" +
                                mu0.to_string(),
                            failed.front());
  }
  std::vector<MultiTransversal> cells;
  for (Rational start(0); start < Rational(1); start += mu0) {
    const Rational length = std::min(mu0, Rational(1) - start);
    cells.push_back(fractional_construction(p.dims(), FracWindow(start, length)));
  }
  return cells;
}

OArrayRecipe oarray_recipe(std::span<const int> j_seq, int k, std::int64_t q) {
  const int M = static_cast<int>(j_seq.size());
  if (M == 0) {
    throw ParameterError("oarray_recipe needs a non-empty sequence");
  }
  if (k < 1 || k > M) {
    throw ParameterError("oarray_recipe: k=" + std::to_string(k) + " outside [1, " + std::to_string(M) + "]");
  }
  if (q < 1) {
    throw ParameterError("oarray_recipe: q must be positive");
  }
  std::vector<int> n;
  std::int64_t running = 1;
  for (const int j : j_seq) {
    if (j < 1) {
      throw ParameterError("oarray_recipe: sequence entries must be positive");
    }
    running *= j;
    if (running > std::numeric_limits<int>::max()) {
      throw ScaleError("oarray_recipe: level counts overflow");
    }
    n.push_back(static_cast<int>(running));
  }
  if (n[static_cast<std::size_t>(k - 1)] % q != 0) {
    throw ParameterError("oarray_recipe: q=" + std::to_string(q) + " does not divide n_k=" +
                         std::to_string(n[static_cast<std::size_t>(k - 1)]));
  }
  Dimensions dims(n);
  std::map<Subset, std::int64_t> bounds;
  for (const auto& P : k_subsets(M, k)) {
    std::int64_t K = 1;
    for (const int i : P) K *= dims.size(i);
    bounds.emplace(P, K / q);
  }
  return {ParamSet(std::move(dims), k, std::move(bounds)), Rational(1, q)};
}

std::vector<std::pair<Rational, Rational>> union_intervals(const Rational& mu, std::span<const Rational> betas) {
  if (betas.empty() || betas.size() % 2 == 0) {
    throw ParameterError("interval union needs an odd number of window starts");
  }
  require_positive(mu);
  const std::size_t last = betas.size() - 1;
  if (betas[0] < Rational(0)) {
    throw ParameterError("first window start must be non-negative");
  }
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i - 1] < betas[i])) {
      throw ParameterError("window starts must be strictly increasing (position " + std::to_string(i) + ")");
    }
  }
  if (!(betas[last] < betas[0] + mu)) {
    throw ParameterError("last window start must lie below beta_1 + mu");
  }
  if (betas[0] + mu > Rational(1) || betas[last] > Rational(1) - mu) {
    throw ParameterError("window starts must leave room for a window of length mu inside [0, 1)");
  }
  const std::size_t Q = last / 2;
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t l = 0; l < Q; ++l) out.emplace_back(betas[2 * l], betas[2 * l + 1]);
  out.emplace_back(betas[last], betas[0] + mu);
  for (std::size_t l = 0; l < Q; ++l) out.emplace_back(betas[2 * l + 1] + mu, betas[2 * l + 2] + mu);
  return out;
}

MultiTransversal interval_union_construction(const Dimensions& dims, int k, const Rational& mu,
                                             std::span<const Rational> betas) {
  const auto intervals = union_intervals(mu, betas);
  const int M = dims.parts();
  if (k < 1 || k > M) {
    throw ParameterError("interval union: k=" + std::to_string(k) + " outside [1, " + std::to_string(M) + "]");
  }
  for (const auto& P : k_subsets(M, k)) {
    std::int64_t N = 1;
    for (const int i : P) N = std::lcm(N, static_cast<std::int64_t>(dims.size(i)));
    if (!(mu * Rational(N)).is_integer()) {
      throw ParameterError("interval union: mu*N_P is not an integer for P=" + to_string(P));
    }
  }
  std::vector<char> hits(static_cast<std::size_t>(lcm_of(dims.sizes())), 0);
  for (const auto& [lo, hi] : intervals) mark_interval(hits, Rational(0), lo, hi);
  return select_cells(dims, hits);
}

TransversalWithParams linear_combination(std::span<const LinearTerm> terms, CombinationMode mode) {
  if (terms.empty()) {
    throw ParameterError("linear combination needs at least one term");
  }
  const ParamSet& first = terms.front().params;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& term = terms[i];
    const std::string label = "term " + std::to_string(i);
    if (!(term.params.dims() == first.dims()) || term.params.k() != first.k()) {
      throw ParameterError(label + " differs in dimensions or k");
    }
    if (!(term.transversal.dims() == first.dims())) {
      throw ParameterError(label + ": transversal dimensions differ from its parameters");
    }
    if (mode == CombinationMode::transversal && term.alpha <= Rational(0)) {
      throw ParameterError(label + ": coefficients must be positive in transversal mode");
    }
    if (mode == CombinationMode::moa && term.alpha == Rational(0)) {
      throw ParameterError(label + ": coefficients must be nonzero in MOA mode");
    }
    if (!check_transversal(term.transversal, term.params).ok) {
      throw PreconditionError(label + " is not a transversal for its parameters");
    }
    if (mode == CombinationMode::moa &&
        (!konstant_holds(term.params) || !fullness(term.transversal, term.params).is_full)) {
      throw ConstructionError(label + " is not a full transversal with constant K_P/L_P");
    }
  }

  std::set<ProfileVector> support;
  for (const auto& term : terms) {
    for (const auto& [v, c] : term.transversal.entries()) support.insert(v);
  }
  MultiTransversal result(first.dims());
  for (const auto& v : support) {
    Rational total(0);
    for (const auto& term : terms) total += term.alpha * Rational(term.transversal.multiplicity(v));
    if (!total.is_integer() || total < Rational(0)) {
      throw ConstructionError("combined multiplicity of " + to_string(v) + " is " + total.to_string() +
                              ", not a non-negative integer");
    }
    result.set(v, total.to_int64());
  }

  std::map<Subset, std::int64_t> bounds;
  for (const auto& P : first.subsets()) {
    Rational total(0);
    for (const auto& term : terms) total += term.alpha * Rational(term.params.bound(P));
    if (mode == CombinationMode::moa && !total.is_integer()) {
      throw ConstructionError("combined bound for P=" + to_string(P) + " is " + total.to_string(), P);
    }
    const BigInt value = total.floor();
    if (value < 1) {
      throw ConstructionError("combined bound for P=" + to_string(P) + " is " + total.to_string() + " < 1", P);
    }
    bounds.emplace(P, Rational(value).to_int64());
  }
  return {std::move(result), ParamSet(first.dims(), first.k(), std::move(bounds))};
}

TransversalWithParams tensor_product(const MultiTransversal& t1, const ParamSet& p1, const MultiTransversal& t2,
                                     const ParamSet& p2) {
  if (p1.parts() != p2.parts() || p1.k() != p2.k()) {
    throw ParameterError("tensor product needs equal M and k");
  }
  if (!(t1.dims() == p1.dims()) || !(t2.dims() == p2.dims())) {
    throw ParameterError("tensor product: transversal dimensions differ from their parameters");
  }
  const int M = p1.parts();
  std::vector<int> n(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) n[static_cast<std::size_t>(j)] = p1.dims().size(j) * p2.dims().size(j);
  Dimensions dims(n);
  MultiTransversal result(dims);
  for (const auto& [a, ca] : t1.entries()) {
    for (const auto& [b, cb] : t2.entries()) {
      std::vector<int> coords(static_cast<std::size_t>(M));
      for (int j = 0; j < M; ++j) coords[static_cast<std::size_t>(j)] = a[j] * p2.dims().size(j) + b[j];
      result.add(ProfileVector(std::move(coords)), ca * cb);
    }
  }
  std::map<Subset, std::int64_t> bounds;
  for (const auto& P : p1.subsets()) bounds.emplace(P, p1.bound(P) * p2.bound(P));
  return {std::move(result), ParamSet(std::move(dims), p1.k(), std::move(bounds))};
}

}  // namespace mtrans
