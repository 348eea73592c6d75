#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galsum/gal.hpp"
#include "galsum/nt.hpp"

namespace galsum::extremal {

using engine::GalExponent;
using nt::FactoredInt;
using nt::IntegerSet;

// ---------------------------------------------------------------------------
// Product-set construction

struct ConstructionParams {
  std::uint64_t N = 1'000'000;
  double u = 2.718281828459045;
  double a = 1.9;
  double gamma = 0.5;
  double alpha_res = 1.0;
  // Blocks use exponents {0,1} only (experimental squarefree variant).
  bool squarefree = false;
  // Materialize the explicit set when its cardinality is at most this.
  std::uint64_t materialize_limit = 20'000;
  // Pairwise cross-check of the block product when |M| is at most this.
  std::uint64_t verify_limit = 3'000;

  void validate() const;  // throws ValidationError naming the condition
};

struct Block {
  int k = 0;
  double lower = 0, upper = 0;       // I_k = ]lower, upper]
  std::vector<std::uint64_t> primes;  // generators (primes of I_k)
  int J_formula = 0;                 // 2 floor(a log N / (2 k^2 log3 N))
  int J_clamped = 0;                 // after the 4P/3 clamp
  int J = 0;                         // budget actually used (after finite-N fit)
  int j_k = 0;
  BigInt N_k;                        // product of the primes of I_k
  BigInt cardinality;
  double gal_sum = 1.0;
  double T_k = 0.0;  // 2e(sqrt u - 1) u^{k/2} / j_k * sqrt(log N / log2 N), 0 if j_k = 0
  BigInt V_k;        // number of (d1, d2) pairs with omega <= J/2 - j_k
  bool explicit_checked = false;
  double explicit_rel_err = 0.0;
};

struct ConstructionReport {
  ConstructionParams params;
  double L1 = 0, L2 = 0, L3 = 0;  // log N, log log N, log log log N
  int K = 0;
  double a_eff = 0;  // largest a' <= a whose product set fits in N
  std::vector<Block> blocks;
  BigInt cardinality;
  double gal_sum_value = 0;  // S_{1/2}(M) as the product of block sums
  double log_gal_sum = 0;
  double normalized_exponent = 0;  // log(S/|M|) / sqrt(L1 L3 / L2)
  double h = 0, beta = 0;          // asymptotic predictions at the given a
  std::optional<IntegerSet> final_set;
  bool product_identity_checked = false;
  double product_identity_rel_err = 0.0;
  std::vector<std::string> warnings;
};

ConstructionReport construct_extremal_set(const ConstructionParams& params);

// Exact S_{1/2} of a block of exponent vectors over `primes` with at most
// `twos` entries equal to 2 and at most `zeros` entries equal to 0.
double block_gal_sum(const std::vector<std::uint64_t>& primes, int twos, int zeros, bool squarefree);
BigInt block_cardinality(std::size_t P, int twos, int zeros, bool squarefree);
std::vector<FactoredInt> block_elements(const std::vector<std::uint64_t>& primes, int twos,
                                        int zeros, bool squarefree);

// ---------------------------------------------------------------------------
// Parameter sweeps

struct SweepGrid {
  std::vector<double> u{1.2, 1.5, 2.0, 2.718281828459045};
  std::vector<double> gamma{0.3, 0.5, 0.7, 0.9};
  // a = f / (gamma log u) for each fraction f (kept only if a > 1)
  std::vector<double> a_fraction{0.5, 0.7, 0.9, 0.99};
  bool squarefree = false;
};

struct SweepRow {
  std::uint64_t N = 0;
  double u = 0, a = 0, gamma = 0, alpha_res = 0;
  bool ok = false;
  std::string error;
  double a_eff = 0;
  BigInt cardinality;
  double gal_sum = 0;
  double normalized_exponent = 0;
};

std::vector<SweepRow> sweep_construction(const std::vector<std::uint64_t>& Ns, const SweepGrid& grid,
                                         unsigned threads = 0);
// Best row (largest normalized exponent; first in grid order on ties) per N.
std::vector<SweepRow> best_per_N(const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Completion, adjustment, splitting

IntegerSet complete_set(const IntegerSet& M, std::uint64_t N);
IntegerSet coprime_adjust(const IntegerSet& M, const FactoredInt& q);

struct DyadicSplit {
  std::vector<int> index;  // j with block inside ]2^j, 2^{j+1}]
  std::vector<IntegerSet> blocks;
  std::size_t best = 0;  // position in `blocks`
  double best_sum = 0;
};
DyadicSplit dyadic_split(const IntegerSet& M);

struct BruteResult {
  double value = 0;
  IntegerSet witness;
};
BruteResult gamma_bruteforce(int N, int universe_max, GalExponent alpha = {1, 2});

// ---------------------------------------------------------------------------
// Divisor sets

double divisor_set_sum(const FactoredInt& D, GalExponent alpha);
IntegerSet divisor_set(const FactoredInt& D);

struct DivisorBounds {
  double upper_exp;       // tau(D) exp{sum 2mu/((1+mu)(sqrt p - 1))}
  double lower_sqfree;    // exp{sum p^-1/2} prod (1 + 1/(2p))^-1, times tau(D)
  double upper_sqfree;    // exp{sum p^-1/2}, times tau(D)
};
DivisorBounds divisor_set_bounds(const FactoredInt& D);

struct ConstantB {
  double value;  // 4 sqrt(partial sum)
  double lower;  // rigorous enclosure of the full series
  double upper;
};
ConstantB constant_B(std::uint64_t terms);

struct SqrtPrimeSum {
  double sum;
  double ratio;  // sum / (2 sqrt y / log y)
};
SqrtPrimeSum sqrt_prime_sum(double y);

struct ExponentProfile {
  double y = 0;
  double lambda = 0;
  std::vector<double> r;  // r[k-1] = r_k, k = 1..K+1
  int K = 0;
  std::vector<std::pair<std::uint64_t, int>> mu_map;  // prime -> exponent
  double C1 = 0, C2 = 0, C2_K = 0;
  double B_ratio = 0;  // 4 C1 / sqrt(C2)
  double predicted_log_gamma = 0;
  FactoredInt D;
  BigInt tau_D;
  double log_ratio = 0;            // log(S(T_D) / tau(D))
  double normalized_exponent = 0;  // log_ratio / sqrt(log N / log2 N)
  int fixed_point_iterations = 0;
  bool y_shrunk = false;
};
ExponentProfile optimal_profile(std::uint64_t N);
double profile_r(int k);  // (k(k+1) log(1+1/k) / (2 log 2))^2

// Primorial rows for the squarefree divisor-set trend.
struct PrimorialRow {
  std::uint64_t N;
  int omega;
  BigInt tau;
  double log_ratio;
  double lower_log, upper_log;  // logs of the two-sided bound divided by tau
  double normalized;            // log_ratio / sqrt(log N / log2 N)
};
PrimorialRow primorial_row(std::uint64_t N);

// ---------------------------------------------------------------------------
// Predicates

struct SetPredicates {
  bool squarefree_all = false;
  bool divisor_closed = false;
  bool complete = false;
  bool strict = false;
  bool gal_bound_holds = false;
};
SetPredicates set_predicates(const IntegerSet& M);

}  // namespace galsum::extremal
