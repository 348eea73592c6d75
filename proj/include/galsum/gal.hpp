#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galsum/nt.hpp"

namespace galsum::engine {

using nt::FactoredInt;
using nt::IntegerSet;

// Exact rational exponent in (0, 1].
class GalExponent {
 public:
  GalExponent(std::uint32_t num = 1, std::uint32_t den = 2);
  static GalExponent parse(const std::string& s);  // "1/2", "1", "0.5" is rejected

  std::uint32_t num() const { return num_; }
  std::uint32_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / den_; }
  bool twice_integral() const { return (2 * num_) % den_ == 0; }
  std::string str() const;
  bool operator==(const GalExponent&) const = default;

 private:
  std::uint32_t num_, den_;
};

enum class GalAlgorithm { pairwise, phi_identity };

double gal_sum(const IntegerSet& M, GalExponent alpha, GalAlgorithm algo = GalAlgorithm::pairwise);

// Pairwise sum with a real exponent; used internally and by oracles that
// need irrational exponents.
double gal_sum_real(const IntegerSet& M, double alpha);

enum class WeightKind { g0, g1, g_alpha };

struct WeightDescriptor {
  WeightKind kind = WeightKind::g0;
  double scale_C = 1.0;
  GalExponent alpha_param{1, 2};  // only for g_alpha

  void validate() const;
  double operator()(const FactoredInt& n) const;
};

double gal_sum_weighted(const IntegerSet& M, const WeightDescriptor& g);
// S^+(M; g) = sum g(m/(m,n)) g(n/(m,n)).
double gal_sum_weighted_plus(const IntegerSet& M, const WeightDescriptor& g);

double gal_subsum(const IntegerSet& M, GalExponent alpha);

class GalMatrix {
 public:
  GalMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

GalMatrix build_gal_matrix(const IntegerSet& M, GalExponent alpha);

enum class NormMode { full, divisibility };

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

constexpr double kPowerTol = 1e-12;
constexpr int kPowerMaxIter = 100'000;

NormResult quadratic_norm_detail(const IntegerSet& M, GalExponent alpha, NormMode mode);
inline double quadratic_norm(const IntegerSet& M, GalExponent alpha, NormMode mode = NormMode::full) {
  return quadratic_norm_detail(M, alpha, mode).value;
}

// Valuation-pattern sums.
double sigma_p(const std::vector<std::uint32_t>& nu_m, const std::vector<std::uint32_t>& nu_n,
               std::uint64_t p);
double sigma_p_star(std::uint32_t r, std::uint32_t s, std::uint64_t p);
double sigma_p_plus(std::uint32_t r, std::uint32_t s, std::uint64_t p);

}  // namespace galsum::engine
