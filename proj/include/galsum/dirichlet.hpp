#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "galsum/nt.hpp"

namespace galsum::dirichlet {

using cplx = std::complex<double>;
using nt::FactoredInt;
using nt::IntegerSet;

// Dirichlet characters modulo q as the dual of a product of cyclic groups.
// For prime q there is one cyclic factor generated by the smallest primitive
// root g, and chi_j(n) = e(j ind_g(n) / (q-1)).
class CharacterTable {
 public:
  // Any modulus q >= 3 (all characters, not only primitive ones).
  static CharacterTable any_modulus(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  bool prime_modulus() const { return prime_; }
  std::uint64_t generator() const { return gens_.empty() ? 1 : gens_[0]; }  // prime q only
  std::size_t size() const { return phi_; }                                 // phi(q) characters
  std::uint64_t exponent() const { return L_; }                             // values lie in mu_L

  // Discrete log of n with respect to the generator (prime q); -1 if q | n.
  std::int64_t log(std::int64_t n) const;
  // chi_j(n) as an exponent k with chi_j(n) = e(k / L); -1 if gcd(n, q) > 1.
  std::int64_t phase(std::size_t j, std::int64_t n) const;
  cplx value(std::size_t j, std::int64_t n) const;
  cplx root(std::uint64_t k) const { return roots_[k % L_]; }
  int parity(std::size_t j) const;  // nu with chi(-1) = (-1)^nu
  bool principal(std::size_t j) const { return j == 0; }
  std::size_t conj(std::size_t j) const;
  std::size_t product(std::size_t j, std::size_t k) const;
  // Non-principal characters are primitive when q is prime; for composite q
  // this is checked through the induced-modulus test.
  bool primitive(std::size_t j) const;

  // Checks the group-law, parity-count and orthogonality invariants by
  // exhaustive evaluation. Returns an empty string or the first violation.
  std::string verify() const;

 private:
  friend CharacterTable build_character_table(std::uint64_t q);
  explicit CharacterTable(std::uint64_t q);

  std::uint64_t q_ = 0;
  bool prime_ = false;
  std::size_t phi_ = 0;
  std::uint64_t L_ = 1;
  std::vector<std::uint64_t> gens_;    // component generators lifted mod q
  std::vector<std::uint64_t> orders_;  // component orders
  // coords_[n * r + c] = index of n in component c; units only
  std::vector<std::uint32_t> coords_;
  std::vector<char> unit_;
  std::vector<cplx> roots_;
  std::vector<std::uint64_t> digits(std::size_t j) const;
  std::size_t from_digits(const std::vector<std::uint64_t>& d) const;
};

// Prime q >= 3 only (DomainError otherwise); invariants verified for q <= 100.
CharacterTable build_character_table(std::uint64_t q);

// S(x, chi) = sum_{n <= x} chi(n), compensated.
cplx character_sum(const CharacterTable& t, std::size_t j, std::uint64_t x);

// ---------------------------------------------------------------------------
// Smoothing kernel W_nu and central values

// W_nu(x) = 4/Gamma(1/4+nu/2)^2 int_x^inf t^{nu-1/2} int_0^inf e^{-v^2-(t/v)^2} dv/v dt.
double w_kernel(double x, int nu, double tol = 1e-10);
// Explicit majorant: W_nu(x) <= min(1, sqrt(pi) e^{-2x} / Gamma(1/4+nu/2)^2) for x >= 1.
double w_kernel_majorant(double x, int nu);
// K_0(2t) as the v-integral, by step-halving trapezoid on a logarithmic grid.
double inner_bessel(double t, double rel_tol = 1e-13);

// W_nu(pi n / q) for n = 0..n_max (index 0 holds W_nu(0) = 1).
std::vector<double> w_table(std::uint64_t q, int nu, std::uint64_t n_max, double tol);

struct LHalf {
  double value = 0;       // max(raw, 0)
  double raw = 0;         // truncated Eq.-series value
  double imag = 0;        // residual imaginary part (rounding only)
  std::uint64_t x_max = 0;   // nominal truncation kl <= x_max
  std::uint64_t x_used = 0;  // terms beyond this are below the tail bound
  double tail_bound = 0;
};
// |L(1/2, chi_j)|^2 via the smoothed double series. j must be non-principal
// and q prime.
LHalf l_half_sq(const CharacterTable& t, std::size_t j, double tol = 1e-10);
std::uint64_t l_half_truncation(std::uint64_t q, double tol);

// ---------------------------------------------------------------------------
// Orthogonality over primitive characters of fixed parity

struct Orthogonality {
  double lhs = 0, rhs = 0, lhs_imag = 0;
};
Orthogonality orthogonality_check(std::uint64_t q, std::int64_t m, std::int64_t n, int nu);
Orthogonality orthogonality_check(const CharacterTable& t, std::int64_t m, std::int64_t n, int nu);

// sigma_q = 2 sum_{chi even, primitive} chi(jk) conj(chi)(hl) by the divisor formula,
// and by the case table for prime q (arguments coprime to q).
double sigma_q(std::uint64_t q, std::int64_t j, std::int64_t k, std::int64_t h, std::int64_t l);
double sigma_q_table(std::uint64_t q, std::int64_t j, std::int64_t k, std::int64_t h, std::int64_t l);

// ---------------------------------------------------------------------------
// Resonance

struct Resonator {
  std::uint64_t q = 0;
  IntegerSet source;
  std::vector<std::uint64_t> H;      // residues attained, ascending
  std::vector<std::uint64_t> count;  // r(h)^2
  std::vector<cplx> R;               // R_chi for every character index

  double r(std::size_t i) const;
  // Sum r(h)^2 = |M| and |R_chi|^2 <= |R_chi0|^2 <= min(q-1, N) N.
  std::string check_invariants() const;
};
Resonator build_resonator(const CharacterTable& t, const IntegerSet& M);

struct CharacterRow {
  std::size_t index;
  int parity;
  cplx R;
  double value;  // |L(1/2,chi)|^2 or |S(x,chi)|
};

struct ResonanceReport {
  std::string kind;  // "L_half" or "char_sum"
  std::uint64_t q = 0;
  std::uint64_t x = 0;  // char_sum only
  double numerator = 0;    // V2 or W2
  double denominator = 0;  // V1 or W1
  double implied_bound = 0;
  double true_extremum = 0;
  std::size_t witness = 0;
  double tolerance = 0;
  bool sound = false;  // implied_bound <= true_extremum (1 + tolerance)
  // All R_chi vanish up to rounding (M meets every unit class equally), so
  // the ratio carries no information; implied_bound is then reported as 0.
  bool degenerate = false;
  double w1_cap = 0;   // phi(q) |M| for char_sum
  std::uint64_t x_max = 0;
  double tail_bound = 0;
  std::vector<CharacterRow> rows;
};

ResonanceReport resonate_L(std::uint64_t q, const IntegerSet& M, double tol = 1e-10);
ResonanceReport resonate_charsum(std::uint64_t q, std::uint64_t x, const IntegerSet& M);

// V2 through the sigma_q double-sum expansion with kl <= x_max.
double v2_expansion(const CharacterTable& t, const Resonator& res, std::uint64_t x_max, double tol);
// V2 per character with the same truncation (for the consistency check).
double v2_direct(const CharacterTable& t, const Resonator& res, std::uint64_t x_max, double tol);

}  // namespace galsum::dirichlet
