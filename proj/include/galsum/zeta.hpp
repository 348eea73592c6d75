#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "galsum/nt.hpp"

namespace galsum::zeta {

using cplx = std::complex<double>;
using nt::IntegerSet;

// ---------------------------------------------------------------------------
// Zeta by Euler-Maclaurin

struct ZetaValue {
  cplx value;
  double remainder_bound = 0;  // explicit bound on the truncated EM remainder
  std::uint64_t terms = 0;     // N in the head sum
};

// zeta(s) for s != 1 with Re s > -5, N head terms and m Bernoulli corrections.
ZetaValue zeta_em(cplx s, std::uint64_t N, int m = 6);
// Doubles N from max(50, 2|Im s|) until the remainder bound is below tol.
ZetaValue zeta(cplx s, double tol = 1e-12);
// zeta(1/2 + it); |t| <= 1e6, tol >= 1e-10.
cplx zeta_critical(double t, double tol = 1e-10);

struct KernelParams {
  double T = 100.0;
  double eps = 0.5;
  double beta = 0.0;
  void validate() const;  // throws ValidationError
  double logT() const;
};

struct ZScan {
  double value = 0;
  double argmax = 0;
  std::size_t grid_points = 0;
};
// max |zeta(1/2 + i tau)| over T^beta <= tau <= T on a grid (endpoints
// included), refined locally around the grid argmax.
ZScan z_beta_max(const KernelParams& p, double grid_step, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Kernels

enum class KernelKind { Phi, Phi_hat, K, K_hat };
KernelKind parse_kernel(const std::string& name);
std::string kernel_name(KernelKind k);

double kernel(const KernelParams& p, KernelKind which, double x);
// Phi(t) = e^{-t^2/2}; K(u) = sin^2(eps u log T) / (pi u^2 eps log T), entire.
cplx Phi(cplx z);
double Phi_hat(double xi);
cplx K(const KernelParams& p, cplx z);
double K_hat(const KernelParams& p, double xi);

// F^(xi) = int F(u) e^{-i u xi} du by quadrature, F in {Phi, K}.
double fourier_numeric(const KernelParams& p, KernelKind F, double xi, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Shifted second-moment identity

enum class TestFunction { gaussian, K };

struct IdentityCheck {
  cplx lhs, rhs;
  double abs_diff = 0;
  cplx series, correction;  // rhs = series - correction
  double cutoff_U = 0;
  double lhs_error = 0;  // estimated error of the lhs quadrature + tail
  std::size_t series_terms = 0;
};
IdentityCheck lemma53_check(cplx s, TestFunction F, const KernelParams& p, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Real-line resonator

struct RealResonator {
  double T = 0;
  IntegerSet source;
  std::vector<std::int64_t> block;    // j for each representative
  std::vector<double> h;              // representatives h_j = min M_j
  std::vector<std::uint64_t> weight;  // r(h_j)^2 = |M_j|
  std::vector<std::vector<std::size_t>> members;  // indices into source

  double r(std::size_t i) const;
  cplx R(double t) const;  // sum r(h) h^{-it}
  std::string check_invariants() const;
};
RealResonator build_real_resonator(const IntegerSet& M, double T);

struct MomentReport {
  double M1 = 0;            // int |R(t)|^2 Phi(t log T / T) dt
  double M1_closed = 0;     // same by the Gaussian closed form
  double M1_cap = 0;        // c T |M| / log T, c from the block spacing
  double I1_estimate = 0;   // int G(t) |R(t)|^2 Phi(t log T / T) dt (real part)
  double I1_imag = 0;
  double gal_direct = 0;    // (T/log T) sum over [m,n]/(m,n) <= T^eps of sqrt((m,n)/[m,n])
  bool m1_bound_holds = false;
};
MomentReport resonance_moment(const IntegerSet& M, const KernelParams& p, double tol = 1e-8);

struct SubsumBound {
  double lhs = 0;  // divisor-closed sub-sum
  double rhs = 0;  // sum_m prod_{p|m} (1 - p^{-1/2})^{-1}
  bool per_element_ok = false;
  bool holds = false;
};
SubsumBound subsum_bound_check(const IntegerSet& M);

}  // namespace galsum::zeta
