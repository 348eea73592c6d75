#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace galsum {

// Neumaier's variant of Kahan summation. Addition order is the caller's
// order, so results are reproducible as long as the caller is.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double x) : sum_(x) {}

  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  ComplexCompensatedSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 40;
  int max_evaluations = 2'000'000;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]. Subintervals are processed
// depth-first in left-to-right order, so the result is deterministic.
// Throws AccuracyError when the evaluation budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

struct ComplexQuadResult {
  std::complex<double> value;
  double error = 0.0;
  int evaluations = 0;
};

ComplexQuadResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opt = {});

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order
// by Newton iteration on P_n and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// "%.17g" with a '.' decimal separator regardless of locale.
std::string format_double(double x, int digits = 17);

}  // namespace galsum
