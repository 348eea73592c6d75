#include <cmath>
#include <functional>

#include "galsum/error.hpp"
#include "galsum/gal.hpp"
#include "prepared.hpp"

namespace galsum::engine {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Power iteration for a symmetric PSD operator, starting from the all-ones
// direction. Stops on the relative residual |Ax - lx| / l.
NormResult power_iterate(std::size_t n, const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply) {
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  double lambda = 0.0, residual = INFINITY;
  for (int it = 1; it <= kPowerMaxIter; ++it) {
    apply(x, y);
    lambda = dot(x, y);
    if (lambda <= 0.0) return {0.0, it, 0.0};
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = y[i] - lambda * x[i];
      r2 += d * d;
    }
    residual = std::sqrt(r2) / lambda;
    if (residual < kPowerTol) return {lambda, it, residual};
    const double ny = std::sqrt(dot(y, y));
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  throw ConvergenceError("power iteration did not converge", lambda, residual);
}

}  // namespace

NormResult quadratic_norm_detail(const IntegerSet& M, GalExponent alpha, NormMode mode) {
  if (M.empty()) throw DomainError("quadratic_norm of the empty set");
  const std::size_t n = M.size();
  if (mode == NormMode::full) {
    GalMatrix G = build_gal_matrix(M, alpha);
    return power_iterate(n, [&](const std::vector<double>& x, std::vector<double>& y) {
      const auto& a = G.data();
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
        y[i] = s;
      }
    });
  }
  // Divisibility-masked operator B(i,j) = (m_j/m_i)^a for m_j | m_i, stored
  // sparsely; the norm is sqrt(lambda_max(B^T B)).
  detail::Prepared P(M);
  const double a = alpha.value();
  struct Entry {
    std::size_t i, j;
    double v;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (P.divides(j, i)) entries.push_back({i, j, std::exp(-a * P.log_ratio(i, j))});
  std::vector<double> tmp(n);
  auto r = power_iterate(n, [&](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (auto& e : entries) tmp[e.i] += e.v * x[e.j];
    std::fill(y.begin(), y.end(), 0.0);
    for (auto& e : entries) y[e.j] += e.v * tmp[e.i];
  });
  r.value = std::sqrt(r.value);
  return r;
}

}  // namespace galsum::engine
