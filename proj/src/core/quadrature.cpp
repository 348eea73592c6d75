#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"

namespace galsum {
namespace {

// QUADPACK qk15 abscissae / weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Rule {
  T kronrod;
  double err;
};

template <class T, class F>
Rule<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T resk = fc * kWgk[7];
  T resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    resk += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) resg += (f1 + f2) * kWg[j / 2];
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

template <class T, class F>
void adapt(const F& f, double a, double b, double tol, int depth, const QuadOptions& opt,
           T& acc_value, double& acc_err, int& evals, const Rule<T>& whole) {
  if (evals > opt.max_evaluations)
    throw AccuracyError("quadrature: evaluation budget exhausted", std::abs(acc_value), acc_err);
  const double m = 0.5 * (a + b);
  auto left = gk15<T>(f, a, m);
  auto right = gk15<T>(f, m, b);
  evals += 30;
  const double err = left.err + right.err;
  const bool flat = std::abs(b - a) < 1e-15 * (std::abs(a) + std::abs(b));
  if (err <= tol || depth >= opt.max_depth || flat) {
    acc_value += left.kronrod + right.kronrod;
    acc_err += err;
    return;
  }
  adapt<T>(f, a, m, 0.5 * tol, depth + 1, opt, acc_value, acc_err, evals, left);
  adapt<T>(f, m, b, 0.5 * tol, depth + 1, opt, acc_value, acc_err, evals, right);
}

template <class T, class F>
std::pair<T, std::pair<double, int>> run(const F& f, double a, double b, const QuadOptions& opt) {
  if (a == b) return {T{}, {0.0, 0}};
  auto whole = gk15<T>(f, a, b);
  int evals = 15;
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole.kronrod));
  if (whole.err <= 0.01 * tol) return {whole.kronrod, {whole.err, evals}};
  T value{};
  double err = 0.0;
  adapt<T>(f, a, b, tol, 0, opt, value, err, evals, whole);
  return {value, {err, evals}};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  auto r = run<double>(f, a, b, opt);
  return {r.first, r.second.first, r.second.second};
}

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, const QuadOptions& opt) {
  auto r = run<std::complex<double>>(f, a, b, opt);
  return {r.first, r.second.first, r.second.second};
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1 || n > 512) throw DomainError("gauss_legendre: order out of range");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace galsum
