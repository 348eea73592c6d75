// One line per acceptance criterion. Criteria known to be out of reach at
// desk scale are still run and reported, but only fail the process with
// --strict.

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "galsum/dirichlet.hpp"
#include "galsum/error.hpp"
#include "galsum/extremal.hpp"
#include "galsum/gal.hpp"
#include "galsum/zeta.hpp"
#include "oracles.hpp"

using namespace galsum;
using oracle::u64;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

nt::IntegerSet S(const std::vector<u64>& v) { return nt::IntegerSet::from_values(v); }

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> p;
  for (u64 n = lo; n <= hi; ++n)
    if (oracle::is_prime(n)) p.push_back(n);
  return p;
}

Outcome c1() {
  const auto t0 = Clock::now();
  const double b = extremal::constant_B(10000).value;
  const double dt = seconds_since(t0);
  return {b >= 2.78417 && b <= 2.78427 && dt < 1, "B(10^4) = " + fmt(b, 9) + " in " + fmt(dt, 3) + " s"};
}

Outcome c2() {
  const double b = extremal::constant_B(1).value, want = 2 / std::sqrt(std::log(2.0));
  return {std::abs(b - want) <= 1e-12 * want, "B(1) = " + fmt(b, 15) + ", 2/sqrt(log 2) = " + fmt(want, 15)};
}

Outcome c3() {
  const auto t0 = Clock::now();
  double worst = 0;
  int bound_fail = 0;
  for (u64 D = 1; D <= 5000; ++D) {
    const auto f = nt::factorize(D);
    const auto dv = oracle::divisors(D);
    for (auto [a, b] : {std::pair{1u, 3u}, {1u, 2u}, {1u, 1u}}) {
      const double al = double(a) / b;
      long double brute = 0;
      for (u64 x : dv)
        for (u64 y : dv) {
          const u64 g = std::gcd(x, y);
          brute += std::pow(static_cast<long double>(g) / x * g / y, static_cast<long double>(al));
        }
      const double v = extremal::divisor_set_sum(f, engine::GalExponent(a, b));
      worst = std::max(worst, std::abs(v - double(brute)) / double(brute));
    }
    const double s = extremal::divisor_set_sum(f, engine::GalExponent(1, 2));
    const auto bd = extremal::divisor_set_bounds(f);
    if (s > bd.upper_exp * (1 + 1e-12)) ++bound_fail;
    bool sqfree = true;
    for (auto [p, e] : f.factors()) sqfree &= e == 1;
    if (sqfree && (bd.lower_sqfree > s * (1 + 1e-12) || s > bd.upper_sqfree * (1 + 1e-12))) ++bound_fail;
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-12 && bound_fail == 0 && dt < 60,
          "max rel err " + fmt(worst, 3) + ", bound violations " + std::to_string(bound_fail) + ", " + fmt(dt, 3) + " s"};
}

Outcome c4() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> sz(1, 200);
  std::uniform_int_distribution<u64> mx(200, 100000);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    const auto M = S(oracle::random_set(rng, sz(rng), mx(rng)));
    const double a = engine::gal_sum(M, {1, 2}, engine::GalAlgorithm::pairwise);
    const double b = engine::gal_sum(M, {1, 2}, engine::GalAlgorithm::phi_identity);
    worst = std::max(worst, std::abs(a - b) / a);
  }
  return {worst <= 1e-10, "500 sets, max rel diff " + fmt(worst, 3)};
}

Outcome c5() {
  std::mt19937_64 rng(5);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const auto v = oracle::random_set(rng, 1 + i % 80, 5000);
    const auto M = S(v);
    if (engine::gal_sum(M, {1, 2}) / double(v.size()) > engine::quadratic_norm(M, {1, 2}) * (1 + 1e-10)) ++bad;
  }
  const double q = engine::quadratic_norm(S({1, 2}), {1, 2});
  const double want = 1 + 1 / std::sqrt(2.0);
  return {bad == 0 && std::abs(q - want) <= 1e-10,
          "sandwich violations " + std::to_string(bad) + "/200, Q({1,2}) - (1 + 2^-1/2) = " + fmt(q - want, 3)};
}

Outcome c6() {
  std::vector<std::vector<std::vector<std::uint32_t>>> seqs(7);  // seqs[k]: length-k subsets of {0..7}
  for (std::uint32_t mask = 1; mask < 256; ++mask) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t b = 0; b < 8; ++b)
      if (mask >> b & 1) s.push_back(b);
    if (s.size() <= 6) seqs[s.size()].push_back(s);
  }
  long checked = 0, violations = 0;
  for (u64 p : {2, 3, 5})
    for (std::uint32_t r = 0; r <= 5; ++r)
      for (std::uint32_t s = 0; s <= 5; ++s) {
        const double star = engine::sigma_p_star(r, s, p), plus = engine::sigma_p_plus(r, s, p);
        if (star > plus * (1 + 1e-12)) ++violations;
        for (const auto& a : seqs[r + 1])
          for (const auto& b : seqs[s + 1]) {
            ++checked;
            if (engine::sigma_p(a, b, p) > star * (1 + 1e-12)) ++violations;
          }
      }
  return {violations == 0, std::to_string(checked) + " valuation pairs, " + std::to_string(violations) + " violations"};
}

Outcome c7() {
  const auto t0 = Clock::now();
  double worst = 0;
  long cases = 0;
  for (u64 q : primes_between(3, 50)) {
    const auto t = dirichlet::build_character_table(q);
    for (std::int64_t m = 1; m < std::int64_t(q); ++m)
      for (std::int64_t n = 1; n < std::int64_t(q); ++n)
        for (int nu : {0, 1}) {
          const auto o = dirichlet::orthogonality_check(t, m, n, nu);
          worst = std::max(worst, std::abs(o.lhs - o.rhs));
          ++cases;
        }
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-9 && dt < 30, std::to_string(cases) + " cases, max |lhs - rhs| " + fmt(worst, 3) + ", " + fmt(dt, 3) + " s"};
}

Outcome c8() {
  const double w0 = dirichlet::w_kernel(0, 0, 1e-10);
  bool shape = true;
  for (int nu : {0, 1}) {
    double prev = 2;
    for (int i = 0; i < 100; ++i) {
      const double w = dirichlet::w_kernel(10.0 * i / 99, nu);
      shape &= w >= 0 && w <= 1 + 1e-12 && w <= prev + 1e-12;
      prev = w;
    }
  }
  double worst = 0;
  for (int nu : {0, 1})
    for (double x : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(dirichlet::w_kernel(x, nu, 1e-12) - oracle::w_contour(x, nu)));
  return {std::abs(w0 - 1) <= 1e-8 && shape && worst <= 1e-7,
          "W0(0) - 1 = " + fmt(w0 - 1, 3) + ", range/monotone " + (shape ? "ok" : "violated") +
              ", contour oracle max diff " + fmt(worst, 3)};
}

Outcome c9() {
  int bad = 0, runs = 0, degenerate = 0;
  for (u64 q : primes_between(5, 50)) {
    std::vector<u64> v;
    for (u64 a = 1; a <= std::min<u64>(q - 1, 20); ++a) v.push_back(a);
    const auto rep = dirichlet::resonate_L(q, S(v));
    ++runs;
    degenerate += rep.degenerate;
    if (rep.implied_bound > rep.true_extremum * (1 + 1e-9)) ++bad;
  }
  for (u64 q = 3; q <= 200; ++q) {
    std::vector<u64> v;
    for (u64 a = 1; a <= std::min<u64>(q - 1, 20); ++a)
      if (std::gcd(a, q) == 1) v.push_back(a);
    for (u64 x : {std::max<u64>(q / 4, 1), q / 2}) {
      const auto rep = dirichlet::resonate_charsum(q, x, S(v));
      ++runs;
      if (rep.implied_bound > rep.true_extremum * (1 + 1e-9) + 1e-12) ++bad;
    }
  }
  return {bad == 0, std::to_string(runs) + " reports, " + std::to_string(bad) + " unsound (" + std::to_string(degenerate) +
                        " central-value runs degenerate: the set meets every class mod +-1 equally)"};
}

Outcome c10() {
  zeta::KernelParams p;
  p.T = 20;
  p.eps = 0.5;
  auto t0 = Clock::now();
  const auto g = zeta::lemma53_check({0.5, 3}, zeta::TestFunction::gaussian, p, 1e-7);
  const double tg = seconds_since(t0);
  t0 = Clock::now();
  const auto k = zeta::lemma53_check({0.5, 5}, zeta::TestFunction::K, p, 1e-6);
  const double tk = seconds_since(t0);
  return {g.abs_diff < 1e-5 && k.abs_diff < 1e-5 && tg < 60 && tk < 60,
          "gaussian diff " + fmt(g.abs_diff, 3) + " (" + fmt(tg, 3) + " s), K diff " + fmt(k.abs_diff, 3) + " (" + fmt(tk, 3) + " s)"};
}

Outcome c11() {
  zeta::KernelParams p;
  p.T = 20;
  p.eps = 0.5;
  const double edge = 2 * p.eps * std::log(p.T);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double xi = i == 19 ? edge : 1.2 * edge * i / 19;
    worst = std::max(worst, std::abs(zeta::fourier_numeric(p, zeta::KernelKind::K, xi) - zeta::K_hat(p, xi)));
  }
  return {worst <= 1e-4, "20 points up to the support edge " + fmt(edge) + ", max diff " + fmt(worst, 3)};
}

Outcome c12() {
  std::vector<u64> Ns;
  for (int e = 10; e <= 24; ++e) Ns.push_back(u64{1} << e);
  const auto rows = extremal::sweep_construction(Ns, extremal::SweepGrid{}, 1);
  bool card_ok = true;
  for (const auto& r : rows)
    if (r.ok) card_ok &= r.cardinality <= r.N;
  const auto best = extremal::best_per_N(rows);
  bool positive = best.size() == Ns.size(), monotone = true;
  std::string series;
  // least-squares slope of log(S/|M|) against sqrt(L1 L3 / L2)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    positive &= best[i].normalized_exponent > 0;
    if (i) monotone &= best[i].normalized_exponent >= best[i - 1].normalized_exponent;
    series += (i ? " " : "") + fmt(best[i].normalized_exponent, 3);
    const double L1 = std::log(double(best[i].N)), L2 = std::log(L1), L3 = std::log(L2);
    const double x = std::sqrt(L1 * L3 / L2), y = best[i].normalized_exponent * x;
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = double(best.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {positive && monotone && card_ok, std::string("|M| <= N ") + (card_ok ? "ok" : "violated") + ", positive " +
                                               (positive ? "yes" : "no") + ", nondecreasing " + (monotone ? "yes" : "no") +
                                               " [" + series + "], fitted exponent " + fmt(slope, 4) + " (limit 2 sqrt 2)"};
}

Outcome c13() {
  bool bounds = true, band = true;
  std::string series;
  for (int e = 10; e <= 24; ++e) {
    const auto r = extremal::primorial_row(u64{1} << e);
    bounds &= r.tau <= (u64{1} << e) && r.lower_log <= r.log_ratio + 1e-12 && r.log_ratio <= r.upper_log + 1e-12;
    band &= r.normalized >= 1.5 && r.normalized <= 3.5;
    series += (e > 10 ? " " : "") + fmt(r.normalized, 3);
  }
  return {bounds && band, std::string("two-sided bound ") + (bounds ? "ok" : "violated") + ", band [1.5, 3.5] " +
                              (band ? "ok" : "violated") + " [" + series + "], limit 2/sqrt(log 2) = " +
                              fmt(2 / std::sqrt(std::log(2.0)), 5)};
}

Outcome c14() {
  int bad = 0, sets = 0;
  auto check = [&](const std::vector<u64>& v) {
    ++sets;
    const auto r = zeta::subsum_bound_check(S(v));
    if (!r.holds || r.lhs > oracle::gal_sum(v, 0.5) * (1 + 1e-12)) ++bad;
  };
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) check(oracle::random_divisor_closed(rng, 1 + i % 6, 5000));
  for (u64 D = 1; D <= 2000; ++D) check(oracle::divisors(D));
  return {bad == 0, std::to_string(sets) + " divisor-closed sets, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool known_unattainable;
  };
  const std::vector<Criterion> all{
      {1, "constant B at 10^4 terms", c1, false},
      {2, "first-term identity", c2, false},
      {3, "divisor-set formula and bounds", c3, false},
      {4, "pairwise vs phi identity", c4, false},
      {5, "norm sandwich", c5, false},
      {6, "valuation bounds", c6, false},
      {7, "orthogonality", c7, false},
      {8, "W kernel", c8, false},
      {9, "resonance soundness", c9, false},
      {10, "shifted second-moment identity", c10, false},
      {11, "kernel Fourier pair", c11, false},
      {12, "construction trend", c12, true},
      {13, "primorial finite form", c13, false},
      {14, "divisor-closed sub-sum bound", c14, false},
  };
  int hard_fail = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = o.pass ? "PASS" : (c.known_unattainable ? "FAIL [expected/known]" : "FAIL");
    std::cout << std::setw(2) << c.id << ' ' << tag << "  " << c.name << ": " << o.detail << std::endl;
    if (!o.pass && (strict || !c.known_unattainable)) ++hard_fail;
  }
  return hard_fail ? 1 : 0;
}
