#include <algorithm>
#include <cmath>
#include <map>

#include "galsum/error.hpp"
#include "galsum/gal.hpp"
#include "galsum/numeric.hpp"
#include "galsum/zeta.hpp"

namespace galsum::zeta {

namespace {

constexpr std::size_t kMomentCap = 2000;

// Quadrature of f over [-L, L] in panels no wider than `width`.
template <class F>
std::pair<cplx, double> panel_integral(F&& f, double L, double width, double abs_tol) {
  const auto n = static_cast<std::size_t>(std::ceil(2 * L / width));
  const double w = 2 * L / static_cast<double>(n);
  QuadOptions opt;
  opt.rel_tol = 0;
  opt.abs_tol = abs_tol / static_cast<double>(n);
  ComplexCompensatedSum acc;
  double err = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = -L + static_cast<double>(i) * w;
    auto r = integrate_complex(f, a, i + 1 == n ? L : a + w, opt);
    acc.add(r.value);
    err += r.error;
  }
  return {acc.value(), err};
}

}  // namespace

double RealResonator::r(std::size_t i) const { return std::sqrt(static_cast<double>(weight.at(i))); }

cplx RealResonator::R(double t) const {
  ComplexCompensatedSum s;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double ang = -t * std::log(h[i]);
    s.add(r(i) * cplx(std::cos(ang), std::sin(ang)));
  }
  return s.value();
}

std::string RealResonator::check_invariants() const {
  const double d = std::log1p(1 / T);
  std::vector<int> seen(source.size(), 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (members[i].empty()) return "empty block";
    if (weight[i] != members[i].size()) return "weight differs from block size";
    total += weight[i];
    double mn = INFINITY;
    for (auto k : members[i]) {
      if (k >= source.size() || seen[k]++) return "blocks do not partition the set";
      const double lm = source[k].log();
      // block j holds ](1+1/T)^j, (1+1/T)^{j+1}]
      if (!(lm > block[i] * d - 1e-12 && lm <= (block[i] + 1) * d + 1e-12)) return "element outside its block";
      mn = std::min(mn, source[k].to_double());
    }
    if (std::abs(mn - h[i]) > 1e-12 * mn) return "representative is not the block minimum";
  }
  if (total != source.size()) return "sum of r(h)^2 differs from |M|";
  const double R0 = R(0).real(), n = static_cast<double>(source.size());
  if (R0 * R0 > n * n * (1 + 1e-12)) return "R(0)^2 exceeds |M|^2";
  return {};
}

RealResonator build_real_resonator(const IntegerSet& M, double T) {
  if (M.empty()) throw DomainError("resonator: M must be nonempty");
  if (!(T > 1)) throw ValidationError("resonator: T > 1 required");
  const double d = std::log1p(1 / T);
  std::map<std::int64_t, std::vector<std::size_t>> blocks;
  for (std::size_t k = 0; k < M.size(); ++k) {
    const double lm = M[k].log();
    auto j = static_cast<std::int64_t>(std::ceil(lm / d)) - 1;
    // guard the rounding at block edges
    if (lm > (j + 1) * d * (1 + 1e-15) + 1e-300) ++j;
    if (j >= 0 && lm <= j * d) --j;
    blocks[j].push_back(k);
  }
  RealResonator res;
  res.T = T;
  res.source = M;
  for (auto& [j, idx] : blocks) {
    res.block.push_back(j);
    res.h.push_back(M[idx.front()].to_double());  // M is sorted, so the first is the minimum
    res.weight.push_back(idx.size());
    res.members.push_back(idx);
  }
  auto msg = res.check_invariants();
  if (!msg.empty()) throw Error("resonator invariant failed: " + msg);
  return res;
}

MomentReport resonance_moment(const IntegerSet& M, const KernelParams& p, double tol) {
  p.validate();
  if (M.empty()) throw DomainError("moment: M must be nonempty");
  if (M.size() > kMomentCap) throw CapacityError("moment: |M| <= 2000 required");
  if (!(tol > 0)) throw DomainError("moment: tol > 0 required");
  const auto res = build_real_resonator(M, p.T);
  const double T = p.T, lT = p.logT(), lam = lT / T;
  const std::size_t H = res.h.size();
  std::vector<double> lh(H), rr(H);
  for (std::size_t i = 0; i < H; ++i) {
    lh[i] = std::log(res.h[i]);
    rr[i] = res.r(i);
  }
  MomentReport out;

  // Closed form: int e^{i t x} Phi(t lam) dt = sqrt(2 pi)/lam Phi(x/lam).
  {
    CompensatedSum s;
    for (std::size_t i = 0; i < H; ++i)
      for (std::size_t k = 0; k < H; ++k) s.add(rr[i] * rr[k] * std::exp(-0.5 * std::pow((lh[i] - lh[k]) / lam, 2)));
    out.M1_closed = std::sqrt(2 * M_PI) / lam * s.value();
  }
  // Representatives two apart differ by a factor > 1 + 1/T, so
  // sum_g Phi((log h/g)/lam) <= 3 + 4 int_0^inf Phi(x delta/lam) dx.
  const double delta = std::log1p(1 / T);
  const double c = std::sqrt(2 * M_PI) * (3 + 2 * std::sqrt(2 * M_PI) * lam / delta);
  out.M1_cap = c * T * static_cast<double>(M.size()) / lT;

  // Finite G-series: K^ vanishes for kl >= T^{2 eps}.
  const auto X = static_cast<std::uint64_t>(std::floor(std::exp(2 * p.eps * lT) * (1 + 1e-12)));
  std::vector<std::pair<double, double>> G;  // (coefficient, log k/l)
  for (std::uint64_t k = 1; k <= X; ++k)
    for (std::uint64_t l = 1; k * l <= X; ++l) {
      const double kl = static_cast<double>(k * l), w = K_hat(p, std::log(kl));
      if (w > 0) G.emplace_back(w / std::sqrt(kl), std::log(static_cast<double>(k) / static_cast<double>(l)));
    }

  auto R2 = [&](double t) {
    ComplexCompensatedSum s;
    for (std::size_t i = 0; i < H; ++i) s.add(rr[i] * cplx(std::cos(t * lh[i]), -std::sin(t * lh[i])));
    return std::norm(s.value());
  };
  auto Gt = [&](double t) {
    ComplexCompensatedSum s;
    for (auto [w, l] : G) s.add(w * cplx(std::cos(t * l), std::sin(t * l)));
    return s.value();
  };
  const double L = 10 / lam;
  const double fR = lh.back() - lh.front(), fG = std::log(static_cast<double>(std::max<std::uint64_t>(X, 1)));
  const double width = std::min(L / 4, M_PI / (1 + fR + fG));
  {
    auto [v, e] = panel_integral([&](double t) { return cplx(R2(t) * std::exp(-0.5 * std::pow(t * lam, 2))); }, L, width,
                                 tol * out.M1_closed);
    (void)e;
    out.M1 = v.real();
  }
  {
    auto [v, e] = panel_integral([&](double t) { return Gt(t) * R2(t) * std::exp(-0.5 * std::pow(t * lam, 2)); }, L,
                                 width, tol * out.M1_closed * std::max<double>(1, static_cast<double>(G.size())));
    (void)e;
    out.I1_estimate = v.real();
    out.I1_imag = v.imag();
  }
  {
    const double cut = p.eps * lT;
    CompensatedSum s;
    for (std::size_t i = 0; i < M.size(); ++i)
      for (std::size_t k = 0; k < M.size(); ++k) {
        const double l = nt::log_gcd_ratio(M[i], M[k]);
        if (l <= cut + 1e-12) s.add(std::exp(-0.5 * l));
      }
    out.gal_direct = T / lT * s.value();
  }
  out.m1_bound_holds = out.M1 <= out.M1_cap;
  return out;
}

SubsumBound subsum_bound_check(const IntegerSet& M) {
  if (M.empty()) throw DomainError("subsum bound: M must be nonempty");
  if (!M.divisor_closed()) throw DomainError("subsum bound: M must be divisor-closed");
  SubsumBound out;
  out.lhs = engine::gal_subsum(M, engine::GalExponent(1, 2));
  CompensatedSum rhs;
  bool ok = true;
  const std::uint64_t N = M.size();
  for (const auto& m : M) {
    double prod = 1, sum = 1;
    for (auto [p, e] : m.factors()) {
      const double x = 1 / std::sqrt(static_cast<double>(p));
      prod /= 1 - x;
      double geo = 1, pw = 1;
      for (std::uint32_t k = 1; k <= e; ++k) geo += (pw *= x);
      sum *= geo;  // sum_{n | m} g0(m/n) = sum_{d | m} d^{-1/2}
    }
    rhs.add(prod);
    const std::size_t omega = m.factors().size();
    // omega(m) <= log N / log 2  <=>  2^omega <= N
    if (sum > prod * (1 + 1e-12) || omega >= 64 || (std::uint64_t{1} << omega) > N) ok = false;
  }
  out.rhs = rhs.value();
  out.per_element_ok = ok;
  out.holds = out.lhs <= out.rhs * (1 + 1e-12);
  return out;
}

}  // namespace galsum::zeta
