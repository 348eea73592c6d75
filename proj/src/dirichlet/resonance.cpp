#include <cmath>
#include <map>
#include <numeric>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"
#include "internal.hpp"

namespace galsum::dirichlet {

namespace {

// sum_{d | (q, r)} phi(d) mu(q/d), with (q, 0) = q.
double divisor_kernel(std::uint64_t q, unsigned __int128 r) {
  const auto g = r == 0 ? q : std::gcd(q, static_cast<std::uint64_t>(r % q == 0 ? q : r % q));
  double s = 0.0;
  for (auto& d : nt::factorize(g).divisors()) {
    const auto qd = nt::factorize(q / d.to_u64().value());
    s += nt::arith_fn(d, nt::ArithFn::phi).convert_to<double>() * nt::arith_fn(qd, nt::ArithFn::mu).convert_to<double>();
  }
  return s;
}

unsigned __int128 absdiff(unsigned __int128 a, unsigned __int128 b) { return a > b ? a - b : b - a; }

void require_coprime(std::uint64_t q, std::int64_t v, const char* what) {
  const auto a = static_cast<std::uint64_t>(v < 0 ? -v : v);
  if (std::gcd(a, q) != 1)
    throw DomainError(std::string(what) + " = " + std::to_string(v) + " is not coprime to q = " + std::to_string(q));
}

std::uint64_t residue(const nt::FactoredInt& m, std::uint64_t q) {
  return static_cast<std::uint64_t>(m.value() % q);
}

}  // namespace

// ---------------------------------------------------------------------------

Orthogonality orthogonality_check(const CharacterTable& t, std::int64_t m, std::int64_t n, int nu) {
  if (nu != 0 && nu != 1) throw DomainError("nu must be 0 or 1");
  const std::uint64_t q = t.modulus();
  require_coprime(q, m, "m");
  require_coprime(q, n, "n");
  ComplexCompensatedSum s;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (t.primitive(j) && t.parity(j) == nu) s.add(t.value(j, m) * std::conj(t.value(j, n)));
  Orthogonality o;
  o.lhs = s.value().real();
  o.lhs_imag = s.value().imag();
  const __int128 diff = static_cast<__int128>(m) - n, sum = static_cast<__int128>(m) + n;
  const auto ad = static_cast<unsigned __int128>(diff < 0 ? -diff : diff);
  const auto as = static_cast<unsigned __int128>(sum < 0 ? -sum : sum);
  o.rhs = 0.5 * divisor_kernel(q, ad) + 0.5 * (nu ? -1.0 : 1.0) * divisor_kernel(q, as);
  return o;
}

Orthogonality orthogonality_check(std::uint64_t q, std::int64_t m, std::int64_t n, int nu) {
  return orthogonality_check(build_character_table(q), m, n, nu);
}

double sigma_q(std::uint64_t q, std::int64_t j, std::int64_t k, std::int64_t h, std::int64_t l) {
  for (auto [v, name] : {std::pair{j, "j"}, {k, "k"}, {h, "h"}, {l, "l"}}) {
    if (v <= 0) throw DomainError(std::string(name) + " must be positive");
    require_coprime(q, v, name);
  }
  const unsigned __int128 a = static_cast<unsigned __int128>(j) * k, b = static_cast<unsigned __int128>(h) * l;
  return divisor_kernel(q, a + b) + divisor_kernel(q, absdiff(a, b));
}

double sigma_q_table(std::uint64_t q, std::int64_t j, std::int64_t k, std::int64_t h, std::int64_t l) {
  if (!nt::is_prime(q) || q < 3) throw DomainError("sigma_q_table: odd prime q required");
  for (auto v : {j, k, h, l}) {
    if (v <= 0) throw DomainError("sigma_q_table: positive arguments required");
    require_coprime(q, v, "argument");
  }
  const unsigned __int128 a = static_cast<unsigned __int128>(j) * k, b = static_cast<unsigned __int128>(h) * l;
  const bool minus = absdiff(a, b) % q == 0, plus = (a + b) % q == 0;
  const double Q = static_cast<double>(q);
  if (minus && plus) return 2.0 * (Q - 1.0);
  if (minus || plus) return Q - 3.0;
  return -2.0;
}

// ---------------------------------------------------------------------------

double Resonator::r(std::size_t i) const { return std::sqrt(static_cast<double>(count[i])); }

std::string Resonator::check_invariants() const {
  std::uint64_t total = 0;
  for (auto c : count) total += c;
  if (total != source.size()) return "sum r(h)^2 != |M|";
  const double N = static_cast<double>(source.size());
  const double r0 = std::norm(R[0]);
  const double cap = std::min(static_cast<double>(q - 1), N) * N;
  if (r0 > cap * (1 + 1e-12)) return "|R_chi0|^2 exceeds min(q-1, N) N";
  for (std::size_t j = 1; j < R.size(); ++j)
    if (std::norm(R[j]) > r0 * (1 + 1e-12) + 1e-9) return "|R_chi|^2 exceeds |R_chi0|^2 at j=" + std::to_string(j);
  return {};
}

namespace {

// |R_chi| is computed to about |M| 1e-16; a denominator within rounding of
// zero means every R_chi vanishes.
void finish(ResonanceReport& rep, std::size_t m) {
  const double noise = static_cast<double>(rep.rows.size()) * std::pow(1e-12 * static_cast<double>(m), 2);
  rep.degenerate = !(rep.denominator > noise);
  rep.implied_bound = rep.degenerate ? 0.0 : std::sqrt(rep.numerator / rep.denominator);
}

}  // namespace

Resonator build_resonator(const CharacterTable& t, const IntegerSet& M) {
  if (M.empty()) throw DomainError("resonator: empty set");
  Resonator res;
  res.q = t.modulus();
  res.source = M;
  std::map<std::uint64_t, std::uint64_t> cnt;
  for (auto& m : M) {
    const auto h = residue(m, res.q);
    if (std::gcd(h, res.q) != 1)
      throw DomainError("element " + m.str() + " is not coprime to q = " + std::to_string(res.q) +
                        " (apply coprime-adjust first)");
    ++cnt[h];
  }
  for (auto [h, c] : cnt) {
    res.H.push_back(h);
    res.count.push_back(c);
  }
  res.R.resize(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    ComplexCompensatedSum s;
    for (std::size_t i = 0; i < res.H.size(); ++i) s.add(res.r(i) * t.value(j, static_cast<std::int64_t>(res.H[i])));
    res.R[j] = s.value();
  }
  return res;
}

ResonanceReport resonate_L(std::uint64_t q, const IntegerSet& M, double tol) {
  const auto t = build_character_table(q);
  const auto res = build_resonator(t, M);
  if (auto msg = res.check_invariants(); !msg.empty()) throw Error("resonator invariant failed: " + msg);

  const auto n0 = std::min(detail::effective_cutoff(q, 0, tol * 1e-3), l_half_truncation(q, tol));
  const auto W = w_table(q, 0, n0, tol);
  ResonanceReport rep;
  rep.kind = "L_half";
  rep.q = q;
  rep.tolerance = 1e-9;
  CompensatedSum v1, v2;
  bool any = false;
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (t.parity(j) != 0 || !t.primitive(j)) continue;
    any = true;
    const auto L = detail::l_half_sq_with(t, j, tol, W, n0);
    const double R2 = std::norm(res.R[j]);
    v1.add(R2);
    v2.add(R2 * L.value);
    rep.x_max = L.x_max;
    rep.tail_bound = L.tail_bound;
    rep.rows.push_back({j, 0, res.R[j], L.value});
    const double a = std::sqrt(L.value);
    if (a > rep.true_extremum || rep.rows.size() == 1) {
      rep.true_extremum = a;
      rep.witness = j;
    }
  }
  if (!any) throw DomainError("no even primitive character modulo " + std::to_string(q));
  rep.numerator = v2.value();
  rep.denominator = v1.value();
  finish(rep, M.size());
  rep.sound = rep.implied_bound <= rep.true_extremum * (1 + rep.tolerance) + rep.tolerance;
  return rep;
}

ResonanceReport resonate_charsum(std::uint64_t q, std::uint64_t x, const IntegerSet& M) {
  if (q < 3) throw DomainError("resonate_charsum: q >= 3 required");
  if (x < 1) throw DomainError("resonate_charsum: x >= 1 required");
  const auto t = CharacterTable::any_modulus(q);
  if (t.size() > 10'000) throw CapacityError("resonate_charsum: phi(q) above 10^4");
  const auto res = build_resonator(t, M);

  ResonanceReport rep;
  rep.kind = "char_sum";
  rep.q = q;
  rep.x = x;
  rep.tolerance = 1e-9;
  CompensatedSum w1, w2;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double S = std::abs(character_sum(t, j, x));
    const double R2 = std::norm(res.R[j]);
    w1.add(R2);
    w2.add(R2 * S * S);
    rep.rows.push_back({j, t.parity(j), res.R[j], S});
    if (S > rep.true_extremum || rep.rows.size() == 1) {
      rep.true_extremum = S;
      rep.witness = j;
    }
  }
  rep.numerator = w2.value();
  rep.denominator = w1.value();
  rep.w1_cap = static_cast<double>(t.size()) * static_cast<double>(M.size());
  if (rep.denominator > rep.w1_cap * (1 + 1e-12)) throw Error("W1 exceeds phi(q)|M|");
  finish(rep, M.size());
  rep.sound = rep.implied_bound <= rep.true_extremum * (1 + rep.tolerance) + rep.tolerance;
  return rep;
}

double v2_direct(const CharacterTable& t, const Resonator& res, std::uint64_t x_max, double tol) {
  const auto W = w_table(t.modulus(), 0, x_max, tol);
  CompensatedSum v2;
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (t.parity(j) != 0 || !t.primitive(j)) continue;
    v2.add(std::norm(res.R[j]) * detail::half_line_series(t, j, W, x_max).real());
  }
  return v2.value();
}

double v2_expansion(const CharacterTable& t, const Resonator& res, std::uint64_t x_max, double tol) {
  if (!t.prime_modulus()) throw DomainError("v2_expansion: prime modulus required");
  const std::uint64_t q = t.modulus();
  const auto W = w_table(q, 0, x_max, tol);
  // c[a][b] = sum_{kl <= X, (kl,q)=1} W(pi kl/q)/sqrt(kl) sigma_q(a,k,b,l)
  CompensatedSum total;
  for (std::size_t a = 0; a < res.H.size(); ++a)
    for (std::size_t b = 0; b < res.H.size(); ++b) {
      CompensatedSum s;
      for (std::uint64_t k = 1; k <= x_max; ++k) {
        if (k % q == 0) continue;
        for (std::uint64_t l = 1; k * l <= x_max; ++l) {
          if (l % q == 0) continue;
          const std::uint64_t n = k * l;
          const double sig = sigma_q_table(q, static_cast<std::int64_t>(res.H[a]), static_cast<std::int64_t>(k),
                                           static_cast<std::int64_t>(res.H[b]), static_cast<std::int64_t>(l));
          s.add(W[n] / std::sqrt(static_cast<double>(n)) * sig);
        }
      }
      total.add(res.r(a) * res.r(b) * s.value());
    }
  return total.value();
}

}  // namespace galsum::dirichlet
