#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "galsum/error.hpp"
#include "galsum/nt.hpp"

namespace galsum::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Brent's cycle-finding variant of Pollard rho. n odd composite.
u64 rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (n % 2 == 0) {
    out.push_back(2);
    split(n / 2, out);
    return;
  }
  u64 d = rho(n);
  split(d, out);
  split(n / d, out);
}

std::vector<PrimePower> collect(std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> f;
  for (u64 p : primes) {
    if (!f.empty() && f.back().p == p)
      ++f.back().e;
    else
      f.push_back({p, 1});
  }
  return f;
}

BigInt ipow(u64 p, std::uint32_t e) {
  BigInt r = 1, b = p;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

FactoredInt FactoredInt::from_factors(std::vector<PrimePower> factors) {
  FactoredInt out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].e == 0) throw ValidationError("FactoredInt: zero exponent");
    if (i && factors[i].p <= factors[i - 1].p)
      throw ValidationError("FactoredInt: primes must be strictly increasing");
    const auto& sp = small_primes();
    const u64 p = factors[i].p;
    if (p < sp.back() ? !std::binary_search(sp.begin(), sp.end(), p) : !is_prime(p))
      throw ValidationError("FactoredInt: " + std::to_string(p) + " is not prime");
    out.value_ *= ipow(factors[i].p, factors[i].e);
  }
  out.factors_ = std::move(factors);
  return out;
}

std::optional<std::uint64_t> FactoredInt::to_u64() const {
  if (value_ > std::numeric_limits<u64>::max()) return std::nullopt;
  return static_cast<u64>(value_);
}

double FactoredInt::log() const {
  double s = 0.0;
  for (auto [p, e] : factors_) s += e * std::log(static_cast<double>(p));
  return s;
}

double FactoredInt::to_double() const { return value_.convert_to<double>(); }

std::uint32_t FactoredInt::valuation(std::uint64_t p) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                             [](const PrimePower& a, u64 q) { return a.p < q; });
  return (it != factors_.end() && it->p == p) ? it->e : 0;
}

bool FactoredInt::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(), [](auto& f) { return f.e == 1; });
}

bool FactoredInt::divides(const FactoredInt& other) const {
  auto it = other.factors_.begin();
  for (auto [p, e] : factors_) {
    while (it != other.factors_.end() && it->p < p) ++it;
    if (it == other.factors_.end() || it->p != p || it->e < e) return false;
  }
  return true;
}

bool FactoredInt::coprime_to(const FactoredInt& other) const {
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->p == b->p) return false;
    if (a->p < b->p)
      ++a;
    else
      ++b;
  }
  return true;
}

FactoredInt FactoredInt::divided_by(const FactoredInt& d) const {
  if (!d.divides(*this)) throw DomainError("divided_by: not a divisor");
  std::vector<PrimePower> f;
  for (auto [p, e] : factors_) {
    u64 k = d.valuation(p);
    if (e > k) f.push_back({p, static_cast<std::uint32_t>(e - k)});
  }
  FactoredInt out;
  out.factors_ = std::move(f);
  out.value_ = value_ / d.value_;
  return out;
}

std::vector<FactoredInt> FactoredInt::divisors() const {
  std::vector<std::vector<PrimePower>> acc{{}};
  for (auto [p, e] : factors_) {
    std::size_t n = acc.size();
    for (std::uint32_t k = 1; k <= e; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        auto v = acc[i];
        v.push_back({p, k});
        acc.push_back(std::move(v));
      }
  }
  std::vector<FactoredInt> out;
  out.reserve(acc.size());
  for (auto& v : acc) out.push_back(from_factors(std::move(v)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string FactoredInt::str() const { return value_.str(); }

FactoredInt operator*(const FactoredInt& a, const FactoredInt& b) {
  std::vector<PrimePower> f;
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->p < j->p))
      f.push_back(*i++);
    else if (i == a.factors_.end() || j->p < i->p)
      f.push_back(*j++);
    else {
      f.push_back({i->p, i->e + j->e});
      ++i, ++j;
    }
  }
  FactoredInt out;
  out.factors_ = std::move(f);
  out.value_ = a.value_ * b.value_;
  return out;
}

double log_gcd_ratio(const FactoredInt& a, const FactoredInt& b) {
  double s = 0.0;
  auto i = a.factors().begin(), j = b.factors().begin();
  const auto ie = a.factors().end(), je = b.factors().end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->p < j->p)) {
      s += i->e * std::log(static_cast<double>(i->p));
      ++i;
    } else if (i == ie || j->p < i->p) {
      s += j->e * std::log(static_cast<double>(j->p));
      ++j;
    } else {
      const auto d = i->e > j->e ? i->e - j->e : j->e - i->e;
      if (d) s += d * std::log(static_cast<double>(i->p));
      ++i, ++j;
    }
  }
  return s;
}

FactoredInt factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<u64> primes;
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) split(n, primes);
  return FactoredInt::from_factors(collect(std::move(primes)));
}

FactoredInt factorize(const BigInt& n_in) {
  if (n_in <= 0) throw DomainError("factorize: n must be positive");
  if (n_in <= std::numeric_limits<u64>::max()) return factorize(static_cast<u64>(n_in));
  BigInt n = n_in;
  std::vector<u64> primes;
  for (u64 p : small_primes()) {
    if (n <= std::numeric_limits<u64>::max()) break;
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > std::numeric_limits<u64>::max())
    throw CapacityError("factorize: cofactor " + n.str() +
                        " exceeds 64 bits after trial division");
  if (n > 1) {
    auto rest = factorize(static_cast<u64>(n));
    for (auto [p, e] : rest.factors())
      for (std::uint32_t k = 0; k < e; ++k) primes.push_back(p);
  }
  return FactoredInt::from_factors(collect(std::move(primes)));
}

BigInt arith_fn(const FactoredInt& n, ArithFn which) {
  const auto& f = n.factors();
  BigInt r = 1;
  switch (which) {
    case ArithFn::phi:
      for (auto [p, e] : f) r *= ipow(p, e - 1) * (p - 1);
      return r;
    case ArithFn::mu:
      for (auto [p, e] : f) {
        if (e > 1) return 0;
        r = -r;
      }
      return r;
    case ArithFn::tau:
      for (auto [p, e] : f) r *= (e + 1);
      return r;
    case ArithFn::omega:
      return BigInt(f.size());
    case ArithFn::Omega: {
      u64 s = 0;
      for (auto [p, e] : f) s += e;
      return BigInt(s);
    }
    case ArithFn::squarefree_kernel:
      for (auto [p, e] : f) r *= p;
      return r;
  }
  return r;
}

std::optional<ArithFn> parse_arith_fn(const std::string& name) {
  if (name == "phi") return ArithFn::phi;
  if (name == "mu") return ArithFn::mu;
  if (name == "tau") return ArithFn::tau;
  if (name == "omega") return ArithFn::omega;
  if (name == "Omega" || name == "bigomega") return ArithFn::Omega;
  if (name == "kernel" || name == "squarefree_kernel" || name == "rad") return ArithFn::squarefree_kernel;
  return std::nullopt;
}

std::pair<FactoredInt, FactoredInt> gcd_lcm(const FactoredInt& a, const FactoredInt& b) {
  std::vector<PrimePower> g, l;
  auto i = a.factors().begin(), j = b.factors().begin();
  const auto ie = a.factors().end(), je = b.factors().end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->p < j->p))
      l.push_back(*i++);
    else if (i == ie || j->p < i->p)
      l.push_back(*j++);
    else {
      g.push_back({i->p, std::min(i->e, j->e)});
      l.push_back({i->p, std::max(i->e, j->e)});
      ++i, ++j;
    }
  }
  return {FactoredInt::from_factors(std::move(g)), FactoredInt::from_factors(std::move(l))};
}

BigInt parse_bigint(const std::string& s_in) {
  std::string s;
  for (char c : s_in)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') s += c;
  if (s.empty()) throw ValidationError("empty integer literal");
  // a^b and a*b products are accepted for convenience ("2^40*3").
  auto star = s.find('*');
  if (star != std::string::npos)
    return parse_bigint(s.substr(0, star)) * parse_bigint(s.substr(star + 1));
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    BigInt base = parse_bigint(s.substr(0, caret));
    BigInt e = parse_bigint(s.substr(caret + 1));
    if (e > 4096) throw CapacityError("exponent too large: " + s);
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])) && !(i == 0 && s[i] == '-'))
      throw ValidationError("not an integer: '" + s_in + "'");
  return BigInt(s);
}

}  // namespace galsum::nt
