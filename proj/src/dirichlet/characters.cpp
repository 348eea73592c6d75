#include <cmath>
#include <numeric>

#include "galsum/dirichlet.hpp"
#include "galsum/error.hpp"
#include "galsum/numeric.hpp"

namespace galsum::dirichlet {

namespace {

constexpr std::uint64_t kMaxModulus = 20'000'000;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Smallest primitive root modulo p^e (p odd).
std::uint64_t primitive_root(std::uint64_t p, std::uint64_t pe, std::uint64_t order) {
  std::vector<std::uint64_t> rs;
  const auto fo = nt::factorize(order);
  for (auto [r, k] : fo.factors()) rs.push_back(r);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto r : rs)
      if (powmod(g, order / r, pe) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw DomainError("no primitive root modulo " + std::to_string(pe));
}

std::int64_t mod(std::int64_t n, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(q);
  return ((n % m) + m) % m;
}

}  // namespace

CharacterTable::CharacterTable(std::uint64_t q) : q_(q) {
  if (q < 3) throw DomainError("modulus must be >= 3");
  if (q > kMaxModulus) throw CapacityError("modulus too large for a character table");
  prime_ = nt::is_prime(q);

  struct Comp {
    std::uint64_t pe, order;
    std::vector<std::uint32_t> ind;  // index by residue mod pe
  };
  std::vector<Comp> comps;
  const auto fq = nt::factorize(q);
  for (auto [p, e] : fq.factors()) {
    std::uint64_t pe = 1;
    for (std::uint32_t i = 0; i < e; ++i) pe *= p;
    if (p != 2) {
      const std::uint64_t ord = pe / p * (p - 1);
      const auto g = primitive_root(p, pe, ord);
      Comp c{pe, ord, std::vector<std::uint32_t>(pe, 0)};
      std::uint64_t x = 1;
      for (std::uint64_t k = 0; k < ord; ++k) {
        c.ind[x] = static_cast<std::uint32_t>(k);
        x = x * g % pe;
      }
      comps.push_back(std::move(c));
      gens_.push_back(g);
    } else if (e == 2) {
      Comp c{4, 2, std::vector<std::uint32_t>(4, 0)};
      c.ind[3] = 1;
      comps.push_back(std::move(c));
      gens_.push_back(3);
    } else if (e >= 3) {
      // (Z/2^e)^* = <-1> x <5>
      Comp a{pe, 2, std::vector<std::uint32_t>(pe, 0)}, b{pe, pe / 4, std::vector<std::uint32_t>(pe, 0)};
      std::uint64_t x = 1;
      for (std::uint64_t k = 0; k < pe / 4; ++k) {
        b.ind[x] = b.ind[pe - x] = static_cast<std::uint32_t>(k);
        a.ind[pe - x] = 1;
        x = x * 5 % pe;
      }
      comps.push_back(std::move(a));
      comps.push_back(std::move(b));
      gens_.push_back(pe - 1);
      gens_.push_back(5);
    }
  }

  phi_ = 1;
  L_ = 1;
  for (auto& c : comps) {
    orders_.push_back(c.order);
    phi_ *= c.order;
    L_ = std::lcm(L_, c.order);
  }
  const std::size_t r = comps.size();
  unit_.assign(q, 0);
  coords_.assign(q * r, 0);
  for (std::uint64_t n = 1; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    unit_[n] = 1;
    for (std::size_t c = 0; c < r; ++c) coords_[n * r + c] = comps[c].ind[n % comps[c].pe];
  }
  roots_.resize(L_);
  for (std::uint64_t k = 0; k < L_; ++k) {
    // reduce to [-L/2, L/2] before scaling for symmetric rounding
    const double f = (2.0 * k <= L_ ? static_cast<double>(k) : static_cast<double>(k) - L_) / L_;
    roots_[k] = {std::cos(2 * M_PI * f), std::sin(2 * M_PI * f)};
  }
  roots_[0] = 1.0;
  if (L_ % 2 == 0) roots_[L_ / 2] = -1.0;
  if (L_ % 4 == 0) {
    roots_[L_ / 4] = cplx(0, 1);
    roots_[3 * L_ / 4] = cplx(0, -1);
  }
}

CharacterTable CharacterTable::any_modulus(std::uint64_t q) { return CharacterTable(q); }

CharacterTable build_character_table(std::uint64_t q) {
  if (q < 3 || !nt::is_prime(q)) throw DomainError("character table needs a prime modulus q >= 3 (got " + std::to_string(q) + ")");
  CharacterTable t(q);
  if (q <= 100) {
    auto msg = t.verify();
    if (!msg.empty()) throw Error("character table invariant failed: " + msg);
  }
  return t;
}

std::vector<std::uint64_t> CharacterTable::digits(std::size_t j) const {
  std::vector<std::uint64_t> d(orders_.size());
  for (std::size_t c = 0; c < orders_.size(); ++c) {
    d[c] = j % orders_[c];
    j /= orders_[c];
  }
  return d;
}

std::size_t CharacterTable::from_digits(const std::vector<std::uint64_t>& d) const {
  std::size_t j = 0;
  for (std::size_t c = orders_.size(); c-- > 0;) j = j * orders_[c] + d[c];
  return j;
}

std::int64_t CharacterTable::log(std::int64_t n) const {
  const auto r = static_cast<std::uint64_t>(mod(n, q_));
  if (!unit_[r] || orders_.empty()) return unit_[r] ? 0 : -1;
  return coords_[r * orders_.size()];
}

std::int64_t CharacterTable::phase(std::size_t j, std::int64_t n) const {
  if (j >= phi_) throw DomainError("character index out of range");
  const auto r = static_cast<std::uint64_t>(mod(n, q_));
  if (!unit_[r]) return -1;
  const std::size_t nc = orders_.size();
  std::uint64_t ph = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    const std::uint64_t d = j % orders_[c];
    j /= orders_[c];
    ph = (ph + d * coords_[r * nc + c] % orders_[c] * (L_ / orders_[c])) % L_;
  }
  return static_cast<std::int64_t>(ph);
}

cplx CharacterTable::value(std::size_t j, std::int64_t n) const {
  const auto ph = phase(j, n);
  return ph < 0 ? cplx(0.0) : roots_[ph];
}

int CharacterTable::parity(std::size_t j) const { return phase(j, -1) == 0 ? 0 : 1; }

std::size_t CharacterTable::conj(std::size_t j) const {
  auto d = digits(j);
  for (std::size_t c = 0; c < d.size(); ++c) d[c] = (orders_[c] - d[c]) % orders_[c];
  return from_digits(d);
}

std::size_t CharacterTable::product(std::size_t j, std::size_t k) const {
  auto a = digits(j), b = digits(k);
  for (std::size_t c = 0; c < a.size(); ++c) a[c] = (a[c] + b[c]) % orders_[c];
  return from_digits(a);
}

bool CharacterTable::primitive(std::size_t j) const {
  if (prime_) return j != 0;
  // chi is induced from q/p iff it is trivial on units n = 1 (mod q/p).
  const auto fq = nt::factorize(q_);
  for (auto [p, e] : fq.factors()) {
    const std::uint64_t d = q_ / p;
    bool trivial = true;
    for (std::uint64_t n = 1; n < q_ && trivial; n += d)
      if (unit_[n] && phase(j, static_cast<std::int64_t>(n)) != 0) trivial = false;
    if (trivial) return false;
  }
  return true;
}

std::string CharacterTable::verify() const {
  const double tol = 1e-9;
  if (phase(0, 1) != 0) return "chi_0(1) != 1";
  for (std::uint64_t n = 1; n < q_; ++n)
    if (unit_[n] && phase(0, static_cast<std::int64_t>(n)) != 0) return "chi_0 is not principal";
  std::size_t even = 0;
  for (std::size_t j = 0; j < phi_; ++j)
    if (parity(j) == 0) ++even;
  if (2 * even != phi_) return "parity classes are unbalanced";
  for (std::size_t j = 0; j < phi_; ++j)
    for (std::size_t k = 0; k < phi_; ++k) {
      const std::size_t jk = product(j, k);
      ComplexCompensatedSum s;
      for (std::uint64_t n = 1; n < q_; ++n) {
        if (!unit_[n]) continue;
        const auto ni = static_cast<std::int64_t>(n);
        if ((phase(j, ni) + phase(k, ni)) % static_cast<std::int64_t>(L_) != phase(jk, ni))
          return "chi_j chi_k != chi_{j+k} at j=" + std::to_string(j) + " k=" + std::to_string(k);
        s.add(value(j, ni) * std::conj(value(k, ni)));
      }
      const double expect = j == k ? static_cast<double>(phi_) : 0.0;
      if (std::abs(s.value() - expect) > tol * phi_)
        return "orthogonality fails at j=" + std::to_string(j) + " k=" + std::to_string(k);
    }
  return {};
}

cplx character_sum(const CharacterTable& t, std::size_t j, std::uint64_t x) {
  const std::uint64_t q = t.modulus();
  const std::uint64_t full = x / q, rest = x % q;
  ComplexCompensatedSum s;
  // A full period contributes phi(q) for chi_0 and 0 otherwise.
  if (t.principal(j)) s.add(static_cast<double>(full) * static_cast<double>(t.size()));
  for (std::uint64_t n = 1; n <= rest; ++n) s.add(t.value(j, static_cast<std::int64_t>(n)));
  return s.value();
}

}  // namespace galsum::dirichlet
