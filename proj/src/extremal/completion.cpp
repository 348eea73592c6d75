#include <algorithm>
#include <set>

#include "galsum/error.hpp"
#include "galsum/extremal.hpp"

namespace galsum::extremal {

namespace {

std::set<std::uint64_t> primes_in(const IntegerSet& M) {
  std::set<std::uint64_t> s;
  for (auto& m : M)
    for (auto [p, e] : m.factors()) s.insert(p);
  return s;
}

// Smallest primes outside `used`, in ascending order.
std::vector<std::uint64_t> fresh_primes(const std::set<std::uint64_t>& used, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t p = 1;
  while (out.size() < count) {
    p = nt::next_prime(p);
    if (!used.count(p)) out.push_back(p);
  }
  return out;
}

}  // namespace

IntegerSet complete_set(const IntegerSet& M, std::uint64_t N) {
  if (M.empty()) throw DomainError("complete_set: empty input");
  if (M.size() > N) throw DomainError("complete_set: |M| > N");
  if (M.size() == N) return M;

  auto used = primes_in(M);
  std::vector<FactoredInt> cur(M.begin(), M.end());
  // Double through k fresh primes while 2^k |M| <= N, so that the result
  // lands in [N/2, N] and S/|M| does not drop.
  std::size_t k = 0;
  while ((cur.size() << (k + 1)) <= N) ++k;
  auto P = fresh_primes(used, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const auto q = FactoredInt::prime(P[i]);
    const std::size_t n = cur.size();
    for (std::size_t j = 0; j < n; ++j) cur.push_back(cur[j] * q);
    used.insert(P[i]);
  }
  std::sort(cur.begin(), cur.end());
  // Pad with m * p' for one more fresh prime p'; |cur| >= N/2 leaves room.
  const auto pad = FactoredInt::prime(P[k]);
  const std::size_t missing = N - cur.size();
  for (std::size_t j = 0; j < missing; ++j) cur.push_back(cur[j] * pad);
  return IntegerSet(std::move(cur));
}

IntegerSet coprime_adjust(const IntegerSet& M, const FactoredInt& q) {
  if (M.empty()) throw DomainError("coprime_adjust: empty input");
  auto used = primes_in(M);
  std::vector<std::uint64_t> bad;  // primes of q that occur in M, ascending
  for (auto [l, e] : q.factors())
    if (used.count(l)) bad.push_back(l);
  if (bad.empty()) return M;

  std::set<std::uint64_t> excluded = used;
  for (auto [l, e] : q.factors()) excluded.insert(l);
  auto fresh = fresh_primes(excluded, bad.size());
  for (std::size_t j = 0; j < bad.size(); ++j)
    if (fresh[j] >= bad[j])
      throw CapacityError("coprime_adjust: no fresh prime below " + std::to_string(bad[j]) +
                          " available (need " + std::to_string(bad.size()) + ")");

  std::vector<FactoredInt> out;
  out.reserve(M.size());
  for (auto& m : M) {
    std::vector<nt::PrimePower> f;
    for (auto pe : m.factors()) {
      auto it = std::find(bad.begin(), bad.end(), pe.p);
      if (it != bad.end()) pe.p = fresh[it - bad.begin()];
      f.push_back(pe);
    }
    std::sort(f.begin(), f.end(), [](auto& x, auto& y) { return x.p < y.p; });
    out.push_back(FactoredInt::from_factors(std::move(f)));
  }
  return IntegerSet(std::move(out));
}

DyadicSplit dyadic_split(const IntegerSet& M) {
  if (M.empty()) throw DomainError("dyadic_split: empty input");
  DyadicSplit out;
  std::vector<FactoredInt> cur;
  int cur_j = 0;
  auto flush = [&] {
    if (cur.empty()) return;
    out.index.push_back(cur_j);
    out.blocks.emplace_back(std::move(cur));
    cur.clear();
  };
  for (auto& m : M) {
    // m in ]2^j, 2^{j+1}]  <=>  j = msb(m - 1); m = 1 sits in ]1/2, 1].
    const int j = m.value() == 1 ? -1 : static_cast<int>(boost::multiprecision::msb(BigInt(m.value() - 1)));
    if (!cur.empty() && j != cur_j) flush();
    cur_j = j;
    cur.push_back(m);
  }
  flush();
  out.best_sum = -1.0;
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    const double s = engine::gal_sum(out.blocks[i], GalExponent(1, 2));
    if (s > out.best_sum) {
      out.best_sum = s;
      out.best = i;
    }
  }
  return out;
}

}  // namespace galsum::extremal
