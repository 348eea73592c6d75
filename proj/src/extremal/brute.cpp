#include <cmath>
#include <limits>

#include "galsum/error.hpp"
#include "galsum/extremal.hpp"

namespace galsum::extremal {

BruteResult gamma_bruteforce(int N, int universe_max, GalExponent alpha) {
  if (N < 1 || N > 6) throw CapacityError("gamma_bruteforce: N must lie in [1, 6]");
  if (universe_max < N || universe_max > 40)
    throw CapacityError("gamma_bruteforce: universe_max must lie in [N, 40]");
  const int U = universe_max;
  std::vector<FactoredInt> f(U + 1);
  for (int n = 1; n <= U; ++n) f[n] = nt::factorize(static_cast<std::uint64_t>(n));
  // w[m][n] = ((m,n)/[m,n])^alpha, doubled off the diagonal
  std::vector<std::vector<double>> w(U + 1, std::vector<double>(U + 1, 0.0));
  for (int m = 1; m <= U; ++m)
    for (int n = 1; n <= U; ++n)
      w[m][n] = (m == n ? 1.0 : 2.0) * std::exp(-alpha.value() * nt::log_gcd_ratio(f[m], f[n]));

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick, best_pick;
  auto rec = [&](auto&& self, int start, double s) -> void {
    if (static_cast<int>(pick.size()) == N) {
      if (s > best * (1 + 1e-14)) {
        best = s;
        best_pick = pick;
      }
      return;
    }
    for (int n = start; n <= U - (N - static_cast<int>(pick.size())) + 1; ++n) {
      double add = w[n][n];
      for (int m : pick) add += w[m][n];
      pick.push_back(n);
      self(self, n + 1, s + add);
      pick.pop_back();
    }
  };
  rec(rec, 1, 0.0);

  std::vector<FactoredInt> wit;
  for (int n : best_pick) wit.push_back(f[n]);
  return {best / N, IntegerSet(std::move(wit))};
}

}  // namespace galsum::extremal
