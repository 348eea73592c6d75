#include <cmath>

#include "galsum/error.hpp"
#include "galsum/extremal.hpp"

namespace galsum::extremal {

SetPredicates set_predicates(const IntegerSet& M) {
  if (M.empty()) throw DomainError("set_predicates: empty set");
  SetPredicates out;
  out.squarefree_all = M.squarefree_all();
  out.divisor_closed = M.divisor_closed();
  out.complete = M.complete();
  out.strict = out.divisor_closed && out.complete;

  // Prime-index bound: for every element, the primes above y = p_{floor(log N / log 2)}
  // with indices j_1 < ... < j_nu satisfy sum log(j_h / 2h) <= log N and
  // nu <= log N / log 2.
  const double logN = std::log(static_cast<double>(M.size()));
  const auto idx = static_cast<std::uint64_t>(std::floor(logN / std::log(2.0) + 1e-12));
  const std::uint64_t y = idx == 0 ? 1 : nt::nth_prime(idx);
  out.gal_bound_holds = true;
  for (auto& m : M) {
    double s = 0.0;
    int nu = 0;
    for (auto [p, e] : m.factors()) {
      if (p <= y) continue;
      ++nu;
      s += std::log(static_cast<double>(nt::prime_pi(p)) / (2.0 * nu));
    }
    if (nu > logN / std::log(2.0) + 1e-12 || s > logN + 1e-12) {
      out.gal_bound_holds = false;
      break;
    }
  }
  return out;
}

}  // namespace galsum::extremal
