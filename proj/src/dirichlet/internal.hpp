#pragma once

#include "galsum/dirichlet.hpp"

namespace galsum::dirichlet::detail {

// Smallest n0 such that the series terms with kl > n0 are bounded by `budget`
// (using d(n) <= 2 sqrt(n) and the exponential majorant of W_nu).
std::uint64_t effective_cutoff(std::uint64_t q, int nu, double budget);
double series_tail(std::uint64_t q, int nu, std::uint64_t n0);

// 2 sum_{n <= n_max} W[n]/sqrt(n) sum_{kl = n} chi(k) conj(chi)(l)
cplx half_line_series(const CharacterTable& t, std::size_t j, const std::vector<double>& W,
                      std::uint64_t n_max);

LHalf l_half_sq_with(const CharacterTable& t, std::size_t j, double tol, const std::vector<double>& W,
                     std::uint64_t x_used);

}  // namespace galsum::dirichlet::detail
