#pragma once

#include <cmath>
#include <vector>

#include "galsum/nt.hpp"

namespace galsum::engine::detail {

// Flattened factorizations with cached log p, for tight pairwise loops.
struct Prepared {
  struct Row {
    std::vector<std::uint64_t> p;
    std::vector<std::uint32_t> e;
    std::vector<double> logp;
  };
  std::vector<Row> rows;

  explicit Prepared(const nt::IntegerSet& M) {
    rows.reserve(M.size());
    for (auto& m : M) {
      Row r;
      for (auto [p, e] : m.factors()) {
        r.p.push_back(p);
        r.e.push_back(e);
        r.logp.push_back(std::log(static_cast<double>(p)));
      }
      rows.push_back(std::move(r));
    }
  }

  // log([a,b]/(a,b))
  double log_ratio(std::size_t i, std::size_t j) const {
    const Row& a = rows[i];
    const Row& b = rows[j];
    std::size_t x = 0, y = 0;
    double s = 0.0;
    while (x < a.p.size() || y < b.p.size()) {
      if (y == b.p.size() || (x < a.p.size() && a.p[x] < b.p[y])) {
        s += a.e[x] * a.logp[x];
        ++x;
      } else if (x == a.p.size() || b.p[y] < a.p[x]) {
        s += b.e[y] * b.logp[y];
        ++y;
      } else {
        const std::uint32_t d = a.e[x] > b.e[y] ? a.e[x] - b.e[y] : b.e[y] - a.e[x];
        s += d * a.logp[x];
        ++x, ++y;
      }
    }
    return s;
  }

  // true iff rows[i] divides rows[j]
  bool divides(std::size_t i, std::size_t j) const {
    const Row& a = rows[i];
    const Row& b = rows[j];
    std::size_t y = 0;
    for (std::size_t x = 0; x < a.p.size(); ++x) {
      while (y < b.p.size() && b.p[y] < a.p[x]) ++y;
      if (y == b.p.size() || b.p[y] != a.p[x] || b.e[y] < a.e[x]) return false;
    }
    return true;
  }
};

}  // namespace galsum::engine::detail
