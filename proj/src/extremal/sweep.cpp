#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "galsum/extremal.hpp"

namespace galsum::extremal {

std::vector<SweepRow> sweep_construction(const std::vector<std::uint64_t>& Ns, const SweepGrid& grid,
                                         unsigned threads) {
  std::vector<SweepRow> rows;
  for (auto N : Ns)
    for (double u : grid.u)
      for (double g : grid.gamma)
        for (double f : grid.a_fraction) {
          const double a = f / (g * std::log(u));
          if (!(a > 1.0)) continue;
          SweepRow r;
          r.N = N;
          r.u = u;
          r.gamma = g;
          r.a = a;
          r.alpha_res = 1.0;
          rows.push_back(r);
        }

  // Tasks are independent; each worker writes only its own slots.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      auto& r = rows[i];
      ConstructionParams p;
      p.N = r.N;
      p.u = r.u;
      p.a = r.a;
      p.gamma = r.gamma;
      p.alpha_res = r.alpha_res;
      p.squarefree = grid.squarefree;
      p.materialize_limit = 0;
      p.verify_limit = 0;
      try {
        auto rep = construct_extremal_set(p);
        r.ok = true;
        r.a_eff = rep.a_eff;
        r.cardinality = rep.cardinality;
        r.gal_sum = rep.gal_sum_value;
        r.normalized_exponent = rep.normalized_exponent;
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(rows.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::vector<SweepRow> best_per_N(const std::vector<SweepRow>& rows) {
  std::vector<SweepRow> out;
  for (auto& r : rows) {
    if (!r.ok) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const SweepRow& b) { return b.N == r.N; });
    if (it == out.end())
      out.push_back(r);
    else if (r.normalized_exponent > it->normalized_exponent)
      *it = r;
  }
  return out;
}

}  // namespace galsum::extremal
