#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "galsum/dirichlet.hpp"
#include "galsum/error.hpp"
#include "galsum/extremal.hpp"
#include "galsum/gal.hpp"
#include "galsum/nt.hpp"
#include "galsum/zeta.hpp"

namespace galsum::cli {

namespace {

using engine::GalExponent;
using nt::FactoredInt;
using nt::IntegerSet;

constexpr std::size_t kMaxRange = 1'000'000;

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  const BigInt v = nt::parse_bigint(s);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) throw ValidationError("integer out of range: " + s);
  return static_cast<std::uint64_t>(v);
}

// "a:b:n" -> n equally spaced points in [a, b]
std::vector<double> parse_grid(const std::string& s) {
  auto p = split(s, ":");
  if (p.size() != 3) throw ValidationError("grid must be written from:to:count");
  const double a = std::stod(p[0]), b = std::stod(p[1]);
  const auto n = parse_u64(p[2]);
  if (n == 0 || n > kMaxRange) throw ValidationError("grid count must lie in [1, 1e6]");
  std::vector<double> xs;
  for (std::uint64_t i = 0; i < n; ++i) xs.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return xs;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> v;
  for (auto& t : split(s, ",")) v.push_back(std::stod(t));
  if (v.empty()) throw ValidationError("empty list");
  return v;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s) {
  std::vector<std::uint32_t> v;
  for (auto& t : split(s, ",")) v.push_back(static_cast<std::uint32_t>(parse_u64(t)));
  return v;
}

double tol_or(const Globals& g, double dflt) {
  if (!g.tol) return dflt;
  if (!(*g.tol > 0)) throw ValidationError("--tol must be positive");
  return *g.tol;
}

struct SetOpt {
  std::string set, file;
};

void bind_set(CLI::App& c, SetOpt& o, const char* help = "comma-separated elements; a..b ranges and products like 2^3*5 allowed") {
  c.add_option("--set", o.set, help);
  c.add_option("--set-file", o.file, "file of elements (whitespace, comma or newline separated)");
}

IntegerSet load_set(const SetOpt& o) {
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw ValidationError("cannot read set file '" + o.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    for (auto& c : s)
      if (c == '\n' || c == '\r' || c == ' ' || c == '\t') c = ',';
    return parse_set(s);
  }
  if (o.set.empty()) throw ValidationError("--set or --set-file is required");
  return parse_set(o.set);
}

std::string factorization(const FactoredInt& f) {
  if (f.is_one()) return "1";
  std::string s;
  for (auto [p, e] : f.factors()) {
    if (!s.empty()) s += " * ";
    s += std::to_string(p);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Json cplx_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

template <class O, class Bind, class Run>
void add(std::vector<Command>& cmds, CLI::App& app, const char* name, const char* help, Bind bind, Run run) {
  auto o = std::make_shared<O>();
  auto* c = app.add_subcommand(name, help);
  bind(*c, *o);
  cmds.push_back({c, [o, run](const Globals& g) { return run(*o, g); }});
}

// ---------------------------------------------------------------------------
// ntcore and gal-engine

void add_nt(std::vector<Command>& cmds, CLI::App& app) {
  struct Primes {
    std::uint64_t limit = 100;
    bool count = false;
  };
  add<Primes>(
      cmds, app, "primes", "primes up to a limit",
      [](CLI::App& c, Primes& o) {
        c.add_option("--limit", o.limit, "upper bound (inclusive)")->required();
        c.add_flag("--count", o.count, "report pi(limit) only");
      },
      [](const Primes& o, const Globals&) -> Json {
        if (o.count) return Json{{"limit", o.limit}, {"pi", nt::prime_pi(o.limit)}};
        if (o.limit > 100'000'000) throw CapacityError("primes: listing is limited to 1e8; use --count");
        Json t = Json::array();
        for (auto p : nt::sieve_primes(o.limit)) t.push_back(Json{{"p", p}});
        if (t.empty()) throw EmptyRangeError("no primes up to " + std::to_string(o.limit));
        return t;
      });

  struct Factor {
    std::string n;
  };
  add<Factor>(
      cmds, app, "factor", "factorization and arithmetic functions",
      [](CLI::App& c, Factor& o) { c.add_option("--n", o.n, "positive integer (products like 2^40*3 allowed)")->required(); },
      [](const Factor& o, const Globals&) -> Json {
        const auto v = nt::parse_bigint(o.n);
        if (v < 1) throw DomainError("factor: n >= 1 required");
        const auto f = nt::factorize(v);
        Json j;
        j["n"] = big(f.value());
        j["factorization"] = factorization(f);
        using nt::ArithFn;
        j["phi"] = big(nt::arith_fn(f, ArithFn::phi));
        j["mu"] = static_cast<int>(nt::arith_fn(f, ArithFn::mu));
        j["tau"] = big(nt::arith_fn(f, ArithFn::tau));
        j["omega"] = big(nt::arith_fn(f, ArithFn::omega));
        j["Omega"] = big(nt::arith_fn(f, ArithFn::Omega));
        j["squarefree_kernel"] = big(nt::arith_fn(f, ArithFn::squarefree_kernel));
        return j;
      });

  struct Gal {
    SetOpt set;
    std::string alpha = "1/2";
    std::string algorithm = "pairwise";
  };
  add<Gal>(
      cmds, app, "galsum", "Gal sum S_alpha(M)",
      [](CLI::App& c, Gal& o) {
        bind_set(c, o.set);
        c.add_option("--alpha", o.alpha, "exponent p/q in (0, 1]");
        c.add_option("--algorithm", o.algorithm, "pairwise or phi_identity")->check(CLI::IsMember({"pairwise", "phi_identity"}));
      },
      [](const Gal& o, const Globals&) -> Json {
        const auto M = load_set(o.set);
        const auto a = GalExponent::parse(o.alpha);
        const auto algo = o.algorithm == "pairwise" ? engine::GalAlgorithm::pairwise : engine::GalAlgorithm::phi_identity;
        const double v = engine::gal_sum(M, a, algo);
        return Json{{"value", v}, {"size", M.size()}, {"ratio", v / static_cast<double>(M.size())}, {"alpha", a.str()},
                    {"algorithm", o.algorithm}};
      });

  struct Sub {
    SetOpt set;
    std::string alpha = "1/2";
  };
  add<Sub>(
      cmds, app, "galsub", "divisibility sub-sum over pairs n | m",
      [](CLI::App& c, Sub& o) {
        bind_set(c, o.set);
        c.add_option("--alpha", o.alpha, "exponent p/q in (0, 1]");
      },
      [](const Sub& o, const Globals&) -> Json {
        const auto M = load_set(o.set);
        const auto a = GalExponent::parse(o.alpha);
        return Json{{"value", engine::gal_subsum(M, a)}, {"gal_sum", engine::gal_sum(M, a)}, {"size", M.size()}};
      });

  struct Q {
    SetOpt set;
    std::string alpha = "1/2";
    std::string mode = "full";
  };
  add<Q>(
      cmds, app, "qnorm", "operator norm of the Gal matrix",
      [](CLI::App& c, Q& o) {
        bind_set(c, o.set);
        c.add_option("--alpha", o.alpha, "exponent p/q in (0, 1]");
        c.add_option("--mode", o.mode, "full or divisibility")->check(CLI::IsMember({"full", "divisibility"}));
      },
      [](const Q& o, const Globals&) -> Json {
        const auto M = load_set(o.set);
        const auto a = GalExponent::parse(o.alpha);
        const auto r = engine::quadratic_norm_detail(M, a, o.mode == "full" ? engine::NormMode::full : engine::NormMode::divisibility);
        return Json{{"value", r.value},
                    {"iterations", r.iterations},
                    {"residual", r.residual},
                    {"gal_ratio", engine::gal_sum(M, a) / static_cast<double>(M.size())}};
      });

  struct Sig {
    std::uint64_t p = 2;
    std::string nu_m, nu_n;
    std::optional<std::uint32_t> r, s;
  };
  add<Sig>(
      cmds, app, "sigma-p", "valuation-pattern sums sigma_p, sigma_p*, sigma_p+",
      [](CLI::App& c, Sig& o) {
        c.add_option("--p", o.p, "prime")->required();
        c.add_option("--nu-m", o.nu_m, "valuations of the m-side, comma separated");
        c.add_option("--nu-n", o.nu_n, "valuations of the n-side, comma separated");
        c.add_option("--r", o.r, "r for sigma_p* and sigma_p+");
        c.add_option("--s", o.s, "s for sigma_p* and sigma_p+");
      },
      [](const Sig& o, const Globals&) -> Json {
        Json j{{"p", o.p}};
        bool any = false;
        if (!o.nu_m.empty() || !o.nu_n.empty()) {
          j["sigma_p"] = engine::sigma_p(parse_u32_list(o.nu_m), parse_u32_list(o.nu_n), o.p);
          any = true;
        }
        if (o.r && o.s) {
          j["sigma_p_star"] = engine::sigma_p_star(*o.r, *o.s, o.p);
          j["sigma_p_plus"] = engine::sigma_p_plus(*o.r, *o.s, o.p);
          any = true;
        }
        if (!any) throw ValidationError("sigma-p needs --nu-m/--nu-n or --r/--s");
        return j;
      });
}

// ---------------------------------------------------------------------------
// extremal

Json construction_json(const extremal::ConstructionReport& r, bool emit_set) {
  Json j;
  j["N"] = r.params.N;
  j["u"] = r.params.u;
  j["a"] = r.params.a;
  j["gamma"] = r.params.gamma;
  j["alpha_res"] = r.params.alpha_res;
  j["squarefree"] = r.params.squarefree;
  j["L1"] = r.L1;
  j["L2"] = r.L2;
  j["L3"] = r.L3;
  j["K"] = r.K;
  j["a_eff"] = r.a_eff;
  j["cardinality"] = big(r.cardinality);
  j["gal_sum"] = r.gal_sum_value;
  j["log_gal_sum"] = r.log_gal_sum;
  j["normalized_exponent"] = r.normalized_exponent;
  j["h"] = r.h;
  j["beta"] = r.beta;
  j["product_identity_checked"] = r.product_identity_checked;
  j["product_identity_rel_err"] = r.product_identity_rel_err;
  Json w = Json::array();
  for (auto& s : r.warnings) w.push_back(s);
  j["warnings"] = w;
  Json blocks = Json::array();
  for (auto& b : r.blocks)
    blocks.push_back(Json{{"k", b.k},
                          {"lower", b.lower},
                          {"upper", b.upper},
                          {"primes", b.primes.size()},
                          {"first_prime", b.primes.empty() ? 0 : b.primes.front()},
                          {"last_prime", b.primes.empty() ? 0 : b.primes.back()},
                          {"J_formula", b.J_formula},
                          {"J_clamped", b.J_clamped},
                          {"J", b.J},
                          {"j_k", b.j_k},
                          {"N_k", big(b.N_k)},
                          {"cardinality", big(b.cardinality)},
                          {"gal_sum", b.gal_sum},
                          {"T_k", b.T_k},
                          {"V_k", big(b.V_k)},
                          {"explicit_checked", b.explicit_checked},
                          {"explicit_rel_err", b.explicit_rel_err}});
  j["blocks"] = blocks;
  if (emit_set && r.final_set) j["set"] = set_json(*r.final_set);
  return j;
}

struct ConstructOpts {
  extremal::ConstructionParams p;
  bool emit_set = false;
};

void bind_construction(CLI::App& c, extremal::ConstructionParams& p) {
  c.add_option("--N", p.N, "size bound N");
  c.add_option("--u", p.u, "interval ratio u > 1");
  c.add_option("--a", p.a, "budget parameter a");
  c.add_option("--gamma", p.gamma, "gamma in (0, 1)");
  c.add_option("--alpha-res", p.alpha_res, "resonance exponent");
  c.add_flag("--squarefree", p.squarefree, "exponents {0, 1} only (experimental)");
  c.add_option("--materialize-limit", p.materialize_limit, "build the explicit set up to this size");
  c.add_option("--verify-limit", p.verify_limit, "pairwise cross-check up to this size");
}

Json profile_json(std::uint64_t N, const extremal::ExponentProfile& p) {
  Json r = Json::array();
  for (auto x : p.r) r.push_back(x);
  Json mu = Json::array();
  for (auto [q, e] : p.mu_map) mu.push_back(Json{{"p", q}, {"mu", e}});
  return Json{{"N", N},
              {"y", p.y},
              {"lambda", p.lambda},
              {"K", p.K},
              {"r", r},
              {"C1", p.C1},
              {"C2", p.C2},
              {"C2_K", p.C2_K},
              {"B_ratio", p.B_ratio},
              {"predicted_log_gamma", p.predicted_log_gamma},
              {"D", big(p.D.value())},
              {"D_factorization", factorization(p.D)},
              {"tau_D", big(p.tau_D)},
              {"log_ratio", p.log_ratio},
              {"normalized_exponent", p.normalized_exponent},
              {"fixed_point_iterations", p.fixed_point_iterations},
              {"y_shrunk", p.y_shrunk},
              {"mu", mu}};
}

Json primorial_json(const extremal::PrimorialRow& r) {
  return Json{{"N", r.N},
              {"omega", r.omega},
              {"tau", big(r.tau)},
              {"log_ratio", r.log_ratio},
              {"lower_log", r.lower_log},
              {"upper_log", r.upper_log},
              {"normalized", r.normalized}};
}

void add_extremal(std::vector<Command>& cmds, CLI::App& app) {
  add<ConstructOpts>(
      cmds, app, "construct", "product-set construction with exact block sums",
      [](CLI::App& c, ConstructOpts& o) {
        bind_construction(c, o.p);
        c.add_flag("--emit-set", o.emit_set, "include the explicit set when materialized");
      },
      [](const ConstructOpts& o, const Globals&) -> Json {
        return construction_json(extremal::construct_extremal_set(o.p), o.emit_set);
      });

  struct Complete {
    SetOpt set;
    std::uint64_t N = 0;
  };
  add<Complete>(
      cmds, app, "complete-set", "enlarge a set to exactly N elements",
      [](CLI::App& c, Complete& o) {
        bind_set(c, o.set);
        c.add_option("--N", o.N, "target size")->required();
      },
      [](const Complete& o, const Globals&) -> Json {
        const auto M = load_set(o.set);
        const auto R = extremal::complete_set(M, o.N);
        const GalExponent h(1, 2);
        return Json{{"size", R.size()},
                    {"input_ratio", engine::gal_sum(M, h) / static_cast<double>(M.size())},
                    {"ratio", engine::gal_sum(R, h) / static_cast<double>(R.size())},
                    {"set", set_json(R)}};
      });

  struct Div {
    std::string D;
    std::string alpha = "1/2";
    bool brute = false;
  };
  add<Div>(
      cmds, app, "divisor-sum", "closed-form Gal sum of the divisors of D",
      [](CLI::App& c, Div& o) {
        c.add_option("--D", o.D, "D >= 1 (products like 2^3*3 allowed)")->required();
        c.add_option("--alpha", o.alpha, "exponent p/q in (0, 1]");
        c.add_flag("--brute", o.brute, "also sum over divisor pairs directly");
      },
      [](const Div& o, const Globals&) -> Json {
        const auto D = nt::factorize(nt::parse_bigint(o.D));
        const auto a = GalExponent::parse(o.alpha);
        const double v = extremal::divisor_set_sum(D, a);
        const auto tau = nt::arith_fn(D, nt::ArithFn::tau);
        Json j{{"D", big(D.value())}, {"factorization", factorization(D)}, {"tau", big(tau)}, {"value", v}};
        if (a == GalExponent(1, 2)) {
          const auto b = extremal::divisor_set_bounds(D);
          j["upper_exp"] = b.upper_exp;
          j["lower_sqfree"] = b.lower_sqfree;
          j["upper_sqfree"] = b.upper_sqfree;
        }
        if (o.brute) {
          if (tau > 20000) throw CapacityError("divisor-sum --brute: tau(D) <= 20000 required");
          const double bv = engine::gal_sum(extremal::divisor_set(D), a);
          j["brute"] = bv;
          j["rel_diff"] = std::abs(bv - v) / bv;
        }
        return j;
      });

  struct Prof {
    std::uint64_t N = 1'000'000;
  };
  add<Prof>(
      cmds, app, "profile", "optimal exponent profile for divisor sets",
      [](CLI::App& c, Prof& o) { c.add_option("--N", o.N, "size bound N")->required(); },
      [](const Prof& o, const Globals&) -> Json { return profile_json(o.N, extremal::optimal_profile(o.N)); });

  struct CB {
    std::uint64_t terms = 10000;
  };
  add<CB>(
      cmds, app, "constant-b", "the constant B = 4 (sum log(k+1)/r_k ...)^{1/2} with an enclosure",
      [](CLI::App& c, CB& o) { c.add_option("--terms", o.terms, "number of series terms"); },
      [](const CB& o, const Globals&) -> Json {
        const auto b = extremal::constant_B(o.terms);
        return Json{{"terms", o.terms}, {"value", b.value}, {"lower", b.lower}, {"upper", b.upper}};
      });

  struct SPS {
    double y = 100;
  };
  add<SPS>(
      cmds, app, "sqrt-prime-sum", "sum of p^{-1/2} over p <= y",
      [](CLI::App& c, SPS& o) { c.add_option("--y", o.y, "upper bound y")->required(); },
      [](const SPS& o, const Globals&) -> Json {
        const auto s = extremal::sqrt_prime_sum(o.y);
        return Json{{"y", o.y}, {"sum", s.sum}, {"ratio", s.ratio}};
      });

  struct Pred {
    SetOpt set;
  };
  add<Pred>(
      cmds, app, "predicates", "squarefree, divisor-closed, complete, strict",
      [](CLI::App& c, Pred& o) { bind_set(c, o.set); },
      [](const Pred& o, const Globals&) -> Json {
        const auto p = extremal::set_predicates(load_set(o.set));
        return Json{{"squarefree_all", p.squarefree_all},
                    {"divisor_closed", p.divisor_closed},
                    {"complete", p.complete},
                    {"strict", p.strict},
                    {"gal_bound_holds", p.gal_bound_holds}};
      });

  struct Adj {
    SetOpt set;
    std::string q;
  };
  add<Adj>(
      cmds, app, "coprime-adjust", "move a set onto primes not dividing q",
      [](CLI::App& c, Adj& o) {
        bind_set(c, o.set);
        c.add_option("--q", o.q, "modulus")->required();
      },
      [](const Adj& o, const Globals&) -> Json {
        const auto M = load_set(o.set);
        const auto R = extremal::coprime_adjust(M, nt::factorize(nt::parse_bigint(o.q)));
        const GalExponent h(1, 2);
        return Json{{"size", R.size()},
                    {"gal_sum_before", engine::gal_sum(M, h)},
                    {"gal_sum_after", engine::gal_sum(R, h)},
                    {"set", set_json(R)}};
      });

  struct Dy {
    SetOpt set;
  };
  add<Dy>(
      cmds, app, "dyadic-split", "split into dyadic blocks and keep the best",
      [](CLI::App& c, Dy& o) { bind_set(c, o.set); },
      [](const Dy& o, const Globals&) -> Json {
        const auto d = extremal::dyadic_split(load_set(o.set));
        Json rows = Json::array();
        const GalExponent h(1, 2);
        for (std::size_t i = 0; i < d.blocks.size(); ++i)
          rows.push_back(Json{{"j", d.index[i]},
                              {"size", d.blocks[i].size()},
                              {"gal_sum", engine::gal_sum(d.blocks[i], h)},
                              {"best", i == d.best}});
        return Json{{"best_j", d.index[d.best]}, {"best_sum", d.best_sum}, {"best_set", set_json(d.blocks[d.best])},
                    {"blocks", rows}};
      });

  struct GB {
    int N = 3;
    int universe = 20;
    std::string alpha = "1/2";
  };
  add<GB>(
      cmds, app, "gamma-brute", "exhaustive max of S(M)/|M| over N-subsets of [1, universe]",
      [](CLI::App& c, GB& o) {
        c.add_option("--N", o.N, "subset size (<= 6)")->required();
        c.add_option("--universe", o.universe, "largest element (<= 40)")->required();
        c.add_option("--alpha", o.alpha, "exponent p/q in (0, 1]");
      },
      [](const GB& o, const Globals&) -> Json {
        const auto r = extremal::gamma_bruteforce(o.N, o.universe, GalExponent::parse(o.alpha));
        return Json{{"value", r.value}, {"witness", set_json(r.witness)}};
      });
}

// ---------------------------------------------------------------------------
// dirichlet-lab

Json report_json(const dirichlet::ResonanceReport& r) {
  Json rows = Json::array();
  for (auto& c : r.rows)
    rows.push_back(Json{{"index", c.index}, {"parity", c.parity}, {"R_re", c.R.real()}, {"R_im", c.R.imag()}, {"value", c.value}});
  Json j{{"kind", r.kind}, {"q", r.q}};
  if (r.kind == "char_sum") j["x"] = r.x;
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  j["implied_bound"] = r.implied_bound;
  j["true_extremum"] = r.true_extremum;
  j["witness"] = r.witness;
  j["tolerance"] = r.tolerance;
  j["sound"] = r.sound;
  j["degenerate"] = r.degenerate;
  if (r.kind == "char_sum") j["w1_cap"] = r.w1_cap;
  if (r.kind == "L_half") {
    j["x_max"] = r.x_max;
    j["tail_bound"] = r.tail_bound;
  }
  j["rows"] = rows;
  return j;
}

IntegerSet auto_set(std::uint64_t q) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(q - 1, 20); ++n) v.push_back(n);
  return IntegerSet::from_values(v);
}

void add_dirichlet(std::vector<Command>& cmds, CLI::App& app) {
  struct CT {
    std::uint64_t q = 5;
    bool any = false, verify = false, values = true;
  };
  add<CT>(
      cmds, app, "char-table", "Dirichlet characters modulo q",
      [](CLI::App& c, CT& o) {
        c.add_option("--q", o.q, "modulus (prime unless --any-modulus)")->required();
        c.add_flag("--any-modulus", o.any, "allow composite q");
        c.add_flag("--verify", o.verify, "run the exhaustive invariant check");
        c.add_flag("!--no-values", o.values, "omit the value columns");
      },
      [](const CT& o, const Globals&) -> Json {
        const auto t = o.any ? dirichlet::CharacterTable::any_modulus(o.q) : dirichlet::build_character_table(o.q);
        Json j{{"q", o.q}, {"phi", t.size()}, {"exponent", t.exponent()}};
        if (t.prime_modulus()) j["generator"] = t.generator();
        std::string verified = t.prime_modulus() && o.q <= 100 ? "ok" : "skipped";
        if (o.verify) {
          if (t.size() > 2000) throw CapacityError("char-table --verify: phi(q) <= 2000 required");
          auto msg = t.verify();
          verified = msg.empty() ? "ok" : msg;
        }
        j["verified"] = verified;
        if (o.values && o.q > 2000) throw CapacityError("char-table: values for q <= 2000 only; pass --no-values");
        Json rows = Json::array();
        for (std::size_t k = 0; k < t.size(); ++k) {
          Json r{{"j", k}, {"parity", t.parity(k)}, {"primitive", t.primitive(k)}, {"conj", t.conj(k)}};
          if (o.values) {
            // chi_j(n) = e(phase / exponent), -1 for n not coprime to q
            Json ph = Json::array();
            for (std::uint64_t n = 1; n < o.q; ++n) ph.push_back(t.phase(k, static_cast<std::int64_t>(n)));
            r["phases"] = ph;
          }
          rows.push_back(r);
        }
        j["characters"] = rows;
        return j;
      });

  struct CS {
    std::uint64_t q = 5, x = 1;
    std::size_t j = 1;
    bool any = false;
  };
  add<CS>(
      cmds, app, "char-sum", "character sum S(x, chi_j)",
      [](CLI::App& c, CS& o) {
        c.add_option("--q", o.q, "modulus")->required();
        c.add_option("--j", o.j, "character index")->required();
        c.add_option("--x", o.x, "length x")->required();
        c.add_flag("--any-modulus", o.any, "allow composite q");
      },
      [](const CS& o, const Globals&) -> Json {
        const auto t = o.any ? dirichlet::CharacterTable::any_modulus(o.q) : dirichlet::build_character_table(o.q);
        if (o.j >= t.size()) throw ValidationError("--j must be below phi(q)");
        const auto s = dirichlet::character_sum(t, o.j, o.x);
        return Json{{"q", o.q}, {"j", o.j}, {"x", o.x}, {"re", s.real()}, {"im", s.imag()}, {"abs", std::abs(s)}};
      });

  struct WK {
    std::optional<double> x;
    std::string grid;
    int nu = 0;
  };
  add<WK>(
      cmds, app, "w-kernel", "smoothing kernel W_nu(x)",
      [](CLI::App& c, WK& o) {
        c.add_option("--x", o.x, "argument x >= 0");
        c.add_option("--grid", o.grid, "from:to:count");
        c.add_option("--nu", o.nu, "parity 0 or 1");
      },
      [](const WK& o, const Globals& g) -> Json {
        const double tol = tol_or(g, 1e-10);
        if (o.x) return Json{{"x", *o.x}, {"nu", o.nu}, {"W", dirichlet::w_kernel(*o.x, o.nu, tol)}};
        if (o.grid.empty()) throw ValidationError("w-kernel needs --x or --grid");
        Json t = Json::array();
        for (double x : parse_grid(o.grid)) t.push_back(Json{{"x", x}, {"W", dirichlet::w_kernel(x, o.nu, tol)}});
        return t;
      });

  struct LH {
    std::uint64_t q = 5;
    std::size_t j = 1;
  };
  add<LH>(
      cmds, app, "l-half", "|L(1/2, chi_j)|^2 by the smoothed series",
      [](CLI::App& c, LH& o) {
        c.add_option("--q", o.q, "prime modulus")->required();
        c.add_option("--j", o.j, "non-principal character index")->required();
      },
      [](const LH& o, const Globals& g) -> Json {
        const auto t = dirichlet::build_character_table(o.q);
        const auto r = dirichlet::l_half_sq(t, o.j, tol_or(g, 1e-10));
        return Json{{"q", o.q},     {"j", o.j},           {"parity", t.parity(o.j)}, {"value", r.value},
                    {"raw", r.raw}, {"imag", r.imag},     {"x_max", r.x_max},        {"x_used", r.x_used},
                    {"tail_bound", r.tail_bound}};
      });

  struct Orth {
    std::uint64_t q = 5;
    std::int64_t m = 1, n = 1;
    int nu = 0;
  };
  add<Orth>(
      cmds, app, "orthogonality", "sum over primitive characters of fixed parity of chi(m) conj chi(n)",
      [](CLI::App& c, Orth& o) {
        c.add_option("--q", o.q, "prime modulus")->required();
        c.add_option("--m", o.m, "m")->required();
        c.add_option("--n", o.n, "n")->required();
        c.add_option("--nu", o.nu, "parity 0 or 1");
      },
      [](const Orth& o, const Globals&) -> Json {
        const auto r = dirichlet::orthogonality_check(o.q, o.m, o.n, o.nu);
        return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"lhs_imag", r.lhs_imag}, {"abs_diff", std::abs(r.lhs - r.rhs)}};
      });

  struct RL {
    std::uint64_t q = 13;
    SetOpt set;
    bool auto_set = false;
  };
  add<RL>(
      cmds, app, "resonate-l", "resonance ratio for |L(1/2, chi)|^2 over even primitive characters",
      [](CLI::App& c, RL& o) {
        c.add_option("--q", o.q, "prime modulus")->required();
        bind_set(c, o.set);
        c.add_flag("--auto-set", o.auto_set, "use M = {1, ..., min(q-1, 20)}");
      },
      [](const RL& o, const Globals& g) -> Json {
        const auto M = o.auto_set ? auto_set(o.q) : load_set(o.set);
        return report_json(dirichlet::resonate_L(o.q, M, tol_or(g, 1e-10)));
      });

  struct RC {
    std::uint64_t q = 11, x = 5;
    SetOpt set;
    bool auto_set = false;
  };
  add<RC>(
      cmds, app, "resonate-charsum", "resonance ratio for |S(x, chi)| over non-principal characters",
      [](CLI::App& c, RC& o) {
        c.add_option("--q", o.q, "prime modulus")->required();
        c.add_option("--x", o.x, "sum length")->required();
        bind_set(c, o.set);
        c.add_flag("--auto-set", o.auto_set, "use M = {1, ..., min(q-1, 20)}");
      },
      [](const RC& o, const Globals&) -> Json {
        const auto M = o.auto_set ? auto_set(o.q) : load_set(o.set);
        return report_json(dirichlet::resonate_charsum(o.q, o.x, M));
      });
}

// ---------------------------------------------------------------------------
// zeta-lab

void bind_params(CLI::App& c, zeta::KernelParams& p) {
  c.add_option("--T", p.T, "T > 1");
  c.add_option("--eps", p.eps, "epsilon in (0, 1)");
  c.add_option("--beta", p.beta, "beta in [0, 1)");
}

void add_zeta(std::vector<Command>& cmds, CLI::App& app) {
  struct Z {
    double sigma = 0.5;
    std::optional<double> t;
    std::string grid;
  };
  add<Z>(
      cmds, app, "zeta", "zeta(sigma + it) by Euler-Maclaurin",
      [](CLI::App& c, Z& o) {
        c.add_option("--sigma", o.sigma, "real part");
        c.add_option("--t", o.t, "imaginary part");
        c.add_option("--grid", o.grid, "t grid from:to:count (CSV t, re, im, abs)");
      },
      [](const Z& o, const Globals& g) -> Json {
        const double tol = tol_or(g, 1e-10);
        auto one = [&](double t) {
          if (!(std::abs(t) <= 1e6)) throw DomainError("zeta: |t| <= 1e6 required");
          const auto z = zeta::zeta({o.sigma, t}, tol);
          return Json{{"t", t},
                      {"re", z.value.real()},
                      {"im", z.value.imag()},
                      {"abs", std::abs(z.value)},
                      {"remainder_bound", z.remainder_bound},
                      {"terms", z.terms}};
        };
        if (o.t) return one(*o.t);
        if (o.grid.empty()) throw ValidationError("zeta needs --t or --grid");
        Json rows = Json::array();
        for (double t : parse_grid(o.grid)) rows.push_back(one(t));
        return rows;
      });

  struct ZS {
    zeta::KernelParams p;
    double step = 0.05;
    bool emit = false;
  };
  add<ZS>(
      cmds, app, "zscan", "max |zeta(1/2 + i tau)| over T^beta <= tau <= T",
      [](CLI::App& c, ZS& o) {
        bind_params(c, o.p);
        c.add_option("--step", o.step, "grid step (<= 0.05)");
        c.add_flag("--emit-grid", o.emit, "include the scanned grid");
      },
      [](const ZS& o, const Globals& g) -> Json {
        const double tol = tol_or(g, 1e-10);
        const auto r = zeta::z_beta_max(o.p, o.step, tol);
        Json j{{"T", o.p.T}, {"beta", o.p.beta}, {"value", r.value}, {"argmax", r.argmax}, {"grid_points", r.grid_points}};
        if (o.emit) {
          Json rows = Json::array();
          const double lo = std::pow(o.p.T, o.p.beta);
          for (std::size_t k = 0; k < r.grid_points; ++k) {
            const double t = k + 1 == r.grid_points ? o.p.T : lo + static_cast<double>(k) * o.step;
            const auto z = zeta::zeta_critical(t, tol);
            rows.push_back(Json{{"t", t}, {"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
          }
          j["grid"] = rows;
        }
        return j;
      });

  struct KO {
    zeta::KernelParams p;
    std::string which = "K";
    std::optional<double> x;
    std::string grid;
    bool numeric = false;
  };
  add<KO>(
      cmds, app, "kernels", "Phi, Phi_hat, K, K_hat",
      [](CLI::App& c, KO& o) {
        bind_params(c, o.p);
        c.add_option("--which", o.which, "Phi, Phi_hat, K or K_hat");
        c.add_option("--x", o.x, "argument");
        c.add_option("--grid", o.grid, "from:to:count");
        c.add_flag("--numeric", o.numeric, "compare transforms with numeric Fourier integrals");
      },
      [](const KO& o, const Globals& g) -> Json {
        const auto which = zeta::parse_kernel(o.which);
        const double tol = tol_or(g, 1e-9);
        const bool transform = which == zeta::KernelKind::Phi_hat || which == zeta::KernelKind::K_hat;
        if (o.numeric && !transform) throw ValidationError("--numeric applies to Phi_hat and K_hat");
        auto one = [&](double x) {
          Json r{{"x", x}, {"value", zeta::kernel(o.p, which, x)}};
          if (o.numeric) {
            const auto src = which == zeta::KernelKind::Phi_hat ? zeta::KernelKind::Phi : zeta::KernelKind::K;
            const double v = zeta::fourier_numeric(o.p, src, x, tol);
            r["numeric"] = v;
            r["abs_diff"] = std::abs(v - r["value"].get<double>());
          }
          return r;
        };
        if (o.x) return one(*o.x);
        if (o.grid.empty()) throw ValidationError("kernels needs --x or --grid");
        Json rows = Json::array();
        for (double x : parse_grid(o.grid)) rows.push_back(one(x));
        return rows;
      });

  struct L53 {
    zeta::KernelParams p;
    double sigma = 0.5, t = 3;
    std::string F = "gaussian";
  };
  add<L53>(
      cmds, app, "lemma53", "shifted second-moment identity, both sides",
      [](CLI::App& c, L53& o) {
        bind_params(c, o.p);
        c.add_option("--sigma", o.sigma, "Re s in (0, 1)");
        c.add_option("--t", o.t, "Im s != 0");
        c.add_option("--F", o.F, "gaussian or K")->check(CLI::IsMember({"gaussian", "K"}));
      },
      [](const L53& o, const Globals& g) -> Json {
        const double tol = tol_or(g, 1e-6);
        const auto r = zeta::lemma53_check({o.sigma, o.t}, o.F == "K" ? zeta::TestFunction::K : zeta::TestFunction::gaussian,
                                           o.p, tol);
        return Json{{"lhs", cplx_json(r.lhs)},
                    {"rhs", cplx_json(r.rhs)},
                    {"abs_diff", r.abs_diff},
                    {"series", cplx_json(r.series)},
                    {"correction", cplx_json(r.correction)},
                    {"cutoff_U", r.cutoff_U},
                    {"lhs_error", r.lhs_error},
                    {"series_terms", r.series_terms},
                    {"within_tol", r.abs_diff < tol}};
      });

  struct Res {
    SetOpt set;
    double T = 10;
  };
  add<Res>(
      cmds, app, "resonator", "real-line resonator blocks and R(0)",
      [](CLI::App& c, Res& o) {
        bind_set(c, o.set);
        c.add_option("--T", o.T, "T > 1");
      },
      [](const Res& o, const Globals&) -> Json {
        const auto r = zeta::build_real_resonator(load_set(o.set), o.T);
        Json rows = Json::array();
        for (std::size_t i = 0; i < r.h.size(); ++i)
          rows.push_back(Json{{"j", r.block[i]}, {"h", r.h[i]}, {"weight", r.weight[i]}, {"r", r.r(i)}});
        const double R0 = r.R(0).real();
        return Json{{"T", o.T}, {"size", r.source.size()}, {"blocks_count", r.h.size()}, {"R0", R0}, {"R0_sq", R0 * R0},
                    {"blocks", rows}};
      });

  struct Mom {
    SetOpt set;
    zeta::KernelParams p;
    std::uint64_t construct_N = 0;
  };
  add<Mom>(
      cmds, app, "moment", "resonator moments M1, I1 and the direct Gal comparison",
      [](CLI::App& c, Mom& o) {
        bind_set(c, o.set);
        bind_params(c, o.p);
        c.add_option("--construct-N", o.construct_N, "use the product-set construction of this size instead of --set");
      },
      [](const Mom& o, const Globals& g) -> Json {
        IntegerSet M;
        if (o.construct_N) {
          extremal::ConstructionParams cp;
          cp.N = o.construct_N;
          cp.materialize_limit = 2000;
          auto r = extremal::construct_extremal_set(cp);
          if (!r.final_set) throw CapacityError("moment: construction is larger than 2000 elements");
          M = *r.final_set;
        } else {
          M = load_set(o.set);
        }
        const auto r = zeta::resonance_moment(M, o.p, tol_or(g, 1e-8));
        return Json{{"size", M.size()},
                    {"M1", r.M1},
                    {"M1_closed", r.M1_closed},
                    {"M1_cap", r.M1_cap},
                    {"m1_bound_holds", r.m1_bound_holds},
                    {"I1_estimate", r.I1_estimate},
                    {"I1_imag", r.I1_imag},
                    {"gal_direct", r.gal_direct},
                    {"I1_over_gal_direct", r.I1_estimate / r.gal_direct}};
      });

  struct SB {
    SetOpt set;
    std::string D;
  };
  add<SB>(
      cmds, app, "subsum-bound", "divisor-closed sub-sum against the product bound",
      [](CLI::App& c, SB& o) {
        bind_set(c, o.set);
        c.add_option("--D", o.D, "use the divisors of D");
      },
      [](const SB& o, const Globals&) -> Json {
        const auto M = o.D.empty() ? load_set(o.set) : extremal::divisor_set(nt::factorize(nt::parse_bigint(o.D)));
        const auto r = zeta::subsum_bound_check(M);
        const double S = engine::gal_sum(M, GalExponent(1, 2));
        return Json{{"size", M.size()},     {"lhs", r.lhs},          {"rhs", r.rhs},
                    {"per_element_ok", r.per_element_ok}, {"holds", r.holds}, {"gal_sum", S},
                    {"lhs_le_gal_sum", r.lhs <= S * (1 + 1e-12)}};
      });
}

// ---------------------------------------------------------------------------
// sweep

void add_sweep(std::vector<Command>& cmds, CLI::App& app) {
  struct Sw {
    std::string kind = "construction";
    std::string N;
    std::string u, gamma, fraction;
    bool squarefree = false;
    std::size_t count = 20, max_size = 50;
    std::uint64_t universe = 1000;
  };
  add<Sw>(
      cmds, app, "sweep", "parameter sweeps with one CSV row per tuple",
      [](CLI::App& c, Sw& o) {
        c.add_option("--kind", o.kind, "construction, best, primorial, profile or gal-random")
            ->check(CLI::IsMember({"construction", "best", "primorial", "profile", "gal-random"}));
        c.add_option("--N", o.N, "N values: list, a..b or 2^a..2^b");
        c.add_option("--u", o.u, "u values (construction)");
        c.add_option("--gamma", o.gamma, "gamma values (construction)");
        c.add_option("--a-fraction", o.fraction, "a gamma log u values (construction)");
        c.add_flag("--squarefree", o.squarefree, "squarefree blocks (experimental)");
        c.add_option("--count", o.count, "random sets (gal-random)");
        c.add_option("--max-size", o.max_size, "largest random set (gal-random)");
        c.add_option("--universe", o.universe, "elements drawn from [1, universe] (gal-random)");
      },
      [](const Sw& o, const Globals& g) -> Json {
        Json rows = Json::array();
        bool any_ok = false;
        if (o.kind == "gal-random") {
          if (o.count == 0 || o.max_size == 0 || o.universe < o.max_size)
            throw ValidationError("gal-random needs count > 0 and 0 < max-size <= universe");
          std::mt19937_64 rng(g.seed);
          for (std::size_t i = 0; i < o.count; ++i) {
            std::uniform_int_distribution<std::size_t> sz(1, o.max_size);
            std::uniform_int_distribution<std::uint64_t> el(1, o.universe);
            const std::size_t n = sz(rng);
            std::vector<std::uint64_t> v;
            while (v.size() < n) {
              const auto x = el(rng);
              if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
            }
            const auto M = IntegerSet::from_values(v);
            const GalExponent h(1, 2);
            const double a = engine::gal_sum(M, h), b = engine::gal_sum(M, h, engine::GalAlgorithm::phi_identity);
            const double q = engine::quadratic_norm(M, h);
            rows.push_back(Json{{"index", i},
                                {"size", n},
                                {"pairwise", a},
                                {"phi_identity", b},
                                {"rel_diff", std::abs(a - b) / a},
                                {"ratio", a / static_cast<double>(n)},
                                {"qnorm", q},
                                {"ok", true},
                                {"error", ""}});
          }
          return rows;
        }
        if (o.N.empty()) throw ValidationError("sweep needs --N");
        const auto Ns = parse_range(o.N);
        if (o.kind == "construction" || o.kind == "best") {
          extremal::SweepGrid grid;
          if (!o.u.empty()) grid.u = parse_reals(o.u);
          if (!o.gamma.empty()) grid.gamma = parse_reals(o.gamma);
          if (!o.fraction.empty()) grid.a_fraction = parse_reals(o.fraction);
          grid.squarefree = o.squarefree;
          auto res = extremal::sweep_construction(Ns, grid, g.threads);
          if (o.kind == "best") res = extremal::best_per_N(res);
          for (auto& r : res) {
            any_ok |= r.ok;
            rows.push_back(Json{{"N", r.N},
                                {"u", r.u},
                                {"a", r.a},
                                {"gamma", r.gamma},
                                {"alpha_res", r.alpha_res},
                                {"ok", r.ok},
                                {"error", r.error},
                                {"a_eff", r.a_eff},
                                {"cardinality", big(r.cardinality)},
                                {"gal_sum", r.gal_sum},
                                {"normalized_exponent", r.normalized_exponent}});
          }
        } else {
          for (auto N : Ns) {
            Json row;
            try {
              row = o.kind == "primorial" ? primorial_json(extremal::primorial_row(N)) : profile_json(N, extremal::optimal_profile(N));
              if (o.kind == "profile") row.erase("r"), row.erase("mu");
              row["ok"] = true;
              row["error"] = "";
              any_ok = true;
            } catch (const Error& e) {
              row = Json{{"N", N}, {"ok", false}, {"error", e.what()}};
            }
            rows.push_back(row);
          }
        }
        if (!any_ok) throw Error("sweep: every row failed; first error: " + rows[0]["error"].get<std::string>());
        return rows;
      });
}

}  // namespace

IntegerSet parse_set(const std::string& spec) {
  std::vector<FactoredInt> v;
  for (auto& tok : split(spec, ",;")) {
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const auto a = parse_u64(tok.substr(0, dots)), b = parse_u64(tok.substr(dots + 2));
      if (a < 1 || a > b) throw ValidationError("bad range '" + tok + "'");
      if (b - a >= kMaxRange) throw CapacityError("range '" + tok + "' is too long");
      for (auto x = a; x <= b; ++x) v.push_back(nt::factorize(x));
      continue;
    }
    const auto x = nt::parse_bigint(tok);
    if (x < 1) throw DomainError("set elements must be positive: '" + tok + "'");
    v.push_back(nt::factorize(x));
  }
  return IntegerSet(std::move(v));
}

std::vector<std::uint64_t> parse_range(const std::string& spec) {
  std::vector<std::uint64_t> out;
  for (auto& tok : split(spec, ",;")) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(tok));
      continue;
    }
    auto lo = tok.substr(0, dots), hi = tok.substr(dots + 2);
    if (lo.rfind("2^", 0) == 0 && hi.rfind("2^", 0) == 0) {
      const auto a = parse_u64(lo.substr(2)), b = parse_u64(hi.substr(2));
      if (b > 63) throw ValidationError("powers of two above 2^63");
      for (auto e = a; e <= b; ++e) out.push_back(std::uint64_t{1} << e);
      continue;
    }
    const auto a = parse_u64(lo), b = parse_u64(hi);
    if (a <= b && b - a >= kMaxRange) throw CapacityError("range '" + tok + "' is too long");
    for (auto x = a; x <= b && a <= b; ++x) out.push_back(x);
  }
  if (out.empty()) throw ValidationError("empty range '" + spec + "'");
  return out;
}

std::vector<Command> register_commands(CLI::App& app) {
  std::vector<Command> cmds;
  add_nt(cmds, app);
  add_extremal(cmds, app);
  add_dirichlet(cmds, app);
  add_zeta(cmds, app);
  add_sweep(cmds, app);
  return cmds;
}

}  // namespace galsum::cli
