// Command-line front end. Results go to stdout as JSON (CSV for reproduce-tables);
// progress and diagnostics go to stderr.
//
// Exit codes: 0 success, 1 negative or incomplete result, 2 usage error, 3 resource limit.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wseq/certify.hpp"
#include "wseq/json_io.hpp"
#include "wseq/montecarlo.hpp"
#include "wseq/poly.hpp"
#include "wseq/search.hpp"
#include "wseq/tables.hpp"
#include "wseq/zn.hpp"

namespace {

using namespace wseq;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void emit_error(const std::string& kind, const std::string& message) {
  std::cerr << "error: " << message << '\n';
  emit({{"error", kind}, {"message", message}});
}

// Explicit flag, then WSEQ_THREADS, then 0 (all cores).
int resolve_threads(const std::optional<int>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WSEQ_THREADS")) return std::atoi(env);
  return 0;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--k expects <a>..<b> or a single integer, got '" + text + "'");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct Common {
  std::int64_t n = 0;
  std::string set;
  int t = 0;
};

int run_verify(const Common& c) {
  const Modulus m(c.n);
  const Ordering ord(m, parse_residue_list(c.set, m));
  Json out;
  out["n"] = c.n;
  out["ordering"] = ord.sequence();
  out["partial_sums"] = partial_sums(ord).sums;
  out["class"] = to_string(classify_ordering(ord));
  out["t"] = c.t;
  const auto v = t_weak_violations(ord, c.t);
  out["violations"] = violations_json(v);
  out["t_weak"] = v.empty();
  emit(out);
  return v.empty() ? kOk : kNegative;
}

struct SearchArgs {
  std::uint64_t budget = SearchBudget{}.max_nodes;
  std::optional<std::uint64_t> time_limit_ms;
  bool low_collision = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t restarts = 64;
};

int run_search(const Common& c, const SearchArgs& a) {
  const Modulus m(c.n);
  const SubsetSpec subset(m, parse_residue_list(c.set, m));
  if (a.low_collision) {
    if (!a.seed) throw UsageError("--low-collision is randomized and requires --seed");
    const auto r = find_low_collision_ordering(subset, c.t, *a.seed, a.restarts);
    emit({{"status", r.bound_met ? "found" : "none"},
          {"ordering", r.ordering.sequence()},
          {"violations", violations_json(t_weak_violations(r.ordering, c.t))},
          {"collisions", r.violations},
          {"bound", c.t - 2},
          {"bound_met", r.bound_met},
          {"restarts_used", r.restarts_used},
          {"seed", *a.seed}});
    return r.bound_met ? kOk : kNegative;
  }
  const SearchResult r = backtracking_search(subset, c.t, {a.budget, a.time_limit_ms});
  emit(search_report(r, c.t));
  switch (r.status) {
    case SearchStatus::found: return kOk;
    case SearchStatus::none: return kNegative;
    case SearchStatus::budget_exhausted: return kResource;
  }
  return kNegative;
}

int run_construct_t3(const Common& c) {
  const Modulus m(c.n);
  const SubsetSpec subset(m, parse_residue_list(c.set, m));
  try {
    const ConstructResult r = construct_t3(subset);
    const auto v = t_weak_violations(r.ordering, 3);
    emit({{"status", v.empty() ? "found" : "invalid"},
          {"ordering", r.ordering.sequence()},
          {"violations", violations_json(v)},
          {"method", r.method}});
    return v.empty() ? kOk : kNegative;
  } catch (const InvariantError& e) {
    emit_error("invariant", e.what());
    return kNegative;
  }
}

int run_exhaust(const Common& c, const std::string& k_range, std::uint64_t budget, int threads) {
  const auto [lo, hi] = parse_k_range(k_range);
  std::cerr << "exhaust: n=" << c.n << " t=" << c.t << " k=" << lo << ".." << hi << '\n';
  const ExhaustReport rep = exhaustive_check(Modulus(c.n), c.t, lo, hi, {budget, std::nullopt}, threads);
  emit(to_json(rep));
  if (!rep.counterexamples.empty()) return kNegative;
  if (!rep.undecided_sets.empty()) return kResource;
  return kOk;
}

struct PolyArgs {
  std::string family;
  int k = 0;
  int t = 0;
  int ell = 0;
};

FactorSystem build_from(const PolyArgs& p) {
  return build_factor_system(parse_family(p.family), {p.k, p.t, p.ell});
}

int run_build(const PolyArgs& p, const std::string& dump) {
  const FactorSystem sys = build_from(p);
  if (!dump.empty()) write_file(dump, factor_dump(sys).dump(2) + "\n");
  emit({{"family", to_string(sys.family)},
        {"k", sys.params.k},
        {"t", sys.params.t},
        {"ell", sys.params.ell},
        {"num_vars", sys.num_vars},
        {"degree", system_degree(sys)}});
  return kOk;
}

CoefficientOptions coefficient_options(const std::string& method, const std::optional<int>& threads,
                                       const std::optional<std::uint64_t>& cap) {
  CoefficientOptions opts = default_coefficient_options();
  opts.method = parse_method(method);
  if (threads) opts.threads = *threads;
  if (cap) opts.memory_cap_bytes = *cap;
  return opts;
}

int run_coeff(const PolyArgs& p, const std::string& monomial, const CoefficientOptions& opts) {
  const FactorSystem sys = build_from(p);
  const Monomial target = parse_monomial(monomial);
  const auto start = std::chrono::steady_clock::now();
  const BigInt c = coefficient(sys, target, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "coeff: " << to_string(sys.family) << " degree " << sys.degree() << " in " << secs << " s\n";
  emit({{"coefficient", c.get_str()},
        {"family", to_string(sys.family)},
        {"monomial", target.exponents},
        {"degree", sys.degree()},
        {"method", to_string(opts.method)}});
  return kOk;
}

struct CertArgs {
  std::string variant = "main";
  int t = 0;
  int ell = 0;
  std::optional<int> k;
  std::optional<int> k_min;
  std::string monomial;
  std::string verify_path;
  bool recompute = false;
  std::string out;
};

int run_certify(const CertArgs& a, const CoefficientOptions& opts) {
  if (!a.verify_path.empty()) {
    const auto certs = certificates_from_json(read_json_file(a.verify_path));
    Json results = Json::array();
    bool all_ok = true;
    for (const auto& c : certs) {
      try {
        verify_certificate(c, a.recompute, opts);
        results.push_back({{"valid", true}});
      } catch (const CertificateError& e) {
        all_ok = false;
        results.push_back({{"valid", false}, {"kind", to_string(e.kind())}, {"message", e.what()}});
      }
    }
    emit({{"verified", all_ok}, {"recomputed", a.recompute}, {"results", results}});
    return all_ok ? kOk : kNegative;
  }
  if (a.k.has_value() == a.k_min.has_value()) throw UsageError("certify needs exactly one of --k or --k-min");
  if (a.monomial.empty()) throw UsageError("certify needs --monomial (or --verify <file>)");
  const KScope scope = a.k ? KScope{ScopeType::exact, *a.k} : KScope{ScopeType::at_least, *a.k_min};
  try {
    const Certificate cert =
        make_certificate(parse_variant(a.variant), a.t, a.ell, scope, parse_monomial(a.monomial), opts);
    if (!a.out.empty()) write_file(a.out, certificates_to_json({cert}).dump(2) + "\n");
    emit(to_json(cert));
    return kOk;
  } catch (const CertificateError& e) {
    emit_error(to_string(e.kind()), e.what());
    return kNegative;
  }
}

int run_theorem(const std::string& variant, int t, const std::string& path, bool recompute, int k_min,
                const CoefficientOptions& opts) {
  const auto certs = certificates_from_json(read_json_file(path));
  for (std::size_t i = 0; i < certs.size(); ++i) {
    try {
      if (recompute) std::cerr << "theorem: recomputing certificate " << i + 1 << "/" << certs.size() << '\n';
      verify_certificate(certs[i], recompute, opts);
    } catch (const CertificateError& e) {
      emit_error(to_string(e.kind()), "certificate " + std::to_string(i) + ": " + e.what());
      return kNegative;
    }
  }
  const TheoremReport rep = verify_theorem_coverage(parse_variant(variant), t, certs, k_min);
  emit(to_json(rep));
  return rep.complete() ? kOk : kNegative;
}

int run_reproduce(const std::string& variant, int t, const std::string& tier, const std::string& csv_out,
                  const std::string& certs_out, const CoefficientOptions& opts) {
  const ReproduceResult res =
      reproduce_tables(parse_variant(variant), t, parse_tier(tier), opts,
                       [](const std::string& msg) { std::cerr << "reproduce-tables: " << msg << '\n'; });
  for (const auto& r : res.rows) {
    for (const auto& m : r.mismatches) {
      std::cerr << "mismatch: table " << r.expected.table << " ell=" << r.expected.ell << " k=" << r.expected.k << ": "
                << m << '\n';
    }
  }
  const std::string csv = tables_csv(res);
  if (!certs_out.empty()) write_file(certs_out, certificates_to_json(res.certificates()).dump(2) + "\n");
  if (csv_out.empty()) {
    std::cout << csv;
  } else {
    write_file(csv_out, csv);
    emit({{"rows", res.rows.size()}, {"all_match", res.all_match()}, {"csv", csv_out}});
  }
  return res.all_match() ? kOk : kNegative;
}

struct MonteArgs {
  std::int64_t n = 0;
  int k = 0;
  int t = 0;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::string set;
};

int run_montecarlo(const MonteArgs& a, int threads) {
  if (!a.seed) throw UsageError("montecarlo is randomized and requires --seed");
  EstimateReport rep;
  if (!a.set.empty()) {
    const Modulus m(a.n);
    const SubsetSpec subset(m, parse_residue_list(a.set, m));
    rep = estimate_collision_mean(subset, a.t, a.trials, *a.seed, threads);
  } else {
    rep = estimate_failure_probability({a.n, a.k, a.t, a.trials, *a.seed}, threads);
  }
  emit(to_json(rep));
  return rep.bound_satisfied ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-weak sequencings of subsets of Z_n: verification, search and coefficient certificates"};
  app.require_subcommand(1);

  Common common;
  auto add_group = [&](CLI::App* sub, bool need_set, bool need_t) {
    sub->add_option("--n", common.n, "modulus n")->required();
    if (need_set) sub->add_option("--set", common.set, "comma-separated residues, e.g. 1,2,5,-3")->required();
    if (need_t) sub->add_option("--t", common.t, "window size t")->required();
  };

  auto* verify = app.add_subcommand("verify", "check an ordering for t-weak violations");
  add_group(verify, true, true);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "backtracking search for a t-weak sequencing");
  add_group(search, true, true);
  search->add_option("--budget", sa.budget, "node budget")->check(CLI::PositiveNumber);
  search->add_option("--time-limit-ms", sa.time_limit_ms, "wall-clock limit")->check(CLI::PositiveNumber);
  search->add_flag("--low-collision", sa.low_collision, "randomized search for an ordering with <= t-2 collisions");
  search->add_option("--seed", sa.seed, "RNG seed (required with --low-collision)");
  search->add_option("--restarts", sa.restarts, "random restarts for --low-collision")->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct-t3", "direct 3-weak sequencing construction");
  add_group(construct, true, false);

  std::string k_range;
  std::uint64_t exhaust_budget = 1'000'000;
  std::optional<int> threads;
  auto* exhaust = app.add_subcommand("exhaust", "check every k-subset of Z_n \\ {0}");
  add_group(exhaust, false, true);
  exhaust->add_option("--k", k_range, "subset sizes a..b")->required();
  exhaust->add_option("--budget", exhaust_budget, "node budget per subset")->check(CLI::PositiveNumber);
  exhaust->add_option("--threads", threads, "worker threads (0 = all cores)");

  PolyArgs pa;
  std::string dump;
  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("--family", pa.family, "F, P, Pbar, Q, Qbar, Htop or Hbartop")->required();
    sub->add_option("--k", pa.k, "number of variables for F/P/Pbar, group size for Htop/Hbartop");
    sub->add_option("--t", pa.t, "window size t");
    sub->add_option("--ell", pa.ell, "number of free variables for Q/Qbar/Htop/Hbartop");
  };
  auto* build = app.add_subcommand("build", "build a factor system and report its degree");
  add_poly(build);
  build->add_option("--dump", dump, "write the factors as JSON");

  std::string monomial, method = "auto";
  std::optional<std::uint64_t> memory_cap;
  auto add_coeff_flags = [&](CLI::App* sub) {
    sub->add_option("--method", method, "auto, baseline or interval")->check(CLI::IsMember({"auto", "baseline", "interval"}));
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    sub->add_option("--memory-cap", memory_cap, "state memory cap in bytes");
  };
  auto* coeff = app.add_subcommand("coeff", "coefficient of a monomial in a factor system");
  add_poly(coeff);
  coeff->add_option("--monomial", monomial, "comma-separated exponents")->required();
  add_coeff_flags(coeff);

  CertArgs ca;
  auto* certify = app.add_subcommand("certify", "create or verify a coefficient certificate");
  certify->add_option("--variant", ca.variant)->check(CLI::IsMember({"main", "cmpp"}));
  certify->add_option("--t", ca.t);
  certify->add_option("--ell", ca.ell);
  certify->add_option("--k", ca.k, "exact group size");
  certify->add_option("--k-min", ca.k_min, "certificate for every k >= this");
  certify->add_option("--monomial", ca.monomial);
  certify->add_option("--out", ca.out, "also write the certificate file");
  certify->add_option("--verify", ca.verify_path, "certificate file to check");
  certify->add_flag("--recompute", ca.recompute, "re-extract coefficients while verifying");
  add_coeff_flags(certify);

  std::string th_variant, certs_path;
  int th_t = 0, k_min = 13;
  bool th_recompute = false;
  auto* theorem = app.add_subcommand("theorem", "check that a certificate set covers every k >= k-min");
  theorem->add_option("--variant", th_variant)->required()->check(CLI::IsMember({"main", "cmpp"}));
  theorem->add_option("--t", th_t)->required();
  theorem->add_option("--certs", certs_path)->required();
  theorem->add_option("--k-min", k_min, "smallest k to cover (smaller k assumed)");
  theorem->add_flag("--recompute", th_recompute, "re-extract every coefficient");
  add_coeff_flags(theorem);

  std::string tier = "fast", csv_out, certs_out;
  auto* reproduce = app.add_subcommand("reproduce-tables", "recompute the published certificate tables");
  reproduce->add_option("--variant", th_variant)->required()->check(CLI::IsMember({"main", "cmpp"}));
  reproduce->add_option("--t", th_t)->required();
  reproduce->add_option("--tier", tier)->check(CLI::IsMember({"fast", "full"}));
  reproduce->add_option("--out", csv_out, "write CSV here instead of stdout");
  reproduce->add_option("--certs-out", certs_out, "write the computed certificates as JSON");
  add_coeff_flags(reproduce);

  MonteArgs ma;
  auto* monte = app.add_subcommand("montecarlo", "estimate the failure probability or collision mean");
  monte->add_option("--n", ma.n)->required();
  monte->add_option("--k", ma.k, "sample size (failure probability mode)");
  monte->add_option("--t", ma.t)->required();
  monte->add_option("--trials", ma.trials)->required()->check(CLI::PositiveNumber);
  monte->add_option("--seed", ma.seed, "RNG seed (required)");
  monte->add_option("--set", ma.set, "estimate the collision mean over orderings of this set");
  monte->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    emit({{"error", "usage"}, {"message", e.what()}});
    return kUsage;
  }

  try {
    const int th = resolve_threads(threads);
    auto copts = [&] {
      std::optional<int> t = threads;
      if (!t && std::getenv("WSEQ_THREADS")) t = th;
      return coefficient_options(method, t, memory_cap);
    };
    if (*verify) return run_verify(common);
    if (*search) return run_search(common, sa);
    if (*construct) return run_construct_t3(common);
    if (*exhaust) return run_exhaust(common, k_range, exhaust_budget, th);
    if (*build) return run_build(pa, dump);
    if (*coeff) return run_coeff(pa, monomial, copts());
    if (*certify) return run_certify(ca, copts());
    if (*theorem) return run_theorem(th_variant, th_t, certs_path, th_recompute, k_min, copts());
    if (*reproduce) return run_reproduce(th_variant, th_t, tier, csv_out, certs_out, copts());
    if (*monte) {
      if (ma.set.empty() && ma.k == 0) throw UsageError("montecarlo needs --k or --set");
      return run_montecarlo(ma, th);
    }
  } catch (const ResourceError& e) {
    emit_error("resource", e.what());
    return kResource;
  } catch (const std::invalid_argument& e) {
    emit_error("usage", e.what());
    return kUsage;
  } catch (const Json::exception& e) {
    emit_error("usage", e.what());
    return kUsage;
  } catch (const std::out_of_range& e) {
    emit_error("usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    emit_error("failure", e.what());
    return kNegative;
  }
  return kUsage;
}
