#include "mls/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "mls/bench.hpp"
#include "mls/driver.hpp"
#include "mls/enumerate.hpp"
#include "mls/error.hpp"
#include "mls/family.hpp"
#include "mls/permissive.hpp"
#include "mls/problems/registry.hpp"
#include "mls/sampling.hpp"

namespace mls {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used == text.size() && text.find('-') == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidParams, "bad " + what + " '" + text + "'");
}

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::InvalidParams, "range must look like A..B, got '" + text + "'");
  return {static_cast<int>(parse_u64(text.substr(0, dots), "range start")),
          static_cast<int>(parse_u64(text.substr(dots + 2), "range end"))};
}

std::string names_of(const UniverseInfo& u, ElementSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int e) {
    if (!first) out += ',';
    out += u.name(e);
    first = false;
  });
  return out + "}";
}

Json one_based(ElementSet s) {
  Json arr = Json::array();
  s.for_each([&](int e) { arr.push_back(e + 1); });
  return arr;
}

std::string rate_base(const Rational& c) { return to_fixed(Rational(2) - Rational(1) / c, 4); }

// Output either to a file or to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct SolveArgs {
  std::string problem;
  std::string in;
  int k = -1;
  bool minimize = false;
  std::string mode = "det";
  std::string seed;
  std::string c;
  bool permissive = false;
  bool decision_only = false;
  bool json = false;
  int threads = 1;
};

int cmd_solve(const SolveArgs& a, const std::string& command, std::ostream& out, std::ostream& err) {
  if (a.minimize == (a.k >= 0)) throw Error(ErrorCode::InvalidParams, "give exactly one of --k and --minimize");
  if (a.decision_only && !a.permissive) throw Error(ErrorCode::InvalidParams, "--decision-only needs --permissive");
  const ProblemKind kind = parse_problem_kind(a.problem);
  const std::string text = read_file(a.in);
  std::shared_ptr<const ImplicitSetSystem> sys = load_system(kind, text);

  const Rational native_c = sys->contract().extension_base;
  bool hypothetical = false;
  if (!a.c.empty()) {
    const Rational c = parse_rational(a.c);
    hypothetical = c != native_c;
    sys = std::make_shared<ContractOverride>(sys, c);
  }
  const Rational c = sys->contract().extension_base;

  const bool randomized = a.mode == "rand";
  const bool needs_seed = randomized || a.permissive;
  std::optional<std::uint64_t> seed;
  if (!a.seed.empty()) seed = parse_u64(a.seed, "seed");
  if (!seed && needs_seed) {
    seed = draw_seed();
    err << "seed: " << *seed << '\n';
  }
  if (a.permissive) sys = std::make_shared<PermissiveAdapter>(sys, !a.decision_only, *seed);

  DriverMode mode = randomized ? DriverMode{Randomized{*seed}} : DriverMode{Deterministic{}};
  FamilySource families;
  SearchOptions options{a.threads, true};
  SearchResult r;
  if (a.minimize) {
    try {
      r = minimize(*sys, mode, families, options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSolution) throw;
      r = SearchResult{};
      r.k = sys->n();
    }
  } else {
    r = search(*sys, mode, a.k, families, options);
  }

  const double wall_ms = std::chrono::duration<double, std::milli>(r.elapsed).count();
  if (a.json) {
    Json report;
    report["report_version"] = 1;
    report["command"] = command;
    report["problem"] = to_string(kind);
    report["instance_digest"] = hex64(fnv1a64(text));
    report["n"] = sys->n();
    report["mode"] = randomized ? "rand" : "det";
    report["oracle_mode"] = a.permissive ? (a.decision_only ? "permissive-decision" : "permissive") : "strict";
    report["minimize"] = a.minimize;
    report["decision"] = to_string(r.decision);
    report["witness"] = r.witness ? one_based(*r.witness) : Json(nullptr);
    report["k"] = r.k;
    report["oracle_calls"] = r.oracle_calls;
    report["branch_nodes"] = r.branch_nodes;
    Json schedule = Json::array();
    for (const SplitPlan& p : r.schedule.plans) {
      schedule.push_back({{"k_prime", p.target_size},
                          {"t", p.split},
                          {"success_prob", to_string(p.success_prob)},
                          {"repetitions", p.repetitions.str()},
                          {"calls", r.calls_per_plan[static_cast<std::size_t>(p.target_size)]}});
    }
    report["schedule"] = schedule;
    report["wall_time_ms"] = wall_ms;
    report["seed"] = seed ? Json(*seed) : Json(nullptr);
    report["c"] = to_string(c);
    report["rate_base"] = rate_base(c);
    report["hypothetical_oracle"] = hypothetical;
    out << report.dump(2) << '\n';
  } else {
    out << "problem: " << sys->kind() << " (n = " << sys->n() << ")\n";
    out << "decision: " << to_string(r.decision) << '\n';
    out << "k: " << r.k << '\n';
    if (r.witness) out << "witness: " << names_of(sys->universe(), *r.witness) << '\n';
    out << "oracle_calls: " << r.oracle_calls << '\n';
    out << "branch_nodes: " << r.branch_nodes << '\n';
    out << "c: " << to_string(c) << (hypothetical ? " (hypothetical oracle, schedule only)" : "") << '\n';
    out << "rate_base: " << rate_base(c) << '\n';
    if (seed) out << "seed: " << *seed << '\n';
    out << "wall_time_ms: " << std::fixed << std::setprecision(3) << wall_ms << '\n';
  }
  return r.yes() ? kExitYes : kExitNo;
}

struct EnumerateArgs {
  std::string problem;
  std::string in;
  std::string mode = "det";
  std::string seed;
  bool names = false;
  std::string out;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  const auto sys = load_system(parse_problem_kind(a.problem), read_file(a.in));
  DriverMode mode = Deterministic{};
  if (a.mode == "rand") {
    std::uint64_t seed = a.seed.empty() ? draw_seed() : parse_u64(a.seed, "seed");
    if (a.seed.empty()) err << "seed: " << seed << '\n';
    mode = Randomized{seed};
  }
  FamilySource families;
  EnumerationStats stats;
  const auto sets = enumerate_all_sorted(*sys, mode, families, &stats);
  Sink sink(a.out, out);
  for (ElementSet s : sets) *sink << (a.names ? names_of(sys->universe(), s) : s.to_hex()) << '\n';
  err << sets.size() << " minimal sets, " << stats.slices << " slices, " << stats.duplicates << " duplicates suppressed\n";
  return kExitYes;
}

struct FamilyArgs {
  int n = 0;
  int p = 0;
  int q = 0;
  std::string construction = "bucketed";
  bool no_fallback = false;
  bool verify = false;
  std::string out;
  std::string in;  // verify covering only
  std::uint64_t samples = kDefaultCoverageSamples;
  bool exhaustive = false;
  bool sampled = false;
};

SetInclusionFamily build_family(const FamilyArgs& a) {
  switch (parse_construction(a.construction)) {
    case Construction::Greedy: return build_greedy(a.n, a.p, a.q);
    case Construction::Exhaustive: return build_exhaustive(a.n, a.p, a.q);
    case Construction::Bucketed: return build_bucketed(a.n, a.p, a.q, {!a.no_fallback});
  }
  throw Error(ErrorCode::InvalidParams, "unknown construction");
}

int report_covering(const SetInclusionFamily& fam, const FamilyArgs& a, std::ostream& out) {
  const bool exhaustive = a.exhaustive || (!a.sampled && fam.n <= kGreedyCap);
  const CoverageResult res = verify_covering(fam, exhaustive, 0x5eedf00dULL, a.samples);
  out << "covering: " << (res.covered ? "pass" : "fail") << " (" << res.checked << " " << fam.p << "-sets checked, "
      << (exhaustive ? "exhaustive" : "sampled") << ")\n";
  if (res.missing) out << "missing: " << res.missing->to_hex() << '\n';
  return res.covered ? kExitYes : kExitNo;
}

int cmd_family(const FamilyArgs& a, std::ostream& out, std::ostream& err) {
  const SetInclusionFamily fam = build_family(a);
  if (a.out.empty()) {
    write_family(out, fam);
  } else {
    Sink sink(a.out, out);
    write_family(*sink, fam);
  }
  std::ostream& info = a.out.empty() ? err : out;
  info << "family (" << fam.n << "," << fam.p << "," << fam.q << "): " << fam.size() << " members, "
       << to_string(fam.construction) << ", kappa " << to_string(kappa(fam.n, fam.p, fam.q)) << '\n';
  return a.verify ? report_covering(fam, a, info) : kExitYes;
}

int cmd_verify_covering(const FamilyArgs& a, std::ostream& out) {
  SetInclusionFamily fam;
  if (!a.in.empty()) {
    std::istringstream in(read_file(a.in));
    fam = read_family(in, parse_construction(a.construction));
  } else {
    fam = build_family(a);
  }
  out << "family (" << fam.n << "," << fam.p << "," << fam.q << "): " << fam.size() << " members\n";
  return report_covering(fam, a, out);
}

struct CheckArgs {
  std::string problem;
  std::string in;
  int n_min = 1;
  int n_max = 8;
  int trials = 10;
  std::string seed;
  std::string c;
};

template <class Check>
int run_checks(const CheckArgs& a, const std::string& label, std::ostream& out, std::ostream& err, const Check& check) {
  const ProblemKind kind = parse_problem_kind(a.problem);
  std::vector<std::pair<std::string, std::shared_ptr<const ImplicitSetSystem>>> systems;
  if (!a.in.empty()) {
    systems.emplace_back(a.in, load_system(kind, read_file(a.in)));
  } else {
    if (a.n_min < 1 || a.n_max < a.n_min || a.trials < 1)
      throw Error(ErrorCode::InvalidParams, "need 1 <= --n-min <= --n-max and --trials >= 1");
    const std::uint64_t seed = a.seed.empty() ? draw_seed() : parse_u64(a.seed, "seed");
    if (a.seed.empty()) err << "seed: " << seed << '\n';
    for (int n = a.n_min; n <= a.n_max; ++n) {
      gen::Rng rng(mix64(seed ^ static_cast<std::uint64_t>(n)));
      for (int t = 0; t < a.trials; ++t)
        systems.emplace_back("n=" + std::to_string(n) + " trial " + std::to_string(t), random_system(kind, n, rng));
    }
  }
  bool passed = true;
  double worst = 0;
  for (const auto& [name, sys] : systems) {
    const Rational c = a.c.empty() ? sys->contract().uniformity_constant.value_or(sys->contract().extension_base)
                                   : parse_rational(a.c);
    auto [ok, ratio, detail] = check(*sys, c);
    worst = std::max(worst, ratio);
    if (!ok && passed) out << "counterexample: " << name << ": " << detail << '\n';
    passed = passed && ok;
  }
  out << label << ": " << (passed ? "pass" : "fail") << " (" << systems.size() << " instances, max ratio " << std::setprecision(6)
      << worst << ")\n";
  return passed ? kExitYes : kExitNo;
}

int cmd_verify_uniformity(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  return run_checks(a, "uniformity", out, err, [](const ImplicitSetSystem& sys, const Rational& c) {
    const UniformityReport r = check_uniformity(sys, c);
    std::string detail;
    if (r.first_violation)
      detail = "X=" + names_of(sys.universe(), r.first_violation->base) + " k=" + std::to_string(r.first_violation->k) +
               " slice size " + std::to_string(r.first_violation->slice_size);
    return std::make_tuple(r.passed, r.max_ratio, detail);
  });
}

int cmd_verify_counting(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  return run_checks(a, "counting", out, err, [](const ImplicitSetSystem& sys, const Rational& c) {
    const CountingReport r = check_counting_bound(sys, c);
    std::string detail = "total " + std::to_string(r.total) + " exceeds " + to_fixed(r.bound, 3);
    return std::make_tuple(r.passed, r.ratio, detail);
  });
}

struct BenchArgs {
  std::string suite;
  std::string problem = "tour";
  std::string range;
  int trials = 1;
  std::string seed;
  std::string c;
  std::string out;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const ProblemKind kind = parse_problem_kind(a.problem);
  const auto [lo, hi] = parse_range(a.range);
  const std::uint64_t seed = a.seed.empty() ? draw_seed() : parse_u64(a.seed, "seed");
  if (a.seed.empty()) err << "seed: " << seed << '\n';
  std::optional<Rational> c;
  if (!a.c.empty()) c = parse_rational(a.c);
  Sink csv(a.out, out);
  std::ostream& info = a.out.empty() ? err : out;

  if (a.suite == "rates") {
    FamilySource families;
    const RateFit fit = bench_rates(kind, lo, hi, a.trials, seed, c, families);
    *csv << "n,calls,predicted,log2_calls,mean_branch_nodes\n";
    for (const RatePoint& p : fit.points)
      *csv << p.n << ',' << p.calls << ',' << p.predicted << ',' << std::log2(static_cast<double>(p.calls)) << ','
           << p.mean_branch_nodes << '\n';
    const double lo_ok = fit.target - 0.30, hi_ok = fit.target + 0.45;
    const bool ok = fit.points.size() >= 2 && fit.slope >= lo_ok && fit.slope <= hi_ok;
    info << std::fixed << std::setprecision(4) << "slope " << fit.slope << ", log2(2-1/c) = " << fit.target << ", window ["
         << lo_ok << ", " << hi_ok << "]: " << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitYes : kExitNo;
  }
  if (a.suite == "schedule") {
    const auto rows = bench_schedule(kind, lo, hi, a.trials, seed, c);
    *csv << "n,trial,k_prime,t,repetitions,measured,match\n";
    std::size_t mismatches = 0;
    for (const ScheduleRow& r : rows) {
      *csv << r.n << ',' << r.trial << ',' << r.k_prime << ',' << r.split << ',' << r.repetitions.str() << ',' << r.measured
           << ',' << (r.match() ? 1 : 0) << '\n';
      mismatches += r.match() ? 0 : 1;
    }
    info << rows.size() << " plans, " << mismatches << " mismatches: " << (mismatches == 0 ? "pass" : "fail") << '\n';
    return mismatches == 0 ? kExitYes : kExitNo;
  }
  throw Error(ErrorCode::InvalidParams, "unknown suite '" + a.suite + "' (expected rates or schedule)");
}

void add_check_options(CLI::App* cmd, CheckArgs& a) {
  cmd->add_option("--problem", a.problem, "hs, sat or tour")->required();
  cmd->add_option("--in", a.in, "check one instance file instead of random ones");
  cmd->add_option("--n-min", a.n_min, "smallest random instance");
  cmd->add_option("--n-max", a.n_max, "largest random instance");
  cmd->add_option("--trials", a.trials, "random instances per size");
  cmd->add_option("--seed", a.seed);
  cmd->add_option("--c", a.c, "constant, default from the backend");
}

void add_family_options(CLI::App* cmd, FamilyArgs& a, bool required) {
  auto* n = cmd->add_option("--n", a.n);
  auto* p = cmd->add_option("--p", a.p);
  auto* q = cmd->add_option("--q", a.q);
  if (required) {
    n->required();
    p->required();
    q->required();
  }
  cmd->add_option("--construction", a.construction, "greedy, bucketed or exhaustive")
      ->check(CLI::IsMember({"greedy", "bucketed", "exhaustive"}));
  cmd->add_flag("--no-fallback", a.no_fallback, "run the bucketed construction even for n <= 20");
  cmd->add_option("--samples", a.samples, "sampled covering checks");
  cmd->add_flag("--exhaustive", a.exhaustive, "check every p-set");
  cmd->add_flag("--sampled", a.sampled, "check random p-sets only");
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone local search solvers, enumerators and checks", "mls"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "decide or minimize one instance");
  s->add_option("--problem", solve.problem, "hs, sat or tour")->required();
  s->add_option("--in", solve.in, "instance file")->required();
  auto* k_opt = s->add_option("--k", solve.k, "solution size budget");
  s->add_flag("--minimize", solve.minimize, "find the smallest k")->excludes(k_opt);
  s->add_option("--mode", solve.mode, "det or rand")->check(CLI::IsMember({"det", "rand"}));
  s->add_option("--seed", solve.seed);
  s->add_option("--c", solve.c, "claimed extension base, e.g. 3 or 2.562");
  s->add_flag("--permissive", solve.permissive, "query through a permissive oracle");
  s->add_flag("--decision-only", solve.decision_only, "permissive oracle returns no certificates");
  s->add_flag("--json", solve.json);
  s->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "list every minimal solution");
  e->add_option("--problem", en.problem, "hs, sat or tour")->required();
  e->add_option("--in", en.in, "instance file")->required();
  e->add_option("--mode", en.mode, "det or rand")->check(CLI::IsMember({"det", "rand"}));
  e->add_option("--seed", en.seed);
  e->add_flag("--names", en.names, "print element names instead of hex masks");
  e->add_option("--out", en.out);

  FamilyArgs fam;
  auto* f = app.add_subcommand("family", "build an (n, p, q)-set-inclusion family");
  add_family_options(f, fam, true);
  f->add_flag("--verify", fam.verify, "also check the covering property");
  f->add_option("--out", fam.out, "cache file to write");

  auto* v = app.add_subcommand("verify", "covering, uniformity and counting checks");
  v->require_subcommand(1);
  FamilyArgs cov;
  auto* vc = v->add_subcommand("covering", "check a family covers every p-set");
  add_family_options(vc, cov, false);
  vc->add_option("--in", cov.in, "family file to check instead of building one");
  CheckArgs uni, cnt;
  auto* vu = v->add_subcommand("uniformity", "slice sizes against c^k n^2");
  add_check_options(vu, uni);
  auto* vn = v->add_subcommand("counting", "minimal-set census against (2-1/c)^n n^2");
  add_check_options(vn, cnt);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "growth-rate and schedule benchmarks");
  b->add_option("--suite", bench.suite, "rates or schedule")->required();
  b->add_option("--problem", bench.problem, "hs, sat or tour");
  b->add_option("--n-range", bench.range, "A..B")->required();
  b->add_option("--trials", bench.trials);
  b->add_option("--seed", bench.seed);
  b->add_option("--c", bench.c, "claimed extension base");
  b->add_option("--out", bench.out, "CSV file");

  std::vector<std::string> argv_store{"mls"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitYes : kExitError;
  }

  std::string command = "mls";
  for (const auto& a : args) command += " " + a;

  try {
    if (s->parsed()) return cmd_solve(solve, command, out, err);
    if (e->parsed()) return cmd_enumerate(en, out, err);
    if (f->parsed()) return cmd_family(fam, out, err);
    if (vc->parsed()) {
      if (cov.in.empty() && (cov.n == 0 && cov.p == 0 && cov.q == 0))
        throw Error(ErrorCode::InvalidParams, "give --in FILE or --n/--p/--q");
      return cmd_verify_covering(cov, out);
    }
    if (vu->parsed()) return cmd_verify_uniformity(uni, out, err);
    if (vn->parsed()) return cmd_verify_counting(cnt, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace mls
