#include "hsp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "hsp/classical.hpp"
#include "hsp/errors.hpp"
#include "hsp/group.hpp"
#include "hsp/oracle.hpp"
#include "hsp/quantum.hpp"
#include "hsp/rng.hpp"
#include "hsp/subgroups.hpp"
#include "hsp/verify.hpp"

namespace hsp::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kMaxListedRuns = 100;

const std::map<std::string, Mode>& mode_names() {
  static const std::map<std::string, Mode> names{
      {"params", Mode::Params},   {"subgroups", Mode::Subgroups}, {"verify", Mode::Verify},
      {"solve", Mode::Solve},     {"collide", Mode::Collide},     {"fidelity", Mode::Fidelity},
      {"bench", Mode::Bench}};
  return names;
}

// Raised for configurations that parse but cannot run.
class UsageError : public Error {
 public:
  using Error::Error;
};

json config_json(const ExperimentConfig& c) {
  return {{"mode", to_string(c.mode)},
          {"p", c.p},
          {"q", c.q},
          {"r", c.r},
          {"s", c.s},
          {"t", c.t},
          {"l", c.l},
          {"hidden", c.hidden.empty() ? json(nullptr) : json(c.hidden)},
          {"trials", c.trials},
          {"seed", c.seed},
          {"format", c.format == Format::Json ? "json" : "csv"},
          {"full_state", c.full_state}};
}

json transcript_json(const RunTranscript& tr) {
  return {{"seed", tr.seed},
          {"m0", tr.m0},
          {"n0", tr.n0},
          {"k0", tr.k0},
          {"k0_is_unit", tr.k0_is_unit},
          {"candidate_a", tr.candidate_a ? json(*tr.candidate_a) : json(nullptr)},
          {"verified", tr.verified},
          {"per_step_norms", tr.per_step_norms},
          {"fidelity", tr.fidelity ? json(*tr.fidelity) : json(nullptr)}};
}

SubgroupDescriptor hidden_of(const ExperimentConfig& c, const GroupParams& P) {
  if (c.hidden.empty()) throw UsageError("mode " + to_string(c.mode) + " needs --hidden");
  const auto d = parse_descriptor(c.hidden);
  validate(P, d);
  return d;
}

EngineOptions engine_options(const ExperimentConfig& c) {
  EngineOptions o;
  o.prep = c.full_state ? StatePrep::Full : StatePrep::Sampled;
  return o;
}

/// Evaluates fn(trial, oracle) for every trial on `threads` workers, each
/// with its own copy of the oracle. Results come back in trial order; the
/// exception of the lowest failing trial is rethrown.
template <class Result>
std::vector<Result> run_trials(const ExperimentConfig& c, const HiddenSubgroupOracle& oracle,
                               const std::function<Result(std::uint64_t, Oracle&)>& fn) {
  std::vector<std::optional<Result>> results(c.trials);
  std::vector<std::exception_ptr> errors(c.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    HiddenSubgroupOracle local = oracle;
    for (std::uint64_t k = next++; k < c.trials; k = next++) {
      try {
        results[k] = fn(k, local);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(c.threads, static_cast<unsigned>(c.trials)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  out.reserve(c.trials);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

json summary_stats(std::uint64_t successes, std::uint64_t trials, double mean_queries) {
  const auto ci = wilson_interval(successes, trials);
  return {{"successes", successes},
          {"success_rate", trials ? static_cast<double>(successes) / trials : 0.0},
          {"ci_low", ci.low},
          {"ci_high", ci.high},
          {"mean_queries", mean_queries}};
}

json mode_params(const GroupParams& P) {
  return {{"p", P.p()},
          {"q", P.q()},
          {"r", P.r()},
          {"s", P.s()},
          {"t", P.t()},
          {"l", P.l()},
          {"u", P.u()},
          {"alpha", P.alpha()},
          {"alpha_order", multiplicative_order(static_cast<i64>(P.alpha()), P.pr())},
          {"u_order", multiplicative_order(static_cast<i64>(P.u()), P.pr())},
          {"group_order", P.order()},
          {"valid", true},
          {"subgroup_count", subgroup_count(P)},
          {"repetition_count", repetition_count(P)}};
}

json mode_subgroups(const GroupParams& P) {
  const auto all = enumerate_subgroups(P);
  json list = json::array();
  std::uint64_t cyclic = 0;
  for (const auto& d : all) {
    cyclic += d.is_cyclic();
    list.push_back({{"descriptor", to_string(d)}, {"order", subgroup_order(P, d)}});
  }
  return {{"count", all.size()},
          {"class_i", cyclic},
          {"class_ii", all.size() - cyclic},
          {"subgroups", std::move(list)}};
}

json mode_verify(const GroupParams& P, bool& all_passed) {
  json suites = json::array();
  all_passed = true;
  for (const auto& s : verify_all(P)) {
    all_passed = all_passed && s.passed;
    suites.push_back({{"name", s.name},
                      {"passed", s.passed},
                      {"skipped", s.skipped},
                      {"checked", s.checked},
                      {"detail", s.detail}});
  }
  return {{"suites", std::move(suites)}, {"all_passed", all_passed}};
}

struct SolveRow {
  std::uint64_t seed;
  SolveResult result;
};

json mode_solve(const ExperimentConfig& c, const GroupParams& P, double& success_rate,
                Interval& ci, double& mean_queries) {
  const auto hidden = hidden_of(c, P);
  const auto oracle = build_oracle(P, hidden);
  const auto options = engine_options(c);
  auto rows = run_trials<SolveRow>(c, oracle, [&](std::uint64_t k, Oracle& o) {
    Rng rng(derive_seed(c.seed, k));
    return SolveRow{rng.seed(), solve_hsp(o, rng, options)};
  });

  std::uint64_t ok = 0;
  double queries = 0;
  json runs = json::array();
  for (std::uint64_t k = 0; k < rows.size(); ++k) {
    const auto& res = rows[k].result;
    const bool correct = res.descriptor == hidden;
    ok += correct;
    queries += static_cast<double>(res.queries);
    if (c.trials > kMaxListedRuns) continue;
    json transcripts = json::array();
    if (res.recovery)
      for (const auto& tr : res.recovery->transcripts) transcripts.push_back(transcript_json(tr));
    runs.push_back({{"trial", k},
                    {"seed", rows[k].seed},
                    {"descriptor", to_string(res.descriptor)},
                    {"correct", correct},
                    {"i", res.i},
                    {"j_y", res.j_y},
                    {"queries", res.queries},
                    {"recovery_runs", res.recovery ? res.recovery->runs : 0},
                    {"transcripts", std::move(transcripts)}});
  }
  mean_queries = queries / static_cast<double>(rows.size());
  success_rate = static_cast<double>(ok) / static_cast<double>(rows.size());
  ci = wilson_interval(ok, rows.size());
  json out = {{"hidden", to_string(hidden)}, {"summary", summary_stats(ok, rows.size(), mean_queries)}};
  if (c.trials <= kMaxListedRuns) out["runs"] = std::move(runs);
  return out;
}

json mode_collide(const ExperimentConfig& c, const GroupParams& P, double& success_rate,
                  Interval& ci, double& mean_queries) {
  const auto hidden = hidden_of(c, P);
  const auto oracle = build_oracle(P, hidden);
  auto rows = run_trials<ClassicalResult>(c, oracle, [&](std::uint64_t k, Oracle& o) {
    Rng rng(derive_seed(c.seed, k));
    return classical_solve(o, rng);
  });

  std::uint64_t ok = 0, collisions = 0, degenerate = 0;
  double queries = 0;
  std::vector<double> first_collision;
  json runs = json::array();
  for (std::uint64_t k = 0; k < rows.size(); ++k) {
    const auto& res = rows[k];
    const bool correct = res.descriptor == hidden;
    ok += correct;
    queries += static_cast<double>(res.queries);
    collisions += res.collisions.size();
    degenerate += res.degenerate;
    if (!res.collisions.empty())
      first_collision.push_back(static_cast<double>(res.collisions.front().queries_used));
    if (c.trials > kMaxListedRuns) continue;
    json cols = json::array();
    for (const auto& rec : res.collisions)
      cols.push_back({{"g1", to_string(rec.g1)},
                      {"g2", to_string(rec.g2)},
                      {"u", rec.u},
                      {"v", rec.v},
                      {"queries_used", rec.queries_used}});
    runs.push_back({{"trial", k},
                    {"seed", derive_seed(c.seed, k)},
                    {"descriptor", to_string(res.descriptor)},
                    {"correct", correct},
                    {"queries", res.queries},
                    {"degenerate", res.degenerate},
                    {"collisions", std::move(cols)}});
  }
  mean_queries = queries / static_cast<double>(rows.size());
  success_rate = static_cast<double>(ok) / static_cast<double>(rows.size());
  ci = wilson_interval(ok, rows.size());
  json out = {{"hidden", to_string(hidden)},
              {"summary", summary_stats(ok, rows.size(), mean_queries)},
              {"collisions", collisions},
              {"degenerate", degenerate},
              {"median_first_collision_queries", median(first_collision)}};
  if (c.trials <= kMaxListedRuns) out["runs"] = std::move(runs);
  return out;
}

void require_recovery_target(const GroupParams& P, const SubgroupDescriptor& d) {
  if (P.t() != 1) throw UsageError("this mode needs t = 1");
  if (d.is_cyclic() || d.i != P.r() || d.j != 0)
    throw UsageError("this mode needs a hidden subgroup twogen:r,a,0, got " + to_string(d));
}

json mode_fidelity(const ExperimentConfig& c, const GroupParams& P) {
  const auto hidden = hidden_of(c, P);
  require_recovery_target(P, hidden);
  const auto oracle = build_oracle(P, hidden);
  const auto options = engine_options(c);
  auto rows = run_trials<RunTranscript>(c, oracle, [&](std::uint64_t k, Oracle& o) {
    Rng rng(derive_seed(c.seed, k));
    return recover_a_once(o, rng, options);
  });

  const double expected = std::sqrt(static_cast<double>(P.q()) / static_cast<double>(P.pr()));
  double worst = 0;
  std::uint64_t measured = 0;
  json runs = json::array();
  for (std::uint64_t k = 0; k < rows.size(); ++k) {
    const auto& tr = rows[k];
    if (tr.fidelity) {
      ++measured;
      worst = std::max(worst, std::abs(*tr.fidelity - expected));
    }
    if (c.trials <= kMaxListedRuns)
      runs.push_back({{"trial", k},
                      {"seed", tr.seed},
                      {"k0", tr.k0},
                      {"fidelity", tr.fidelity ? json(*tr.fidelity) : json(nullptr)}});
  }
  json out = {{"hidden", to_string(hidden)},
              {"expected", expected},
              {"measured", measured},
              {"max_abs_deviation", worst}};
  if (c.trials <= kMaxListedRuns) out["runs"] = std::move(runs);
  return out;
}

json mode_bench(const ExperimentConfig& c, const GroupParams& P, double& success_rate,
                Interval& ci, double& mean_queries) {
  const auto hidden = hidden_of(c, P);
  const bool per_run = P.t() == 1 && !hidden.is_cyclic() && hidden.i == P.r() && hidden.j == 0;
  if (!per_run) {
    // anything else is benchmarked through the full solver
    auto out = mode_solve(c, P, success_rate, ci, mean_queries);
    out.erase("runs");
    return out;
  }
  const auto oracle = build_oracle(P, hidden);
  const auto options = engine_options(c);
  struct Row {
    RunTranscript tr;
    std::uint64_t queries;
  };
  auto rows = run_trials<Row>(c, oracle, [&](std::uint64_t k, Oracle& o) {
    Rng rng(derive_seed(c.seed, k));
    const auto before = o.query_count();
    auto tr = recover_a_once(o, rng, options);
    return Row{std::move(tr), o.query_count() - before};
  });

  std::uint64_t ok = 0, units = 0;
  double queries = 0;
  for (const auto& row : rows) {
    ok += row.tr.verified;
    units += row.tr.k0_is_unit;
    queries += static_cast<double>(row.queries);
  }
  const double n = static_cast<double>(rows.size());
  const double p = static_cast<double>(P.p());
  const double q = static_cast<double>(P.q());
  const double pr = static_cast<double>(P.pr());
  mean_queries = queries / n;
  success_rate = static_cast<double>(ok) / n;
  ci = wilson_interval(ok, rows.size());
  const auto unit_ci = wilson_interval(units, rows.size());
  return {{"hidden", to_string(hidden)},
          {"per_run_success", success_rate},
          {"ci_low", ci.low},
          {"ci_high", ci.high},
          {"expected_per_run_success", (p - 1) * q / (pr * p)},
          {"k0_unit_rate", static_cast<double>(units) / n},
          {"k0_unit_ci_low", unit_ci.low},
          {"k0_unit_ci_high", unit_ci.high},
          {"expected_k0_unit_rate", 1 - 1 / p},
          {"repetition_count", repetition_count(P)},
          {"mean_queries", mean_queries}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json error_object(const std::string& type, const std::string& message) {
  return {{"type", type}, {"message", message}};
}

}  // namespace

std::string to_string(Mode mode) {
  for (const auto& [name, m] : mode_names())
    if (m == mode) return name;
  return "unknown";
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  json report{{"config", config_json(config)}};
  int code = kOk;

  bool has_row = false;
  double success_rate = 0, mean_queries = 0;
  Interval ci{0, 1};

  auto fail = [&](int c, const std::string& type, const std::string& message, json extra = {}) {
    code = c;
    json e = error_object(type, message);
    if (extra.is_object()) e.update(extra);
    report["error"] = std::move(e);
    err << "error: " << message << "\n";
  };

  try {
    if (config.trials == 0) throw UsageError("--trials must be positive");
    if (config.format == Format::Csv && config.mode != Mode::Bench &&
        config.mode != Mode::Solve && config.mode != Mode::Collide)
      throw UsageError("csv output is available for bench, solve and collide");
    const GroupParams P = make_params(config.p, config.q, config.r, config.s, config.t, config.l);
    switch (config.mode) {
      case Mode::Params:
        report["results"] = mode_params(P);
        break;
      case Mode::Subgroups:
        report["results"] = mode_subgroups(P);
        break;
      case Mode::Verify: {
        bool passed = true;
        report["results"] = mode_verify(P, passed);
        if (!passed) code = kVerificationFailed;
        break;
      }
      case Mode::Solve:
        report["results"] = mode_solve(config, P, success_rate, ci, mean_queries);
        has_row = true;
        break;
      case Mode::Collide:
        report["results"] = mode_collide(config, P, success_rate, ci, mean_queries);
        has_row = true;
        break;
      case Mode::Fidelity:
        report["results"] = mode_fidelity(config, P);
        break;
      case Mode::Bench:
        report["results"] = mode_bench(config, P, success_rate, ci, mean_queries);
        has_row = true;
        break;
    }
  } catch (const InvalidParams& e) {
    fail(kInvalidInput, "InvalidParams", e.what());
  } catch (const InvalidDescriptor& e) {
    fail(kInvalidInput, "InvalidDescriptor", e.what());
  } catch (const InvalidHidden& e) {
    fail(kInvalidInput, "InvalidHidden", e.what());
  } catch (const UsageError& e) {
    fail(kInvalidInput, "InvalidArguments", e.what());
  } catch (const Exhausted& e) {
    fail(kSolverFailed, "Exhausted", e.what(), json{{"runs", e.runs()}});
  } catch (const UnsupportedT& e) {
    json extra{{"t", e.t()}, {"j", e.j()}, {"witness", nullptr}};
    if (e.has_witness())
      extra["witness"] = {{"n1", e.witness().n1},
                          {"n2", e.witness().n2},
                          {"register_value", e.witness().register_value},
                          {"s_value", e.witness().s_value}};
    fail(kSolverFailed, "UnsupportedT", e.what(), std::move(extra));
  } catch (const NonInjectiveS& e) {
    fail(kSolverFailed, "NonInjectiveS", e.what());
  } catch (const std::exception& e) {
    fail(kInternalError, "InternalError", e.what());
  }

  if (config.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  } else {
    report["timing_ms"] = nullptr;
  }
  report["version"] = kVersion;

  if (config.format == Format::Csv && has_row && !report.contains("error")) {
    out << "p,q,r,s,t,hidden,trials,seed,success_rate,ci_low,ci_high,mean_queries\n";
    out << config.p << ',' << config.q << ',' << config.r << ',' << config.s << ',' << config.t
        << ',' << csv_field(config.hidden) << ',' << config.trials << ',' << config.seed << ','
        << json(success_rate).dump() << ',' << json(ci.low).dump() << ','
        << json(ci.high).dump() << ',' << json(mean_queries).dump() << "\n";
  } else {
    out << report.dump(2) << "\n";
  }
  return code;
}

int run_command_line(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hidden subgroup experiments on Z_{p^r} x| Z_{q^s}"};
  ExperimentConfig config;
  std::string mode = "params";
  std::string format = "json";

  std::vector<std::string> mode_list;
  for (const auto& [name, m] : mode_names()) mode_list.push_back(name);

  app.add_option("--mode", mode, "Experiment to run")->check(CLI::IsMember(mode_list));
  app.add_option("--p", config.p, "Odd prime p")->required();
  app.add_option("--q", config.q, "Odd prime q with q^t | p-1")->required();
  app.add_option("--r", config.r, "Exponent of p");
  app.add_option("--s", config.s, "Exponent of q");
  app.add_option("--t", config.t, "alpha has order q^t");
  app.add_option("--l", config.l, "Unit selecting alpha among generators of order q^t");
  app.add_option("--hidden", config.hidden, "cyclic:i,j or twogen:i,a,j");
  app.add_option("--trials", config.trials, "Number of seeded trials");
  app.add_option("--seed", config.seed, "Base seed")->envname("HSP_SEED");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--full-state", config.full_state,
               "Measure an explicit |Psi_1> instead of sampling (m0, n0)");
  app.add_flag("--timing", config.timing, "Report wall-clock time");
  app.add_option("--threads", config.threads, "Worker threads for trials")
      ->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    json report{{"config", nullptr},
                {"error", error_object("InvalidArguments", e.what())},
                {"timing_ms", nullptr},
                {"version", kVersion}};
    out << report.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  config.mode = mode_names().at(mode);
  config.format = format == "csv" ? Format::Csv : Format::Json;
  return run(config, out, err);
}

}  // namespace hsp::cli
