#include "paxmc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "paxmc/explorer.hpp"
#include "paxmc/harness.hpp"
#include "paxmc/reductions.hpp"
#include "paxmc/trace_io.hpp"

namespace paxmc {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options shared by run and sweep that shape the model itself.
struct ModelFlags {
  std::string variant = "baseline";
  std::string learners = "abstract";
  std::string receive = "first";
  std::string channels = "sorted";
  std::string cap = "auto";
  bool faithful_optimized_acceptor = false;
};

struct LimitFlags {
  std::uint64_t max_states = 0;
  std::uint32_t max_depth = 0;
  double time_budget = 0;
  int workers = 1;
};

void add_model_flags(CLI::App* app, ModelFlags& f, bool lists) {
  app->add_option("--variant", f.variant,
                  lists ? "Variants, comma separated: baseline,optimized"
                        : "Model variant: baseline | optimized")
      ->capture_default_str();
  app->add_option("--learners", f.learners, "abstract | concrete:N")->capture_default_str();
  app->add_option("--receive", f.receive,
                  lists ? "Receive modes, comma separated: first,any" : "first | any")
      ->capture_default_str();
  app->add_option("--channels", f.channels, "Channel representation: sorted | fifo")
      ->capture_default_str();
  app->add_option("--cap", f.cap, "Channel capacity, or auto (acceptors*proposers)")
      ->capture_default_str();
  app->add_flag("--faithful-optimized-acceptor", f.faithful_optimized_acceptor,
                "Optimized acceptor sends no promise on a fresh prepare");
}

void add_limit_flags(CLI::App* app, LimitFlags& f) {
  app->add_option("--max-states", f.max_states, "Stop after this many states (0 = unbounded)");
  app->add_option("--max-depth", f.max_depth, "Stop beyond this BFS depth (0 = unbounded)");
  app->add_option("--time-budget", f.time_budget, "Wall-clock budget in seconds (0 = unbounded)");
  app->add_option("--workers,--jobs", f.workers, "Worker threads")->check(CLI::PositiveNumber);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto v = parse(item);
    if (!v) throw UsageError(std::string("unknown ") + what + " '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

// Applies model flags on top of `cfg` (variant/receive take the first list entry).
void apply_model_flags(Config& cfg, const ModelFlags& f) {
  auto variants = parse_list<Variant>(f.variant, parse_variant, "variant");
  auto receives = parse_list<ReceiveMode>(f.receive, parse_receive_mode, "receive mode");
  if (variants.empty() || receives.empty()) throw UsageError("empty variant or receive list");
  cfg.variant = variants.front();
  cfg.receive = receives.front();
  auto learners = parse_learner_mode(f.learners);
  if (!learners) throw UsageError("unknown learner mode '" + f.learners + "'");
  cfg.learners = *learners;
  auto channels = parse_channel_mode(f.channels);
  if (!channels) throw UsageError("unknown channel mode '" + f.channels + "'");
  cfg.channel_mode = *channels;
  if (f.cap == "auto") {
    cfg.channel_cap.reset();
  } else {
    try {
      cfg.channel_cap = std::stoi(f.cap);
    } catch (const std::exception&) {
      throw UsageError("--cap expects a number or auto");
    }
  }
  cfg.faithful_optimized_acceptor = f.faithful_optimized_acceptor;
}

ExploreOptions explore_options(const LimitFlags& f) {
  ExploreOptions o;
  o.limits.max_states = f.max_states;
  o.limits.max_depth = f.max_depth;
  o.limits.time_budget_s = f.time_budget;
  o.workers = f.workers;
  return o;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kSafe: return kExitSafe;
    case Verdict::kUnsafe: return kExitUnsafe;
    case Verdict::kLimitExceeded: return kExitLimit;
  }
  return kExitUsage;
}

std::vector<int> int_list(const std::string& text, const char* flag) {
  try {
    return parse_int_list(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects N, LO..HI or a comma list");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splices `key=value` lines from a --config file into the argument list as
// `--key=value`, skipping keys also given on the command line so flags win.
std::vector<std::string> expand_config_file(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) return args;
  std::ifstream f(*path);
  if (!f) throw UsageError("cannot read config file " + *path);
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(f, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + text);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "config" || given(key)) continue;
    extra.push_back("--" + key + "=" + value);
  }
  // Subcommand name first, then file settings, then the caller's flags.
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && args.front().size() > 1 && args.front()[0] == '-' &&
      args.front() != "-h" && args.front() != "--help") {
    args.insert(args.begin(), "run");
  }
  try {
    args = expand_config_file(std::move(args));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Explicit-state model checker for single-decree Paxos", "paxmc"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Check one configuration");
  std::string config_file;
  run->add_option("--config", config_file, "key=value file mirroring the flags (flags override it)");
  int proposers = 2;
  int acceptors = 3;
  int maj = 0;
  ModelFlags run_model;
  LimitFlags run_limits;
  std::string trace_out;
  bool csv = false;
  bool exhaustive = false;
  run->add_option("--proposers", proposers, "Number of proposers")->capture_default_str();
  run->add_option("--acceptors", acceptors, "Number of acceptors")->capture_default_str();
  CLI::Option* maj_opt = run->add_option("--maj", maj, "Quorum size (default acceptors/2+1)");
  add_model_flags(run, run_model, false);
  add_limit_flags(run, run_limits);
  run->add_option("--trace-out", trace_out, "Write the counterexample here when Unsafe");
  run->add_flag("--csv", csv, "Print a CSV header and row");
  run->add_flag("--exhaustive-violations", exhaustive,
                "Keep exploring after a violation and count violating states");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid and emit CSV");
  sweep->add_option("--config", config_file, "key=value file mirroring the flags (flags override it)");
  std::string sweep_p = "2";
  std::string sweep_a = "2..4";
  std::string sweep_maj = "all";
  std::string sweep_out;
  ModelFlags sweep_model;
  LimitFlags sweep_limits;
  int sweep_jobs = 1;
  sweep->add_option("--proposers", sweep_p, "N, LO..HI or list")->capture_default_str();
  sweep->add_option("--acceptors", sweep_a, "N, LO..HI or list")->capture_default_str();
  sweep->add_option("--maj", sweep_maj, "default | all | N, LO..HI or list")->capture_default_str();
  add_model_flags(sweep, sweep_model, true);
  sweep->add_option("--max-states", sweep_limits.max_states, "Per-config state limit");
  sweep->add_option("--max-depth", sweep_limits.max_depth, "Per-config depth limit");
  sweep->add_option("--time-budget", sweep_limits.time_budget, "Per-config budget in seconds");
  sweep->add_option("--jobs", sweep_jobs, "Configurations explored concurrently")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "Write CSV to this file instead of stdout");

  // check
  CLI::App* check = app.add_subcommand("check", "Run the reduction and equivalence suites");
  std::vector<std::string> suites{"all"};
  std::string check_a = "2,3";
  std::string check_maj = "all";
  int max_proposers = 3;
  std::string check_variant = "baseline";
  LimitFlags check_limits;
  check->add_option("--suite", suites, "learner | proposer | variant | receive | all")
      ->check(CLI::IsMember({"learner", "proposer", "variant", "receive", "all"}))
      ->capture_default_str();
  check->add_option("--acceptors", check_a, "Acceptor counts")->capture_default_str();
  check->add_option("--maj", check_maj, "all | N, LO..HI or list")->capture_default_str();
  check->add_option("--max-proposers", max_proposers, "Largest P for the proposer suite")
      ->capture_default_str();
  check->add_option("--variant", check_variant, "Variant for learner/proposer/receive suites")
      ->capture_default_str();
  add_limit_flags(check, check_limits);

  // replay
  CLI::App* replay_cmd = app.add_subcommand("replay", "Replay a trace file and confirm its violation");
  std::string trace_path;
  replay_cmd->add_option("--trace", trace_path, "Trace file")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      Config cfg;
      cfg.proposers = proposers;
      cfg.acceptors = acceptors;
      if (maj_opt->count() > 0) cfg.maj = maj;
      apply_model_flags(cfg, run_model);
      cfg.validate();
      ExploreOptions opts = explore_options(run_limits);
      opts.exhaustive_violations = exhaustive;
      const Report report = explore(cfg, opts);
      if (csv) {
        out << kCsvHeader << '\n' << csv_row(cfg, report) << '\n';
      } else {
        out << describe(cfg) << ": " << to_string(report.verdict) << '\n'
            << "  states=" << report.states_explored << " transitions=" << report.transitions_fired
            << " max_depth=" << report.max_depth << " time_ms=" << report.wall_time_ms << '\n';
        if (exhaustive) out << "  violating_states=" << report.violating_states << '\n';
        if (!report.limit_reason.empty()) out << "  limit: " << report.limit_reason << '\n';
        if (report.trace) out << "  counterexample: " << report.trace->size() << " steps\n";
      }
      if (report.trace && !trace_out.empty()) {
        std::ofstream f(trace_out);
        if (!f) throw UsageError("cannot write " + trace_out);
        write_trace(f, cfg, *report.trace);
      }
      return exit_code(report.verdict);
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      spec.proposers = int_list(sweep_p, "--proposers");
      spec.acceptors = int_list(sweep_a, "--acceptors");
      spec.maj = sweep_maj;
      if (spec.maj != "default" && spec.maj != "all") int_list(spec.maj, "--maj");
      apply_model_flags(spec.base, sweep_model);
      spec.channel_cap = spec.base.channel_cap;
      spec.variants = parse_list<Variant>(sweep_model.variant, parse_variant, "variant");
      spec.receive_modes =
          parse_list<ReceiveMode>(sweep_model.receive, parse_receive_mode, "receive mode");
      spec.explore = explore_options(sweep_limits);
      spec.explore.workers = 1;
      spec.jobs = sweep_jobs;
      if (sweep_out.empty()) {
        run_sweep(spec, out, err);
      } else {
        std::ofstream f(sweep_out);
        if (!f) throw UsageError("cannot write " + sweep_out);
        run_sweep(spec, f, err);
      }
      return 0;
    }

    if (check->parsed()) {
      const std::set<std::string> chosen(suites.begin(), suites.end());
      auto wants = [&](const char* s) { return chosen.count("all") || chosen.count(s); };
      auto variant = parse_variant(check_variant);
      if (!variant) throw UsageError("unknown variant '" + check_variant + "'");
      const ExploreOptions opts = explore_options(check_limits);
      const std::vector<int> acc = int_list(check_a, "--acceptors");
      std::vector<int> explicit_maj;
      if (check_maj != "all") explicit_maj = int_list(check_maj, "--maj");
      auto majs_for = [&](int a) {
        std::vector<int> m;
        if (check_maj == "all") {
          for (int q = 1; q <= a; ++q) m.push_back(q);
        } else {
          for (int q : explicit_maj) {
            if (q >= 1 && q <= a) m.push_back(q);
          }
        }
        return m;
      };

      int pass = 0, fail = 0, inconclusive = 0;
      auto tally = [&](CheckStatus s, const std::string& name, const std::string& where,
                       const std::string& detail) {
        out << to_string(s) << ' ' << name << ' ' << where << ": " << detail << '\n' << std::flush;
        if (s == CheckStatus::kHolds) ++pass;
        if (s == CheckStatus::kViolated) ++fail;
        if (s == CheckStatus::kInconclusive) ++inconclusive;
      };
      auto where = [](int p, int a, int m) {
        return "P=" + std::to_string(p) + " A=" + std::to_string(a) + " MAJ=" + std::to_string(m);
      };

      for (int a : acc) {
        for (int m : majs_for(a)) {
          Config cfg;
          cfg.proposers = 2;
          cfg.acceptors = a;
          cfg.maj = m;
          cfg.variant = *variant;
          cfg.validate();
          if (wants("learner")) {
            auto r = check_learner_reduction(cfg, opts);
            tally(r.status, "learner-reduction", where(2, a, m), r.detail);
          }
          if (wants("variant")) {
            auto r = check_variant_equivalence(cfg, opts);
            tally(r.status, "variant-equivalence", where(2, a, m), r.detail);
          }
          if (wants("receive")) {
            auto r = check_receive_mode_robustness(cfg, opts);
            tally(r.status, "receive-mode", where(2, a, m), r.detail);
          }
          if (wants("proposer")) {
            Config base;
            base.variant = *variant;
            auto r = check_proposer_reduction(a, m, max_proposers, base, opts);
            tally(r.status, "proposer-reduction",
                  "A=" + std::to_string(a) + " MAJ=" + std::to_string(m) +
                      " P<=" + std::to_string(max_proposers),
                  r.detail);
            if (r.counterexample && r.counterexample->trace && r.offending_config) {
              write_trace(out, *r.offending_config, *r.counterexample->trace);
            }
          }
        }
      }
      out << "checks: " << pass << " pass, " << fail << " fail, " << inconclusive
          << " inconclusive\n";
      if (fail > 0) return 1;
      if (inconclusive > 0) return kExitInconclusive;
      return 0;
    }

    if (replay_cmd->parsed()) {
      std::ifstream f(trace_path);
      if (!f) throw UsageError("cannot read " + trace_path);
      const TraceFile file = read_trace(f);
      const GlobalState end = replay(file.config, file.steps);
      const auto majorities = majorities_along(file.config, file.steps);
      std::set<int> values;
      out << "replayed " << file.steps.size() << " steps on " << describe(file.config) << '\n'
          << "  majorities:";
      for (const auto& [r, v] : majorities) {
        out << " (" << r << ',' << v << ')';
        values.insert(v);
      }
      out << "\n  violation=" << (end.violation ? "true" : "false") << '\n';
      return end.violation && values.size() >= 2 ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TraceFormatError& e) {
    err << "bad trace: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "trace does not replay: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace paxmc
