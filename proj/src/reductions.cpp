#include "paxmc/reductions.hpp"

#include <mutex>
#include <sstream>

namespace paxmc {

namespace {

bool inconclusive(const Report& r) { return r.verdict == Verdict::kLimitExceeded; }

std::string verdicts_detail(const char* a_name, const Report& a, const char* b_name,
                            const Report& b) {
  std::ostringstream os;
  os << a_name << '=' << to_string(a.verdict) << ' ' << b_name << '=' << to_string(b.verdict);
  return os.str();
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kHolds: return "PASS";
    case CheckStatus::kViolated: return "FAIL";
    case CheckStatus::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(const OutcomeSet& pairs) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [r, v] : pairs) {
    os << (first ? "" : ", ") << '(' << r << ',' << v << ')';
    first = false;
  }
  os << '}';
  return os.str();
}

OutcomeReport observable_outcomes(const Config& cfg, const ExploreOptions& options) {
  OutcomeReport out;
  std::mutex mu;
  ExploreOptions opts = options;
  opts.exhaustive_violations = true;
  opts.observer = [&](const GlobalState& from, const Transition& t, const GlobalState& to) {
    if (options.observer) options.observer(from, t, to);
    if (auto m = observed_majority(to, cfg, t)) {
      std::lock_guard lock(mu);
      out.pairs.insert(*m);
    }
  };
  out.report = explore(cfg, opts);
  out.complete = out.report.limit_reason.empty();
  return out;
}

CheckResult check_learner_reduction(Config cfg, const ExploreOptions& options) {
  cfg.learners = LearnerMode::abstract();
  const Report abstract = explore(cfg, options);
  cfg.learners = LearnerMode::concrete(2);
  const Report concrete = explore(cfg, options);
  CheckResult result;
  result.detail = verdicts_detail("abstract", abstract, "concrete:2", concrete);
  if (inconclusive(abstract) || inconclusive(concrete)) {
    result.status = CheckStatus::kInconclusive;
  } else {
    result.status =
        abstract.verdict == concrete.verdict ? CheckStatus::kHolds : CheckStatus::kViolated;
  }
  return result;
}

ProposerReductionResult check_proposer_reduction(int acceptors, int maj, int max_proposers,
                                                 const Config& base,
                                                 const ExploreOptions& options) {
  ProposerReductionResult result;
  Config cfg = base;
  cfg.acceptors = acceptors;
  cfg.maj = maj;
  cfg.channel_cap.reset();
  std::ostringstream detail;
  bool safe_at_two = false;
  for (int p = 2; p <= max_proposers; ++p) {
    cfg.proposers = p;
    Report r = explore(cfg, options);
    result.verdicts.emplace_back(p, r.verdict);
    detail << (p > 2 ? " " : "") << "P=" << p << ':' << to_string(r.verdict);
    if (p == 2) {
      if (r.verdict == Verdict::kUnsafe) {
        detail << " (vacuous: unsafe with two proposers)";
        break;
      }
      if (r.verdict == Verdict::kLimitExceeded) {
        result.status = CheckStatus::kInconclusive;
        break;
      }
      safe_at_two = true;
      continue;
    }
    if (r.verdict == Verdict::kLimitExceeded) {
      result.status = CheckStatus::kInconclusive;
    } else if (safe_at_two && r.verdict == Verdict::kUnsafe) {
      result.status = CheckStatus::kViolated;
      result.offending_config = cfg;
      result.counterexample = std::move(r);
      break;
    }
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_variant_equivalence(Config cfg, const ExploreOptions& options) {
  cfg.variant = Variant::kBaseline;
  const OutcomeReport baseline = observable_outcomes(cfg, options);
  cfg.variant = Variant::kOptimized;
  const OutcomeReport optimized = observable_outcomes(cfg, options);
  CheckResult result;
  result.detail = verdicts_detail("baseline", baseline.report, "optimized", optimized.report) +
                  " outcomes baseline=" + to_string(baseline.pairs) +
                  " optimized=" + to_string(optimized.pairs);
  if (!baseline.complete || !optimized.complete) {
    result.status = CheckStatus::kInconclusive;
  } else if (baseline.pairs == optimized.pairs &&
             baseline.report.verdict == optimized.report.verdict) {
    result.status = CheckStatus::kHolds;
  } else {
    result.status = CheckStatus::kViolated;
  }
  return result;
}

CheckResult check_receive_mode_robustness(Config cfg, const ExploreOptions& options) {
  cfg.receive = ReceiveMode::kFirstMatch;
  const Report first = explore(cfg, options);
  cfg.receive = ReceiveMode::kAnyMatch;
  const Report any = explore(cfg, options);
  CheckResult result;
  result.detail = verdicts_detail("first", first, "any", any);
  if (inconclusive(first) || inconclusive(any)) {
    result.status = CheckStatus::kInconclusive;
  } else {
    result.status = first.verdict == any.verdict ? CheckStatus::kHolds : CheckStatus::kViolated;
  }
  return result;
}

}  // namespace paxmc
