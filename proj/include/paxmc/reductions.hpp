#ifndef PAXMC_REDUCTIONS_HPP_
#define PAXMC_REDUCTIONS_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paxmc/config.hpp"
#include "paxmc/explorer.hpp"

namespace paxmc {

/// (round, value) pairs that reach a learner majority in some execution.
using OutcomeSet = std::set<std::pair<int, int>>;

struct OutcomeReport {
  OutcomeSet pairs;
  Report report;
  bool complete = false;  // false when a limit cut the exploration short
};

/// Full exploration (not stopping at violations) recording every observed
/// learner majority.
OutcomeReport observable_outcomes(const Config& cfg, const ExploreOptions& options = {});

enum class CheckStatus { kHolds, kViolated, kInconclusive };

const char* to_string(CheckStatus s);

struct CheckResult {
  CheckStatus status = CheckStatus::kHolds;
  std::string detail;
};

/// Abstract single learner vs. two concrete learners: the verdicts must agree.
CheckResult check_learner_reduction(Config cfg, const ExploreOptions& options = {});

struct ProposerReductionResult {
  CheckStatus status = CheckStatus::kHolds;
  std::vector<std::pair<int, Verdict>> verdicts;  // (proposers, verdict) for 2..maxP
  std::optional<Config> offending_config;
  std::optional<Report> counterexample;
  std::string detail;
};

/// Safe with two proposers implies Safe for every P in [2, max_proposers].
/// `base` supplies everything but proposers/acceptors/maj/channel_cap.
ProposerReductionResult check_proposer_reduction(int acceptors, int maj, int max_proposers,
                                                 const Config& base = {},
                                                 const ExploreOptions& options = {});

/// Baseline and Optimized agree on outcome sets and verdicts.
CheckResult check_variant_equivalence(Config cfg, const ExploreOptions& options = {});

/// FirstMatch and AnyMatch receive give the same verdict.
CheckResult check_receive_mode_robustness(Config cfg, const ExploreOptions& options = {});

std::string to_string(const OutcomeSet& pairs);

}  // namespace paxmc

#endif  // PAXMC_REDUCTIONS_HPP_
