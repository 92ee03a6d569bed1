#ifndef PAXMC_EXPLORER_HPP_
#define PAXMC_EXPLORER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paxmc/config.hpp"
#include "paxmc/model.hpp"
#include "paxmc/state.hpp"

namespace paxmc {

enum class Verdict { kSafe, kUnsafe, kLimitExceeded };

const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& s);

/// Zero means unbounded for every field.
struct Limits {
  std::uint64_t max_states = 0;
  std::uint32_t max_depth = 0;
  double time_budget_s = 0;
};

struct Report {
  Verdict verdict = Verdict::kSafe;
  std::uint64_t states_explored = 0;  // distinct encodings in the visited set
  std::uint64_t transitions_fired = 0;
  std::uint32_t max_depth = 0;
  double wall_time_ms = 0;
  std::optional<std::vector<Transition>> trace;  // present iff Unsafe
  std::uint64_t violating_states = 0;
  // Set whenever a limit stopped the search; an Unsafe verdict found before
  // the limit still wins.
  std::string limit_reason;
};

/// Called for every fired transition (including ones reaching visited states,
/// excluding self-loops). Invoked concurrently from worker threads.
using EdgeObserver =
    std::function<void(const GlobalState& from, const Transition& t, const GlobalState& to)>;

struct ExploreOptions {
  Limits limits;
  int workers = 1;
  // Keep exploring past violations, counting every violating state.
  bool exhaustive_violations = false;
  EdgeObserver observer;
};

/**
 * Breadth-first reachability from initial_state(cfg).
 *
 * Stops at the first violating state (Unsafe, with a shortest trace), when
 * the frontier is exhausted (Safe), or when a limit is hit (LimitExceeded).
 * Successor generation is parallel across `workers`; insertion into the
 * visited set is a sequential merge in frontier order, so the report is the
 * same for every worker count.
 */
Report explore(const Config& cfg, const ExploreOptions& options = {});

/// Re-applies `trace` from the initial state.
GlobalState replay(const Config& cfg, const std::vector<Transition>& trace);

/// Learner majorities (round, value) observed along `trace`, in order.
std::vector<std::pair<int, int>> majorities_along(const Config& cfg,
                                                  const std::vector<Transition>& trace);

}  // namespace paxmc

#endif  // PAXMC_EXPLORER_HPP_
