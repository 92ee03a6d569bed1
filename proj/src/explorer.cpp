#include "paxmc/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "paxmc/encoding.hpp"
#include "paxmc/state_store.hpp"

namespace paxmc {

namespace {

constexpr std::size_t kBlockSize = 8192;

// Successors of one frontier state, encoded back to back in `bytes`.
struct Expansion {
  struct Edge {
    std::uint32_t via;
    std::uint32_t offset;
    std::uint8_t length;
    bool violation;
  };
  std::string bytes;
  std::vector<Edge> edges;

  std::string_view encoding(const Edge& e) const { return {bytes.data() + e.offset, e.length}; }
};

void expand(const StateStore& store, StateStore::Id id, const Config& cfg,
            const EdgeObserver& observer, Expansion& out) {
  const std::string_view source = store.encoding(id);
  const GlobalState s = decode(source, cfg);
  Encoding scratch;
  for (const Successor& succ : successors(s, cfg)) {
    encode_into(succ.state, scratch);
    if (scratch == source) continue;  // skip-branch self-loop
    if (observer) observer(s, succ.transition, succ.state);
    out.edges.push_back({succ.transition.pack(), static_cast<std::uint32_t>(out.bytes.size()),
                         static_cast<std::uint8_t>(scratch.size()), succ.state.violation});
    out.bytes += scratch;
  }
}

template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSafe: return "Safe";
    case Verdict::kUnsafe: return "Unsafe";
    case Verdict::kLimitExceeded: return "LimitExceeded";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::kSafe, Verdict::kUnsafe, Verdict::kLimitExceeded}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

Report explore(const Config& cfg, const ExploreOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };
  const Limits& limits = options.limits;

  Report report;
  StateStore store;
  const GlobalState init = initial_state(cfg);
  store.insert(encode(init), StateStore::kNoParent, Transition{});

  std::optional<StateStore::Id> first_violation;
  bool stop = false;
  auto exceed = [&](std::string reason) {
    report.limit_reason = std::move(reason);
    stop = true;
  };

  std::vector<StateStore::Id> level{0};
  std::vector<StateStore::Id> next_level;
  if (init.violation) {
    first_violation = 0;
    report.violating_states = 1;
    stop = !options.exhaustive_violations;
  }

  std::uint32_t depth = 0;
  while (!level.empty() && !stop) {
    for (std::size_t begin = 0; begin < level.size() && !stop; begin += kBlockSize) {
      const std::size_t end = std::min(level.size(), begin + kBlockSize);
      std::vector<Expansion> expansions(end - begin);
      parallel_for(expansions.size(), options.workers, [&](std::size_t i) {
        expand(store, level[begin + i], cfg, options.observer, expansions[i]);
      });

      for (std::size_t i = 0; i < expansions.size() && !stop; ++i) {
        const Expansion& ex = expansions[i];
        for (const Expansion::Edge& edge : ex.edges) {
          ++report.transitions_fired;
          const std::string_view enc = ex.encoding(edge);
          if (limits.max_depth != 0 && depth + 1 > limits.max_depth) {
            if (!store.find(enc)) {
              exceed("max depth " + std::to_string(limits.max_depth) + " reached");
              break;
            }
            continue;
          }
          const auto [id, fresh] = store.insert(enc, level[begin + i], Transition::unpack(edge.via));
          if (!fresh) continue;
          report.max_depth = depth + 1;
          next_level.push_back(id);
          if (edge.violation) {
            ++report.violating_states;
            if (!first_violation) first_violation = id;
            if (!options.exhaustive_violations) {
              stop = true;
              break;
            }
          }
          if (limits.max_states != 0 && store.size() > limits.max_states) {
            exceed("max states " + std::to_string(limits.max_states) + " exceeded");
            break;
          }
        }
      }
      if (!stop && limits.time_budget_s > 0 && elapsed_ms() > limits.time_budget_s * 1000.0) {
        exceed("time budget exceeded");
      }
    }
    level.swap(next_level);
    next_level.clear();
    ++depth;
  }

  report.states_explored = store.size();
  if (first_violation) {
    report.verdict = Verdict::kUnsafe;
    report.trace = reconstruct_trace(store, *first_violation);
  } else if (!report.limit_reason.empty()) {
    report.verdict = Verdict::kLimitExceeded;
  } else {
    report.verdict = Verdict::kSafe;
  }
  report.wall_time_ms = elapsed_ms();
  return report;
}

GlobalState replay(const Config& cfg, const std::vector<Transition>& trace) {
  GlobalState s = initial_state(cfg);
  for (const Transition& t : trace) s = apply(s, cfg, t);
  return s;
}

std::vector<std::pair<int, int>> majorities_along(const Config& cfg,
                                                  const std::vector<Transition>& trace) {
  std::vector<std::pair<int, int>> out;
  GlobalState s = initial_state(cfg);
  for (const Transition& t : trace) {
    s = apply(s, cfg, t);
    if (auto m = observed_majority(s, cfg, t)) out.push_back(*m);
  }
  return out;
}

}  // namespace paxmc
