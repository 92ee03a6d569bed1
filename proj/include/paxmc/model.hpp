#ifndef PAXMC_MODEL_HPP_
#define PAXMC_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paxmc/config.hpp"
#include "paxmc/message.hpp"
#include "paxmc/state.hpp"

namespace paxmc {

/// Atomic step kinds of the three roles across both variants.
enum class Rule : std::uint8_t {
  kSendPrepare,       // baseline: one prepare of the interleaved broadcast
  kBroadcastPrepare,  // optimized: all prepares in one step
  kRecvPromise,       // baseline proposer rec_p
  kSendAccept,        // baseline proposer send_a
  kQuorumStep,        // optimized proposer qt (occ + test)
  kAcceptorPrepare,
  kAcceptorAccept,
  kLearnAbstract,
  kLearnConcrete,
};

const char* to_string(Rule r);
std::optional<Rule> parse_rule(const std::string& name);

/// Role owning a rule, used as the actor label in traces.
const char* actor_role(Rule r);

/**
 * Identifies one enabled atomic step. `msg` is the message read by a
 * receiving rule (or the single prepare sent by kSendPrepare) and is empty
 * for the broadcast-only rules.
 */
struct Transition {
  Rule rule = Rule::kSendPrepare;
  std::uint8_t actor = 0;
  Message msg{};

  /// 28-bit packing: rule(4) actor(3) kind(3) and three fields of 6 bits,
  /// each offset by one so -1 fits.
  std::uint32_t pack() const;
  static Transition unpack(std::uint32_t bits);

  friend bool operator==(const Transition&, const Transition&) = default;
};

std::string to_string(const Transition& t);

/// Applying a transition that is not enabled in the given state.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Validates `cfg` (throws ConfigError) and builds the initial system.
GlobalState initial_state(const Config& cfg);

// Role steps. Each returns nullopt when disabled. Receiving steps read
// `chosen` when given (it must be present and match the rule's pattern),
// otherwise the first matching message in queue order.

std::optional<GlobalState> broadcast_prepare(const GlobalState& s, const Config& cfg, int p);
std::optional<GlobalState> proposer_recv_promise(const GlobalState& s, const Config& cfg, int p,
                                                 std::optional<Message> chosen = {});
std::optional<GlobalState> proposer_try_accept(const GlobalState& s, const Config& cfg, int p);
std::optional<GlobalState> proposer_quorum_step(const GlobalState& s, const Config& cfg, int p);
std::optional<GlobalState> acceptor_recv_prepare(const GlobalState& s, const Config& cfg, int a,
                                                 std::optional<Message> chosen = {});
std::optional<GlobalState> acceptor_recv_accept(const GlobalState& s, const Config& cfg, int a,
                                                std::optional<Message> chosen = {});
std::optional<GlobalState> abstract_learner_step(const GlobalState& s, const Config& cfg,
                                                 std::optional<Message> chosen = {});
std::optional<GlobalState> concrete_learner_step(const GlobalState& s, const Config& cfg, int l,
                                                 std::optional<Message> chosen = {});

/// Pattern the rule's receive uses in state `s` (acceptor/round fixed by eval).
MessagePattern receive_pattern(const GlobalState& s, Rule rule, int actor);

struct Successor {
  Transition transition;
  GlobalState state;
};

/// Every enabled step with its successor, in a stable order: proposers by
/// index, then acceptors (prepare, accept), then learners.
std::vector<Successor> successors(const GlobalState& s, const Config& cfg);

/// Same enumeration without the successor states.
std::vector<Transition> enabled_transitions(const GlobalState& s, const Config& cfg);

/// Pure step; throws ContractViolation when `t` is not enabled in `s`.
GlobalState apply(const GlobalState& s, const Config& cfg, const Transition& t);

/// Majority observed by a learner step: the (round, value) whose counter is
/// at or above MAJ right after the step, if any.
std::optional<std::pair<int, int>> observed_majority(const GlobalState& after, const Config& cfg,
                                                     const Transition& t);

}  // namespace paxmc

#endif  // PAXMC_MODEL_HPP_
