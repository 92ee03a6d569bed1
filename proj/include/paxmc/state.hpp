#ifndef PAXMC_STATE_HPP_
#define PAXMC_STATE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "paxmc/channel.hpp"
#include "paxmc/config.hpp"

namespace paxmc {

enum class Phase : std::int8_t { kStart = 0, kCollecting = 1, kDone = 2 };

const char* to_string(Phase p);

struct ProposerState {
  std::int8_t round = 0;  // crnd, unique per proposer
  std::int8_t myval = 0;
  std::int8_t hr = -1;
  std::int8_t hval = -1;
  std::int8_t count = 0;  // promises counted, capped at MAJ (baseline only)
  Phase phase = Phase::kStart;
  std::int8_t prepares_sent = 0;  // baseline interleaved broadcast progress

  friend bool operator==(const ProposerState&, const ProposerState&) = default;
};

struct AcceptorState {
  std::int8_t id = 0;
  std::int8_t rnd = -1;
  std::int8_t vrnd = -1;
  std::int8_t vval = -1;

  friend bool operator==(const AcceptorState&, const AcceptorState&) = default;
};

/// Per-round vote counters are indexed directly by round (1..P); slot 0 unused.
struct LearnerState {
  std::int8_t lastval = -1;  // abstract learner
  std::array<std::int8_t, kMaxProposers + 1> mcount{};
  std::int8_t learned_round = -1;  // concrete learner: first majority observed
  std::int8_t learned_value = -1;

  friend bool operator==(const LearnerState&, const LearnerState&) = default;
};

struct GlobalState {
  Channel prepare;
  Channel promise;
  Channel accept;
  Channel learn;
  std::array<ProposerState, kMaxProposers> proposer_slots{};
  std::array<AcceptorState, kMaxAcceptors> acceptor_slots{};
  std::array<LearnerState, kMaxLearners> learner_slots{};
  std::uint8_t num_proposers = 0;
  std::uint8_t num_acceptors = 0;
  std::uint8_t num_learners = 0;
  bool violation = false;

  std::span<ProposerState> proposers() { return {proposer_slots.data(), num_proposers}; }
  std::span<const ProposerState> proposers() const {
    return {proposer_slots.data(), num_proposers};
  }
  std::span<AcceptorState> acceptors() { return {acceptor_slots.data(), num_acceptors}; }
  std::span<const AcceptorState> acceptors() const {
    return {acceptor_slots.data(), num_acceptors};
  }
  std::span<LearnerState> learners() { return {learner_slots.data(), num_learners}; }
  std::span<const LearnerState> learners() const {
    return {learner_slots.data(), num_learners};
  }

  Channel& channel(MessageKind kind);
  const Channel& channel(MessageKind kind) const;

  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

/// Multi-line dump for diagnostics.
std::string dump(const GlobalState& s);

}  // namespace paxmc

#endif  // PAXMC_STATE_HPP_
