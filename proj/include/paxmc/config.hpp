#ifndef PAXMC_CONFIG_HPP_
#define PAXMC_CONFIG_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "paxmc/channel.hpp"

namespace paxmc {

inline constexpr int kMaxProposers = 8;
inline constexpr int kMaxAcceptors = 8;
inline constexpr int kMaxLearners = 4;

/// Baseline: interleaved prepare sends and counter-based promise collection.
/// Optimized: atomic prepare broadcast, quorum transitions, persistent prepares.
enum class Variant { kBaseline, kOptimized };

enum class LearnerKind { kAbstract, kConcrete };

struct LearnerMode {
  LearnerKind kind = LearnerKind::kAbstract;
  int count = 1;

  static LearnerMode abstract() { return {}; }
  static LearnerMode concrete(int n) { return {LearnerKind::kConcrete, n}; }

  friend bool operator==(const LearnerMode&, const LearnerMode&) = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  int proposers = 2;
  int acceptors = 3;
  std::optional<int> maj;          // default: acceptors / 2 + 1
  std::optional<int> channel_cap;  // default: acceptors * proposers
  Variant variant = Variant::kBaseline;
  LearnerMode learners = LearnerMode::abstract();
  ReceiveMode receive = ReceiveMode::kFirstMatch;
  ChannelMode channel_mode = ChannelMode::kSorted;
  // Optimized variant only: drop the promise send on a fresh prepare, exactly
  // as in the optimized acceptor listing.
  bool faithful_optimized_acceptor = false;

  int quorum() const { return maj.value_or(acceptors / 2 + 1); }
  int capacity() const { return channel_cap.value_or(acceptors * proposers); }

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  friend bool operator==(const Config&, const Config&) = default;
};

const char* to_string(Variant v);
const char* to_string(ReceiveMode m);
const char* to_string(ChannelMode m);
std::string to_string(const LearnerMode& m);

std::optional<Variant> parse_variant(const std::string& s);
std::optional<ReceiveMode> parse_receive_mode(const std::string& s);
std::optional<ChannelMode> parse_channel_mode(const std::string& s);
/// "abstract" or "concrete:N".
std::optional<LearnerMode> parse_learner_mode(const std::string& s);

/// One-line human summary, e.g. "P=2 A=3 MAJ=2 cap=6 baseline".
std::string describe(const Config& cfg);

}  // namespace paxmc

#endif  // PAXMC_CONFIG_HPP_
