#include "paxmc/config.hpp"

#include <sstream>

namespace paxmc {

void Config::validate() const {
  auto fail = [](const std::string& why) { throw ConfigError(why); };
  if (proposers < 1 || proposers > kMaxProposers)
    fail("proposers must be in [1, " + std::to_string(kMaxProposers) + "]");
  if (acceptors < 1 || acceptors > kMaxAcceptors)
    fail("acceptors must be in [1, " + std::to_string(kMaxAcceptors) + "]");
  if (quorum() < 1 || quorum() > acceptors)
    fail("maj must be in [1, acceptors], got " + std::to_string(quorum()));
  if (capacity() < acceptors)
    fail("channel capacity " + std::to_string(capacity()) +
         " cannot hold one broadcast to " + std::to_string(acceptors) + " acceptors");
  if (capacity() > kMaxChannelCapacity)
    fail("channel capacity must be at most " + std::to_string(kMaxChannelCapacity));
  if (learners.kind == LearnerKind::kAbstract && learners.count != 1)
    fail("the abstract learner is a single instance");
  if (learners.count < 1 || learners.count > kMaxLearners)
    fail("concrete learners must be in [1, " + std::to_string(kMaxLearners) + "]");
}

const char* to_string(Variant v) {
  return v == Variant::kBaseline ? "baseline" : "optimized";
}

const char* to_string(ReceiveMode m) {
  return m == ReceiveMode::kFirstMatch ? "first" : "any";
}

const char* to_string(ChannelMode m) {
  return m == ChannelMode::kSorted ? "sorted" : "fifo";
}

std::string to_string(const LearnerMode& m) {
  if (m.kind == LearnerKind::kAbstract) return "abstract";
  return "concrete:" + std::to_string(m.count);
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "baseline") return Variant::kBaseline;
  if (s == "optimized") return Variant::kOptimized;
  return std::nullopt;
}

std::optional<ReceiveMode> parse_receive_mode(const std::string& s) {
  if (s == "first") return ReceiveMode::kFirstMatch;
  if (s == "any") return ReceiveMode::kAnyMatch;
  return std::nullopt;
}

std::optional<ChannelMode> parse_channel_mode(const std::string& s) {
  if (s == "sorted") return ChannelMode::kSorted;
  if (s == "fifo") return ChannelMode::kFifo;
  return std::nullopt;
}

std::optional<LearnerMode> parse_learner_mode(const std::string& s) {
  if (s == "abstract") return LearnerMode::abstract();
  const std::string prefix = "concrete:";
  if (s.rfind(prefix, 0) != 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string rest = s.substr(prefix.size());
    int n = std::stoi(rest, &used);
    if (used != rest.size() || n < 1) return std::nullopt;
    return LearnerMode::concrete(n);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string describe(const Config& cfg) {
  std::ostringstream os;
  os << "P=" << cfg.proposers << " A=" << cfg.acceptors << " MAJ=" << cfg.quorum()
     << " cap=" << cfg.capacity() << ' ' << to_string(cfg.variant);
  if (cfg.learners.kind != LearnerKind::kAbstract) os << " learners=" << to_string(cfg.learners);
  if (cfg.receive != ReceiveMode::kFirstMatch) os << " receive=" << to_string(cfg.receive);
  if (cfg.channel_mode != ChannelMode::kSorted) os << " channels=" << to_string(cfg.channel_mode);
  if (cfg.faithful_optimized_acceptor) os << " faithful-optimized-acceptor";
  return os.str();
}

}  // namespace paxmc
