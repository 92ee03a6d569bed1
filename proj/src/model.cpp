#include "paxmc/model.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace paxmc {

namespace {

constexpr std::array<const char*, 9> kRuleNames = {
    "send_prepare", "broadcast_prepare", "recv_promise", "send_accept", "quorum_step",
    "recv_prepare", "recv_accept",       "learn",        "learn_concrete",
};

bool is_baseline(const Config& cfg) { return cfg.variant == Variant::kBaseline; }

// Broadcast of Accept(i, round, value) to every acceptor; false when the
// accept channel lacks room for all of them.
bool broadcast_accept(GlobalState& s, int round, int value) {
  if (s.accept.room() < s.num_acceptors) return false;
  for (int i = 0; i < s.num_acceptors; ++i) s.accept.insert(Message::accept(i, round, value));
  return true;
}

// Resolves the message a receiving rule reads: the explicitly chosen one (which
// must be stored and match), or the first match in queue order.
std::optional<Message> resolve(const Channel& chan, const MessagePattern& pattern,
                               const std::optional<Message>& chosen) {
  if (chosen) {
    if (!pattern.matches(*chosen) || !chan.contains(*chosen)) return std::nullopt;
    return chosen;
  }
  return chan.peek(pattern);
}

// Optimized persistent prepare read: the first stored prepare for this
// acceptor that is fresher than its round, else the first stored one (whose
// skip branch is a self-loop).
std::optional<Message> first_persistent_prepare(const GlobalState& s, int a) {
  MessagePattern fresh = MessagePattern::for_acceptor(a);
  fresh.round_above = s.acceptors()[a].rnd;
  if (auto m = s.prepare.peek(fresh)) return m;
  return s.prepare.peek(MessagePattern::for_acceptor(a));
}

// Messages a receiving rule branches on in state `s`.
std::vector<Message> candidates(const GlobalState& s, const Config& cfg, Rule rule, int actor) {
  const MessagePattern pattern = receive_pattern(s, rule, actor);
  const Channel& chan = [&]() -> const Channel& {
    switch (rule) {
      case Rule::kRecvPromise: return s.promise;
      case Rule::kAcceptorPrepare: return s.prepare;
      case Rule::kAcceptorAccept: return s.accept;
      default: return s.learn;
    }
  }();
  if (cfg.receive == ReceiveMode::kAnyMatch) return chan.distinct_matches(pattern);
  std::optional<Message> m;
  if (rule == Rule::kAcceptorPrepare && !is_baseline(cfg)) {
    m = first_persistent_prepare(s, actor);
  } else {
    m = chan.peek(pattern);
  }
  if (!m) return {};
  return {*m};
}

void check_acceptor_monotonicity(const GlobalState& before, const GlobalState& after) {
  for (std::size_t i = 0; i < before.acceptors().size(); ++i) {
    if (after.acceptors()[i].rnd < before.acceptors()[i].rnd) {
      throw std::logic_error("acceptor " + std::to_string(i) + " round decreased");
    }
  }
}

}  // namespace

const char* to_string(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> parse_rule(const std::string& name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (name == kRuleNames[i]) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

const char* actor_role(Rule r) {
  switch (r) {
    case Rule::kSendPrepare:
    case Rule::kBroadcastPrepare:
    case Rule::kRecvPromise:
    case Rule::kSendAccept:
    case Rule::kQuorumStep:
      return "proposer";
    case Rule::kAcceptorPrepare:
    case Rule::kAcceptorAccept:
      return "acceptor";
    case Rule::kLearnAbstract:
    case Rule::kLearnConcrete:
      return "learner";
  }
  return "?";
}

std::uint32_t Transition::pack() const {
  std::uint32_t bits = static_cast<std::uint32_t>(rule) & 0xf;
  bits = (bits << 3) | (actor & 0x7u);
  bits = (bits << 3) | (static_cast<std::uint32_t>(msg.kind()) & 0x7u);
  for (std::size_t i = 0; i < 3; ++i) {
    bits = (bits << 6) | (static_cast<std::uint32_t>(msg.field(i) + 1) & 0x3fu);
  }
  return bits;
}

Transition Transition::unpack(std::uint32_t bits) {
  std::array<int, 3> f{};
  for (int i = 2; i >= 0; --i) {
    f[i] = static_cast<int>(bits & 0x3f) - 1;
    bits >>= 6;
  }
  const auto kind = static_cast<MessageKind>(bits & 0x7);
  bits >>= 3;
  Transition t;
  t.actor = static_cast<std::uint8_t>(bits & 0x7);
  t.rule = static_cast<Rule>((bits >> 3) & 0xf);
  switch (kind) {
    case MessageKind::kNone: break;
    case MessageKind::kPrepare: t.msg = Message::prepare(f[0], f[1]); break;
    case MessageKind::kPromise: t.msg = Message::promise(f[0], f[1], f[2]); break;
    case MessageKind::kAccept: t.msg = Message::accept(f[0], f[1], f[2]); break;
    case MessageKind::kLearn: t.msg = Message::learn(f[0], f[1], f[2]); break;
  }
  return t;
}

std::string to_string(const Transition& t) {
  std::ostringstream os;
  os << actor_role(t.rule) << '[' << int(t.actor) << "]." << to_string(t.rule);
  if (!t.msg.empty()) os << ' ' << t.msg;
  return os.str();
}

GlobalState initial_state(const Config& cfg) {
  cfg.validate();
  GlobalState s;
  const int cap = cfg.capacity();
  s.prepare = Channel(cap, cfg.channel_mode);
  s.promise = Channel(cap, cfg.channel_mode);
  s.accept = Channel(cap, cfg.channel_mode);
  s.learn = Channel(cap, cfg.channel_mode);
  s.num_proposers = static_cast<std::uint8_t>(cfg.proposers);
  s.num_acceptors = static_cast<std::uint8_t>(cfg.acceptors);
  s.num_learners = static_cast<std::uint8_t>(cfg.learners.count);
  for (int i = 0; i < cfg.proposers; ++i) {
    auto& p = s.proposers()[i];
    p.round = static_cast<std::int8_t>(i + 1);
    p.myval = static_cast<std::int8_t>(i + 1);
  }
  for (int i = 0; i < cfg.acceptors; ++i) s.acceptors()[i].id = static_cast<std::int8_t>(i);
  return s;
}

MessagePattern receive_pattern(const GlobalState& s, Rule rule, int actor) {
  switch (rule) {
    case Rule::kRecvPromise:
      return MessagePattern::promise_round(s.proposers()[actor].round);
    case Rule::kAcceptorPrepare:
    case Rule::kAcceptorAccept:
      return MessagePattern::for_acceptor(actor);
    default:
      return MessagePattern::any();
  }
}

std::optional<GlobalState> broadcast_prepare(const GlobalState& s, const Config& cfg, int p) {
  const ProposerState& pr = s.proposers()[p];
  if (pr.phase != Phase::kStart) return std::nullopt;
  GlobalState next = s;
  ProposerState& np = next.proposers()[p];
  if (is_baseline(cfg)) {
    if (!next.prepare.insert(Message::prepare(pr.prepares_sent, pr.round))) return std::nullopt;
    ++np.prepares_sent;
  } else {
    if (next.prepare.room() < cfg.acceptors) return std::nullopt;
    for (int i = 0; i < cfg.acceptors; ++i) next.prepare.insert(Message::prepare(i, pr.round));
    np.prepares_sent = static_cast<std::int8_t>(cfg.acceptors);
  }
  if (np.prepares_sent == cfg.acceptors) np.phase = Phase::kCollecting;
  return next;
}

std::optional<GlobalState> proposer_recv_promise(const GlobalState& s, const Config& cfg, int p,
                                                 std::optional<Message> chosen) {
  const ProposerState& pr = s.proposers()[p];
  if (!is_baseline(cfg) || pr.phase != Phase::kCollecting) return std::nullopt;
  auto m = resolve(s.promise, receive_pattern(s, Rule::kRecvPromise, p), chosen);
  if (!m) return std::nullopt;
  GlobalState next = s;
  next.promise.remove(*m);
  ProposerState& np = next.proposers()[p];
  if (np.count < cfg.quorum()) ++np.count;
  if (m->vrnd() > np.hr) {
    np.hr = static_cast<std::int8_t>(m->vrnd());
    np.hval = static_cast<std::int8_t>(m->vval());
  }
  return next;
}

std::optional<GlobalState> proposer_try_accept(const GlobalState& s, const Config& cfg, int p) {
  const ProposerState& pr = s.proposers()[p];
  if (!is_baseline(cfg) || pr.phase != Phase::kCollecting || pr.count < cfg.quorum()) {
    return std::nullopt;
  }
  GlobalState next = s;
  const int value = pr.hval < 0 ? pr.myval : pr.hval;
  if (!broadcast_accept(next, pr.round, value)) return std::nullopt;
  next.proposers()[p].phase = Phase::kDone;
  return next;
}

std::optional<GlobalState> proposer_quorum_step(const GlobalState& s, const Config& cfg, int p) {
  const ProposerState& pr = s.proposers()[p];
  if (is_baseline(cfg) || pr.phase != Phase::kCollecting) return std::nullopt;
  // Counting guard: non-destructive scan of the whole promise channel.
  int count = 0;
  int hr = -1;
  int hv = -1;
  for (const Message& m : s.promise.contents()) {
    if (m.round() != pr.round) continue;
    ++count;
    if (m.vrnd() > hr) {
      hr = m.vrnd();
      hv = m.vval();
    }
  }
  if (count < cfg.quorum()) return std::nullopt;
  GlobalState next = s;
  if (!broadcast_accept(next, pr.round, hr < 0 ? pr.myval : hv)) return std::nullopt;
  next.proposers()[p].phase = Phase::kDone;
  return next;
}

std::optional<GlobalState> acceptor_recv_prepare(const GlobalState& s, const Config& cfg, int a,
                                                 std::optional<Message> chosen) {
  std::optional<Message> m;
  if (chosen || is_baseline(cfg)) {
    m = resolve(s.prepare, receive_pattern(s, Rule::kAcceptorPrepare, a), chosen);
  } else {
    m = first_persistent_prepare(s, a);
  }
  if (!m) return std::nullopt;
  GlobalState next = s;
  if (is_baseline(cfg)) next.prepare.remove(*m);
  AcceptorState& acc = next.acceptors()[a];
  if (m->round() > acc.rnd) {
    const bool send = is_baseline(cfg) || !cfg.faithful_optimized_acceptor;
    if (send && !next.promise.insert(Message::promise(m->round(), acc.vrnd, acc.vval))) {
      return std::nullopt;
    }
    acc.rnd = static_cast<std::int8_t>(m->round());
  }
  return next;
}

std::optional<GlobalState> acceptor_recv_accept(const GlobalState& s, const Config& /*cfg*/, int a,
                                                std::optional<Message> chosen) {
  auto m = resolve(s.accept, receive_pattern(s, Rule::kAcceptorAccept, a), chosen);
  if (!m) return std::nullopt;
  GlobalState next = s;
  next.accept.remove(*m);
  AcceptorState& acc = next.acceptors()[a];
  if (m->round() >= acc.rnd) {
    if (!next.learn.insert(Message::learn(a, m->round(), m->value()))) return std::nullopt;
    acc.rnd = static_cast<std::int8_t>(m->round());
    acc.vrnd = static_cast<std::int8_t>(m->round());
    acc.vval = static_cast<std::int8_t>(m->value());
  }
  return next;
}

std::optional<GlobalState> abstract_learner_step(const GlobalState& s, const Config& cfg,
                                                 std::optional<Message> chosen) {
  if (cfg.learners.kind != LearnerKind::kAbstract) return std::nullopt;
  auto m = resolve(s.learn, MessagePattern::any(), chosen);
  if (!m) return std::nullopt;
  GlobalState next = s;
  next.learn.remove(*m);
  LearnerState& l = next.learners()[0];
  auto& votes = l.mcount.at(static_cast<std::size_t>(m->round()));
  if (votes < cfg.quorum()) ++votes;
  if (votes >= cfg.quorum()) {
    if (l.lastval >= 0 && l.lastval != m->value()) {
      next.violation = true;
    } else if (l.lastval == -1) {
      l.lastval = static_cast<std::int8_t>(m->value());
    }
  }
  return next;
}

std::optional<GlobalState> concrete_learner_step(const GlobalState& s, const Config& cfg, int l,
                                                 std::optional<Message> chosen) {
  if (cfg.learners.kind != LearnerKind::kConcrete) return std::nullopt;
  auto m = resolve(s.learn, MessagePattern::any(), chosen);
  if (!m) return std::nullopt;
  GlobalState next = s;
  next.learn.remove(*m);
  LearnerState& me = next.learners()[l];
  auto& votes = me.mcount.at(static_cast<std::size_t>(m->round()));
  if (votes < cfg.quorum()) ++votes;
  if (votes >= cfg.quorum() && me.learned_value < 0) {
    me.learned_round = static_cast<std::int8_t>(m->round());
    me.learned_value = static_cast<std::int8_t>(m->value());
    for (const LearnerState& other : next.learners()) {
      if (other.learned_value >= 0 && other.learned_value != me.learned_value) {
        next.violation = true;
      }
    }
  }
  return next;
}

std::vector<Successor> successors(const GlobalState& s, const Config& cfg) {
  std::vector<Successor> out;
  auto add = [&](Rule rule, int actor, Message msg, std::optional<GlobalState> next) {
    if (next) out.push_back({Transition{rule, static_cast<std::uint8_t>(actor), msg}, *next});
  };
  auto add_receives = [&](Rule rule, int actor, auto&& step) {
    for (const Message& m : candidates(s, cfg, rule, actor)) add(rule, actor, m, step(m));
  };

  for (int p = 0; p < s.num_proposers; ++p) {
    const ProposerState& pr = s.proposers()[p];
    if (pr.phase == Phase::kStart) {
      if (is_baseline(cfg)) {
        add(Rule::kSendPrepare, p, Message::prepare(pr.prepares_sent, pr.round),
            broadcast_prepare(s, cfg, p));
      } else {
        add(Rule::kBroadcastPrepare, p, Message{}, broadcast_prepare(s, cfg, p));
      }
    } else if (pr.phase == Phase::kCollecting) {
      if (is_baseline(cfg)) {
        add_receives(Rule::kRecvPromise, p,
                     [&](const Message& m) { return proposer_recv_promise(s, cfg, p, m); });
        add(Rule::kSendAccept, p, Message{}, proposer_try_accept(s, cfg, p));
      } else {
        add(Rule::kQuorumStep, p, Message{}, proposer_quorum_step(s, cfg, p));
      }
    }
  }
  for (int a = 0; a < s.num_acceptors; ++a) {
    add_receives(Rule::kAcceptorPrepare, a,
                 [&](const Message& m) { return acceptor_recv_prepare(s, cfg, a, m); });
    add_receives(Rule::kAcceptorAccept, a,
                 [&](const Message& m) { return acceptor_recv_accept(s, cfg, a, m); });
  }
  if (cfg.learners.kind == LearnerKind::kAbstract) {
    add_receives(Rule::kLearnAbstract, 0,
                 [&](const Message& m) { return abstract_learner_step(s, cfg, m); });
  } else {
    for (int l = 0; l < s.num_learners; ++l) {
      add_receives(Rule::kLearnConcrete, l,
                   [&](const Message& m) { return concrete_learner_step(s, cfg, l, m); });
    }
  }
  return out;
}

std::vector<Transition> enabled_transitions(const GlobalState& s, const Config& cfg) {
  std::vector<Transition> out;
  for (auto& succ : successors(s, cfg)) out.push_back(succ.transition);
  return out;
}

GlobalState apply(const GlobalState& s, const Config& cfg, const Transition& t) {
  for (auto& succ : successors(s, cfg)) {
    if (succ.transition == t) {
      check_acceptor_monotonicity(s, succ.state);
      return succ.state;
    }
  }
  throw ContractViolation("transition not enabled: " + to_string(t));
}

std::optional<std::pair<int, int>> observed_majority(const GlobalState& after, const Config& cfg,
                                                     const Transition& t) {
  if (t.rule != Rule::kLearnAbstract && t.rule != Rule::kLearnConcrete) return std::nullopt;
  const LearnerState& l = after.learners()[t.actor];
  const int r = t.msg.round();
  if (l.mcount.at(static_cast<std::size_t>(r)) < cfg.quorum()) return std::nullopt;
  return std::make_pair(r, t.msg.value());
}

}  // namespace paxmc
