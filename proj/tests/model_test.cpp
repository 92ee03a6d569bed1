#include <gtest/gtest.h>

#include <algorithm>

#include "paxmc/model.hpp"

namespace paxmc {
namespace {

Config make(int p, int a, std::optional<int> maj = {}, Variant v = Variant::kBaseline) {
  Config c;
  c.proposers = p;
  c.acceptors = a;
  c.maj = maj;
  c.variant = v;
  return c;
}

std::vector<Message> contents(const Channel& c) {
  return {c.contents().begin(), c.contents().end()};
}

// --- initial state and config validation

TEST(InitialState, ProposersAndAcceptors) {
  const Config cfg = make(2, 3);
  const GlobalState s = initial_state(cfg);
  ASSERT_EQ(s.proposers().size(), 2u);
  EXPECT_EQ(s.proposers()[0].round, 1);
  EXPECT_EQ(s.proposers()[0].myval, 1);
  EXPECT_EQ(s.proposers()[1].round, 2);
  EXPECT_EQ(s.proposers()[1].myval, 2);
  for (const ProposerState& p : s.proposers()) {
    EXPECT_EQ(p.hr, -1);
    EXPECT_EQ(p.hval, -1);
    EXPECT_EQ(p.count, 0);
    EXPECT_EQ(p.phase, Phase::kStart);
  }
  ASSERT_EQ(s.acceptors().size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(s.acceptors()[i].id, i);
    EXPECT_EQ(s.acceptors()[i].rnd, -1);
    EXPECT_EQ(s.acceptors()[i].vrnd, -1);
    EXPECT_EQ(s.acceptors()[i].vval, -1);
  }
  ASSERT_EQ(s.learners().size(), 1u);
  EXPECT_EQ(s.learners()[0].lastval, -1);
  EXPECT_FALSE(s.violation);
  EXPECT_TRUE(s.prepare.empty() && s.promise.empty() && s.accept.empty() && s.learn.empty());
  EXPECT_EQ(s.prepare.capacity(), 6);
}

TEST(InitialState, MinimalSystem) {
  const GlobalState s = initial_state(make(1, 1, 1));
  EXPECT_EQ(s.proposers().size(), 1u);
  EXPECT_EQ(s.acceptors().size(), 1u);
}

TEST(Config, DefaultQuorumIsStrictMajority) {
  EXPECT_EQ(make(2, 1).quorum(), 1);
  EXPECT_EQ(make(2, 2).quorum(), 2);
  EXPECT_EQ(make(2, 3).quorum(), 2);
  EXPECT_EQ(make(2, 4).quorum(), 3);
  EXPECT_EQ(make(2, 5).quorum(), 3);
  EXPECT_EQ(make(3, 4).capacity(), 12);
}

TEST(Config, RejectsBadQuorumAndCapacity) {
  EXPECT_THROW(initial_state(make(2, 3, 0)), ConfigError);
  EXPECT_THROW(initial_state(make(2, 3, 4)), ConfigError);
  Config small = make(2, 3);
  small.channel_cap = 2;
  EXPECT_THROW(initial_state(small), ConfigError);
  EXPECT_THROW(initial_state(make(0, 3)), ConfigError);
  EXPECT_THROW(initial_state(make(2, 0)), ConfigError);
}

TEST(Config, ParsersRoundTrip) {
  EXPECT_EQ(parse_variant("optimized"), Variant::kOptimized);
  EXPECT_EQ(parse_receive_mode("any"), ReceiveMode::kAnyMatch);
  EXPECT_EQ(parse_channel_mode("fifo"), ChannelMode::kFifo);
  auto l = parse_learner_mode("concrete:2");
  ASSERT_TRUE(l);
  EXPECT_EQ(l->kind, LearnerKind::kConcrete);
  EXPECT_EQ(l->count, 2);
  EXPECT_FALSE(parse_learner_mode("concrete:x"));
  EXPECT_FALSE(parse_variant("fast"));
}

// --- proposer steps

TEST(BroadcastPrepare, OptimizedIsOneStep) {
  const Config cfg = make(2, 2, {}, Variant::kOptimized);
  auto s = broadcast_prepare(initial_state(cfg), cfg, 0);
  ASSERT_TRUE(s);
  EXPECT_EQ(contents(s->prepare), (std::vector{Message::prepare(0, 1), Message::prepare(1, 1)}));
  EXPECT_EQ(s->proposers()[0].phase, Phase::kCollecting);
}

TEST(BroadcastPrepare, BaselineSendsOneAtATime) {
  const Config cfg = make(2, 2);
  const GlobalState s0 = initial_state(cfg);
  auto s1 = broadcast_prepare(s0, cfg, 0);
  ASSERT_TRUE(s1);
  EXPECT_EQ(contents(s1->prepare), std::vector{Message::prepare(0, 1)});
  EXPECT_EQ(s1->proposers()[0].phase, Phase::kStart);

  // Another process can move between the two sends.
  auto other = acceptor_recv_prepare(*s1, cfg, 0);
  ASSERT_TRUE(other);
  auto s2 = broadcast_prepare(*other, cfg, 0);
  ASSERT_TRUE(s2);
  EXPECT_EQ(contents(s2->prepare), std::vector{Message::prepare(1, 1)});
  EXPECT_EQ(s2->proposers()[0].phase, Phase::kCollecting);
}

TEST(BroadcastPrepare, SingleAcceptorSameInBothVariants) {
  const Config base = make(2, 1);
  const Config opt = make(2, 1, {}, Variant::kOptimized);
  auto b = broadcast_prepare(initial_state(base), base, 1);
  auto o = broadcast_prepare(initial_state(opt), opt, 1);
  ASSERT_TRUE(b && o);
  EXPECT_EQ(contents(b->prepare), std::vector{Message::prepare(0, 2)});
  EXPECT_EQ(contents(b->prepare), contents(o->prepare));
  EXPECT_EQ(b->proposers()[1].phase, Phase::kCollecting);
  EXPECT_EQ(o->proposers()[1].phase, Phase::kCollecting);
}

TEST(BroadcastPrepare, DisabledWithoutRoom) {
  Config cfg = make(2, 2, {}, Variant::kOptimized);
  cfg.channel_cap = 3;
  auto s = broadcast_prepare(initial_state(cfg), cfg, 0);
  ASSERT_TRUE(s);
  EXPECT_FALSE(broadcast_prepare(*s, cfg, 1));
}

GlobalState collecting(const Config& cfg, int p) {
  GlobalState s = initial_state(cfg);
  s.proposers()[p].phase = Phase::kCollecting;
  s.proposers()[p].prepares_sent = static_cast<std::int8_t>(cfg.acceptors);
  return s;
}

TEST(RecvPromise, EmptyPromiseCountsOnly) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(1, -1, -1));
  auto n = proposer_recv_promise(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->proposers()[0].count, 1);
  EXPECT_EQ(n->proposers()[0].hr, -1);
  EXPECT_EQ(n->proposers()[0].hval, -1);
  EXPECT_TRUE(n->promise.empty());
}

TEST(RecvPromise, AdoptsHigherVotedValue) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 1);
  s.proposers()[1].count = 1;
  s.promise.insert(Message::promise(2, 1, 7));
  auto n = proposer_recv_promise(s, cfg, 1);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->proposers()[1].count, 2);
  EXPECT_EQ(n->proposers()[1].hr, 1);
  EXPECT_EQ(n->proposers()[1].hval, 7);
}

TEST(RecvPromise, CountSaturatesAtQuorum) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.proposers()[0].count = 2;
  s.promise.insert(Message::promise(1, -1, -1));
  auto n = proposer_recv_promise(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->proposers()[0].count, 2);
  EXPECT_TRUE(n->promise.empty());
}

TEST(RecvPromise, IgnoresOtherRounds) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(2, -1, -1));
  EXPECT_FALSE(proposer_recv_promise(s, cfg, 0));
}

TEST(TryAccept, BroadcastsOwnValueWithoutPriorVote) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.proposers()[0].count = 2;
  auto n = proposer_try_accept(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(contents(n->accept), (std::vector{Message::accept(0, 1, 1), Message::accept(1, 1, 1),
                                              Message::accept(2, 1, 1)}));
  EXPECT_EQ(n->proposers()[0].phase, Phase::kDone);
}

TEST(TryAccept, PropagatesHighestVotedValue) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 1);
  s.proposers()[1].count = 2;
  s.proposers()[1].hr = 1;
  s.proposers()[1].hval = 7;
  auto n = proposer_try_accept(s, cfg, 1);
  ASSERT_TRUE(n);
  for (const Message& m : n->accept.contents()) EXPECT_EQ(m.value(), 7);
}

TEST(TryAccept, DisabledBelowQuorum) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.proposers()[0].count = 1;
  EXPECT_FALSE(proposer_try_accept(s, cfg, 0));
}

TEST(QuorumStep, FiresOnEnoughPromises) {
  const Config cfg = make(2, 3, 2, Variant::kOptimized);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(1, -1, -1));
  s.promise.insert(Message::promise(1, -1, -1));
  auto n = proposer_quorum_step(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->accept.size(), 3);
  for (const Message& m : n->accept.contents()) EXPECT_EQ(m.value(), 1);
  EXPECT_EQ(n->proposers()[0].phase, Phase::kDone);
  // Promises are scanned, not consumed.
  EXPECT_EQ(n->promise.size(), 2);
  EXPECT_EQ(n->proposers()[0].count, 0);
}

TEST(QuorumStep, DisabledBelowQuorum) {
  const Config cfg = make(2, 3, 2, Variant::kOptimized);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(1, -1, -1));
  s.promise.insert(Message::promise(2, -1, -1));
  EXPECT_FALSE(proposer_quorum_step(s, cfg, 0));
}

TEST(QuorumStep, PicksValueOfHighestVote) {
  const Config cfg = make(3, 3, 2, Variant::kOptimized);
  GlobalState s = collecting(cfg, 2);
  s.promise.insert(Message::promise(3, 1, 5));
  s.promise.insert(Message::promise(3, 2, 9));
  auto n = proposer_quorum_step(s, cfg, 2);
  ASSERT_TRUE(n);
  for (const Message& m : n->accept.contents()) EXPECT_EQ(m.value(), 9);
}

TEST(QuorumStep, NotPartOfBaseline) {
  const Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(1, -1, -1));
  s.promise.insert(Message::promise(1, -1, -1));
  EXPECT_FALSE(proposer_quorum_step(s, cfg, 0));
}

// --- acceptor steps

TEST(AcceptorPrepare, FreshRoundPromises) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.prepare.insert(Message::prepare(1, 1));
  auto n = acceptor_recv_prepare(s, cfg, 1);
  ASSERT_TRUE(n);
  EXPECT_EQ(contents(n->promise), std::vector{Message::promise(1, -1, -1)});
  EXPECT_EQ(n->acceptors()[1].rnd, 1);
  EXPECT_TRUE(n->prepare.empty());
}

TEST(AcceptorPrepare, StaleRoundConsumedSilently) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.acceptors()[0].rnd = 2;
  s.prepare.insert(Message::prepare(0, 1));
  auto n = acceptor_recv_prepare(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_TRUE(n->promise.empty());
  EXPECT_EQ(n->acceptors()[0].rnd, 2);
  EXPECT_TRUE(n->prepare.empty());
}

TEST(AcceptorPrepare, PromiseCarriesPriorVote) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.acceptors()[2] = AcceptorState{2, 1, 1, 1};
  s.prepare.insert(Message::prepare(2, 2));
  auto n = acceptor_recv_prepare(s, cfg, 2);
  ASSERT_TRUE(n);
  EXPECT_EQ(contents(n->promise), std::vector{Message::promise(2, 1, 1)});
}

TEST(AcceptorPrepare, OptimizedReadIsPersistent) {
  const Config cfg = make(2, 3, {}, Variant::kOptimized);
  GlobalState s = initial_state(cfg);
  s.prepare.insert(Message::prepare(0, 1));
  auto n = acceptor_recv_prepare(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->acceptors()[0].rnd, 1);
  EXPECT_EQ(contents(n->prepare), std::vector{Message::prepare(0, 1)});
  EXPECT_EQ(contents(n->promise), std::vector{Message::promise(1, -1, -1)});

  // A second read of the same prepare changes nothing.
  auto again = acceptor_recv_prepare(*n, cfg, 0);
  ASSERT_TRUE(again);
  EXPECT_EQ(*again, *n);
}

TEST(AcceptorPrepare, OptimizedReadSkipsToFresherRound) {
  const Config cfg = make(2, 3, {}, Variant::kOptimized);
  GlobalState s = initial_state(cfg);
  s.acceptors()[0].rnd = 1;
  s.prepare.insert(Message::prepare(0, 1));
  s.prepare.insert(Message::prepare(0, 2));
  auto n = acceptor_recv_prepare(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->acceptors()[0].rnd, 2);
}

TEST(AcceptorPrepare, FaithfulOptimizedSendsNoPromise) {
  Config cfg = make(2, 3, {}, Variant::kOptimized);
  cfg.faithful_optimized_acceptor = true;
  GlobalState s = initial_state(cfg);
  s.prepare.insert(Message::prepare(0, 1));
  auto n = acceptor_recv_prepare(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->acceptors()[0].rnd, 1);
  EXPECT_TRUE(n->promise.empty());
}

TEST(AcceptorAccept, VotesAndReportsToLearner) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.accept.insert(Message::accept(0, 1, 1));
  auto n = acceptor_recv_accept(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->acceptors()[0], (AcceptorState{0, 1, 1, 1}));
  EXPECT_EQ(contents(n->learn), std::vector{Message::learn(0, 1, 1)});
  EXPECT_TRUE(n->accept.empty());
}

TEST(AcceptorAccept, StaleRoundDropped) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.acceptors()[1].rnd = 2;
  s.accept.insert(Message::accept(1, 1, 1));
  auto n = acceptor_recv_accept(s, cfg, 1);
  ASSERT_TRUE(n);
  EXPECT_TRUE(n->learn.empty());
  EXPECT_TRUE(n->accept.empty());
  EXPECT_EQ(n->acceptors()[1].rnd, 2);
  EXPECT_EQ(n->acceptors()[1].vrnd, -1);
}

TEST(AcceptorAccept, EqualRoundAccepted) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  s.acceptors()[0].rnd = 1;
  s.accept.insert(Message::accept(0, 1, 1));
  auto n = acceptor_recv_accept(s, cfg, 0);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->learn.size(), 1);
  EXPECT_EQ(n->acceptors()[0].vrnd, 1);
}

// --- learners

TEST(AbstractLearner, FirstMajorityFixesValue) {
  const Config cfg = make(2, 2, 1);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  auto n = abstract_learner_step(s, cfg);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->learners()[0].lastval, 1);
  EXPECT_FALSE(n->violation);
}

TEST(AbstractLearner, DisagreeingMajorityIsViolation) {
  const Config cfg = make(2, 2, 1);
  GlobalState s = initial_state(cfg);
  s.learners()[0].lastval = 1;
  s.learners()[0].mcount[1] = 1;
  s.learn.insert(Message::learn(1, 2, 2));
  auto n = abstract_learner_step(s, cfg);
  ASSERT_TRUE(n);
  EXPECT_TRUE(n->violation);
}

TEST(AbstractLearner, BelowQuorumOnlyCounts) {
  const Config cfg = make(2, 3, 2);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 2, 2));
  auto n = abstract_learner_step(s, cfg);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->learners()[0].mcount[2], 1);
  EXPECT_EQ(n->learners()[0].lastval, -1);
}

TEST(AbstractLearner, AgreeingMajorityIsFine) {
  const Config cfg = make(2, 2, 1);
  GlobalState s = initial_state(cfg);
  s.learners()[0].lastval = 1;
  s.learners()[0].mcount[1] = 1;
  s.learn.insert(Message::learn(1, 2, 1));
  auto n = abstract_learner_step(s, cfg);
  ASSERT_TRUE(n);
  EXPECT_FALSE(n->violation);
  EXPECT_EQ(n->learners()[0].lastval, 1);
}

TEST(AbstractLearner, CounterSaturatesAtQuorum) {
  const Config cfg = make(2, 3, 2);
  GlobalState s = initial_state(cfg);
  s.learners()[0].mcount[1] = 2;
  s.learners()[0].lastval = 1;
  s.learn.insert(Message::learn(2, 1, 1));
  auto n = abstract_learner_step(s, cfg);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->learners()[0].mcount[1], 2);
}

Config concrete(int p, int a, int maj, int n) {
  Config c = make(p, a, maj);
  c.learners = {LearnerKind::kConcrete, n};
  return c;
}

TEST(ConcreteLearner, DistinctLearnedValuesViolate) {
  const Config cfg = concrete(2, 2, 1, 2);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  s.learn.insert(Message::learn(1, 2, 2));
  auto a = concrete_learner_step(s, cfg, 0, Message::learn(0, 1, 1));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->learners()[0].learned_round, 1);
  EXPECT_EQ(a->learners()[0].learned_value, 1);
  EXPECT_FALSE(a->violation);
  auto b = concrete_learner_step(*a, cfg, 1, Message::learn(1, 2, 2));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->learners()[1].learned_value, 2);
  EXPECT_TRUE(b->violation);
}

TEST(ConcreteLearner, SingleMajorityIsSafe) {
  const Config cfg = concrete(2, 2, 1, 2);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  auto a = concrete_learner_step(s, cfg, 1);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->learners()[1].learned_value, 1);
  EXPECT_EQ(a->learners()[0].learned_value, -1);
  EXPECT_FALSE(a->violation);
}

TEST(ConcreteLearner, SameValueDifferentRoundsIsSafe) {
  const Config cfg = concrete(2, 2, 1, 2);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  s.learn.insert(Message::learn(1, 2, 1));
  auto a = concrete_learner_step(s, cfg, 0, Message::learn(0, 1, 1));
  ASSERT_TRUE(a);
  auto b = concrete_learner_step(*a, cfg, 1, Message::learn(1, 2, 1));
  ASSERT_TRUE(b);
  EXPECT_FALSE(b->violation);
}

TEST(ConcreteLearner, KeepsFirstMajorityOnly) {
  const Config cfg = concrete(2, 2, 1, 1);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  s.learn.insert(Message::learn(1, 2, 2));
  auto a = concrete_learner_step(s, cfg, 0, Message::learn(0, 1, 1));
  auto b = concrete_learner_step(*a, cfg, 0, Message::learn(1, 2, 2));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->learners()[0].learned_value, 1);
  EXPECT_FALSE(b->violation);
}

// --- enumeration and apply

TEST(Enabled, InitialBaselineSendsOnePreparePerProposer) {
  const Config cfg = make(2, 3);
  const auto ts = enabled_transitions(initial_state(cfg), cfg);
  ASSERT_EQ(ts.size(), 2u);
  for (const Transition& t : ts) EXPECT_EQ(t.rule, Rule::kSendPrepare);
  EXPECT_EQ(ts[0].actor, 0);
  EXPECT_EQ(ts[1].actor, 1);
}

TEST(Enabled, BaselineBroadcastTakesOneTransitionPerAcceptor) {
  const Config cfg = make(2, 3);
  GlobalState s = initial_state(cfg);
  int sends = 0;
  while (s.proposers()[0].phase == Phase::kStart) {
    auto ts = enabled_transitions(s, cfg);
    ASSERT_EQ(ts.front().rule, Rule::kSendPrepare);
    s = apply(s, cfg, ts.front());
    ++sends;
  }
  EXPECT_EQ(sends, 3);
}

TEST(Enabled, InitialOptimizedBroadcasts) {
  const Config cfg = make(2, 3, {}, Variant::kOptimized);
  const auto ts = enabled_transitions(initial_state(cfg), cfg);
  ASSERT_EQ(ts.size(), 2u);
  for (const Transition& t : ts) EXPECT_EQ(t.rule, Rule::kBroadcastPrepare);
}

TEST(Enabled, TerminalStateHasNoSteps) {
  const Config cfg = make(2, 2);
  GlobalState s = initial_state(cfg);
  for (ProposerState& p : s.proposers()) p.phase = Phase::kDone;
  EXPECT_TRUE(enabled_transitions(s, cfg).empty());
}

TEST(Enabled, EnumerationIsDeterministic) {
  const Config cfg = make(2, 2);
  GlobalState s = initial_state(cfg);
  for (int i = 0; i < 6; ++i) {
    const auto a = enabled_transitions(s, cfg);
    const auto b = enabled_transitions(s, cfg);
    ASSERT_EQ(a, b);
    ASSERT_FALSE(a.empty());
    s = apply(s, cfg, a.back());
  }
}

TEST(Enabled, AnyMatchFansOutPerDistinctMessage) {
  Config cfg = make(2, 3);
  GlobalState s = collecting(cfg, 0);
  s.promise.insert(Message::promise(1, -1, -1));
  s.promise.insert(Message::promise(1, 1, 2));
  auto count_recv = [&](const Config& c) {
    const auto ts = enabled_transitions(s, c);
    return std::count_if(ts.begin(), ts.end(),
                         [](const Transition& t) { return t.rule == Rule::kRecvPromise; });
  };
  EXPECT_EQ(count_recv(cfg), 1);
  cfg.receive = ReceiveMode::kAnyMatch;
  EXPECT_EQ(count_recv(cfg), 2);
}

TEST(Apply, PureAndRepeatable) {
  const Config cfg = make(2, 2);
  const GlobalState s = initial_state(cfg);
  const GlobalState copy = s;
  const Transition t = enabled_transitions(s, cfg).front();
  EXPECT_EQ(apply(s, cfg, t), apply(s, cfg, t));
  EXPECT_EQ(s, copy);
}

TEST(Apply, ConsumedMessageNotOfferedAgain) {
  const Config cfg = make(2, 2);
  GlobalState s = initial_state(cfg);
  s = apply(s, cfg, enabled_transitions(s, cfg).front());  // Prepare(0,1)
  const auto ts = enabled_transitions(s, cfg);
  auto recv = std::find_if(ts.begin(), ts.end(),
                           [](const Transition& t) { return t.rule == Rule::kAcceptorPrepare; });
  ASSERT_NE(recv, ts.end());
  const GlobalState n = apply(s, cfg, *recv);
  const auto after = enabled_transitions(n, cfg);
  EXPECT_EQ(std::find(after.begin(), after.end(), *recv), after.end());
}

TEST(Apply, RejectsDisabledTransition) {
  const Config cfg = make(2, 2);
  const GlobalState s = initial_state(cfg);
  const Transition bogus{Rule::kAcceptorAccept, 0, Message::accept(0, 1, 1)};
  EXPECT_THROW(apply(s, cfg, bogus), ContractViolation);
  EXPECT_THROW(apply(s, cfg, Transition{Rule::kQuorumStep, 0, {}}), ContractViolation);
}

TEST(Transition, PackRoundTrip) {
  const std::vector<Transition> ts = {
      {Rule::kSendPrepare, 1, Message::prepare(3, 2)},
      {Rule::kBroadcastPrepare, 7, {}},
      {Rule::kRecvPromise, 0, Message::promise(5, -1, -1)},
      {Rule::kAcceptorAccept, 7, Message::accept(7, 8, 8)},
      {Rule::kLearnConcrete, 3, Message::learn(6, 8, 8)},
  };
  for (const Transition& t : ts) {
    EXPECT_LT(t.pack(), 1u << 28);
    EXPECT_EQ(Transition::unpack(t.pack()), t) << to_string(t);
  }
}

TEST(ObservedMajority, ReportedOnlyAtQuorum) {
  const Config cfg = make(2, 3, 2);
  GlobalState s = initial_state(cfg);
  s.learn.insert(Message::learn(0, 1, 1));
  s.learn.insert(Message::learn(1, 1, 1));
  const Transition t{Rule::kLearnAbstract, 0, Message::learn(0, 1, 1)};
  const GlobalState a = apply(s, cfg, t);
  EXPECT_FALSE(observed_majority(a, cfg, t));
  const Transition u{Rule::kLearnAbstract, 0, Message::learn(1, 1, 1)};
  const GlobalState b = apply(a, cfg, u);
  EXPECT_EQ(observed_majority(b, cfg, u), std::make_pair(1, 1));
}

}  // namespace
}  // namespace paxmc
