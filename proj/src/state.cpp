#include "paxmc/state.hpp"

#include <sstream>

namespace paxmc {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kStart: return "start";
    case Phase::kCollecting: return "collecting";
    case Phase::kDone: return "done";
  }
  return "?";
}

Channel& GlobalState::channel(MessageKind kind) {
  return const_cast<Channel&>(std::as_const(*this).channel(kind));
}

const Channel& GlobalState::channel(MessageKind kind) const {
  switch (kind) {
    case MessageKind::kPrepare: return prepare;
    case MessageKind::kPromise: return promise;
    case MessageKind::kAccept: return accept;
    case MessageKind::kLearn: return learn;
    case MessageKind::kNone: break;
  }
  throw std::invalid_argument("no channel for an empty message");
}

namespace {

void dump_channel(std::ostream& os, const char* name, const Channel& c) {
  os << "  " << name << " [";
  for (int i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
  os << "]\n";
}

}  // namespace

std::string dump(const GlobalState& s) {
  std::ostringstream os;
  dump_channel(os, "prepare", s.prepare);
  dump_channel(os, "promise", s.promise);
  dump_channel(os, "accept ", s.accept);
  dump_channel(os, "learn  ", s.learn);
  for (std::size_t i = 0; i < s.proposers().size(); ++i) {
    const auto& p = s.proposers()[i];
    os << "  proposer[" << i << "] round=" << int(p.round) << " myval=" << int(p.myval)
       << " phase=" << to_string(p.phase) << " sent=" << int(p.prepares_sent)
       << " count=" << int(p.count) << " hr=" << int(p.hr) << " hval=" << int(p.hval) << '\n';
  }
  for (const auto& a : s.acceptors()) {
    os << "  acceptor[" << int(a.id) << "] rnd=" << int(a.rnd) << " vrnd=" << int(a.vrnd)
       << " vval=" << int(a.vval) << '\n';
  }
  for (std::size_t i = 0; i < s.learners().size(); ++i) {
    const auto& l = s.learners()[i];
    os << "  learner[" << i << "] lastval=" << int(l.lastval) << " learned=(" << int(l.learned_round)
       << ',' << int(l.learned_value) << ") mcount=";
    for (std::size_t r = 1; r <= s.num_proposers; ++r) os << (r > 1 ? "," : "") << int(l.mcount[r]);
    os << '\n';
  }
  os << "  violation=" << (s.violation ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace paxmc
