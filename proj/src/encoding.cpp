#include "paxmc/encoding.hpp"

#include <stdexcept>

#include "paxmc/model.hpp"

namespace paxmc {

namespace {

char byte(int v) { return static_cast<char>(static_cast<std::int8_t>(v)); }

void put_channel(const Channel& c, Encoding& out) {
  out.push_back(byte(c.size()));
  for (const Message& m : c.contents()) {
    out.push_back(byte(m.field(0)));
    if (m.kind() != MessageKind::kPrepare) out.push_back(byte(m.field(1)));
    out.push_back(byte(m.kind() == MessageKind::kPrepare ? m.field(1) : m.field(2)));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  int next() {
    if (pos_ >= bytes_.size()) throw std::invalid_argument("truncated state encoding");
    return static_cast<std::int8_t>(bytes_[pos_++]);
  }
  std::int8_t next8() { return static_cast<std::int8_t>(next()); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void get_channel(Reader& in, MessageKind kind, Channel& c) {
  const int n = in.next();
  if (n < 0 || n > c.capacity()) throw std::invalid_argument("channel size out of range");
  for (int i = 0; i < n; ++i) {
    const int a = in.next();
    const int b = in.next();
    Message m;
    switch (kind) {
      case MessageKind::kPrepare: m = Message::prepare(a, b); break;
      case MessageKind::kPromise: m = Message::promise(a, b, in.next()); break;
      case MessageKind::kAccept: m = Message::accept(a, b, in.next()); break;
      case MessageKind::kLearn: m = Message::learn(a, b, in.next()); break;
      case MessageKind::kNone: break;
    }
    // Sorted contents re-insert at the tail, so both modes keep queue order.
    c.insert(m);
  }
}

}  // namespace

void encode_into(const GlobalState& s, Encoding& out) {
  out.clear();
  put_channel(s.prepare, out);
  put_channel(s.promise, out);
  put_channel(s.accept, out);
  put_channel(s.learn, out);
  for (const ProposerState& p : s.proposers()) {
    out.push_back(byte(static_cast<int>(p.phase) | (p.prepares_sent << 2)));
    out.push_back(byte(p.count));
    out.push_back(byte(p.hr));
    out.push_back(byte(p.hval));
  }
  for (const AcceptorState& a : s.acceptors()) {
    out.push_back(byte(a.rnd));
    out.push_back(byte(a.vrnd));
    out.push_back(byte(a.vval));
  }
  for (const LearnerState& l : s.learners()) {
    out.push_back(byte(l.lastval));
    out.push_back(byte(l.learned_round));
    out.push_back(byte(l.learned_value));
    for (std::size_t r = 1; r <= s.num_proposers; ++r) out.push_back(byte(l.mcount[r]));
  }
  out.push_back(byte(s.violation ? 1 : 0));
}

Encoding encode(const GlobalState& s) {
  Encoding out;
  encode_into(s, out);
  return out;
}

GlobalState decode(std::string_view bytes, const Config& cfg) {
  GlobalState s = initial_state(cfg);
  Reader in(bytes);
  get_channel(in, MessageKind::kPrepare, s.prepare);
  get_channel(in, MessageKind::kPromise, s.promise);
  get_channel(in, MessageKind::kAccept, s.accept);
  get_channel(in, MessageKind::kLearn, s.learn);
  for (ProposerState& p : s.proposers()) {
    const int head = in.next();
    p.phase = static_cast<Phase>(head & 0x3);
    p.prepares_sent = static_cast<std::int8_t>(head >> 2);
    p.count = in.next8();
    p.hr = in.next8();
    p.hval = in.next8();
  }
  for (AcceptorState& a : s.acceptors()) {
    a.rnd = in.next8();
    a.vrnd = in.next8();
    a.vval = in.next8();
  }
  for (LearnerState& l : s.learners()) {
    l.lastval = in.next8();
    l.learned_round = in.next8();
    l.learned_value = in.next8();
    for (std::size_t r = 1; r <= s.num_proposers; ++r) l.mcount[r] = in.next8();
  }
  s.violation = in.next() != 0;
  if (!in.done()) throw std::invalid_argument("trailing bytes in state encoding");
  return s;
}

}  // namespace paxmc
