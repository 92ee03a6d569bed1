#include "paxmc/message.hpp"

#include <regex>
#include <sstream>

#include "paxmc/channel.hpp"

namespace paxmc {

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kNone: return "None";
    case MessageKind::kPrepare: return "Prepare";
    case MessageKind::kPromise: return "Promise";
    case MessageKind::kAccept: return "Accept";
    case MessageKind::kLearn: return "Learn";
  }
  return "?";
}

std::string Message::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Message& m) {
  os << to_string(m.kind());
  switch (m.kind()) {
    case MessageKind::kNone:
      return os << "()";
    case MessageKind::kPrepare:
      return os << '(' << m.field(0) << ',' << m.field(1) << ')';
    default:
      return os << '(' << m.field(0) << ',' << m.field(1) << ',' << m.field(2) << ')';
  }
}

std::optional<Message> parse_message(const std::string& text) {
  static const std::regex re(R"(\s*(None|Prepare|Promise|Accept|Learn)\(\s*(-?\d+)?\s*(?:,\s*(-?\d+)\s*)?(?:,\s*(-?\d+)\s*)?\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  auto num = [&](int i) { return std::stoi(m[i].str()); };
  const std::string kind = m[1].str();
  const int given = int(m[2].matched) + int(m[3].matched) + int(m[4].matched);
  if (kind == "None") return given == 0 ? std::optional<Message>(Message{}) : std::nullopt;
  if (kind == "Prepare") {
    if (given != 2) return std::nullopt;
    return Message::prepare(num(2), num(3));
  }
  if (given != 3) return std::nullopt;
  if (kind == "Promise") return Message::promise(num(2), num(3), num(4));
  if (kind == "Accept") return Message::accept(num(2), num(3), num(4));
  return Message::learn(num(2), num(3), num(4));
}

std::optional<std::pair<Message, Channel>> receive(Channel chan, const MessagePattern& pattern) {
  auto m = chan.receive(pattern);
  if (!m) return std::nullopt;
  return std::make_pair(*m, chan);
}

std::optional<Channel> insert(Channel chan, const Message& m) {
  if (!chan.insert(m)) return std::nullopt;
  return chan;
}

}  // namespace paxmc
