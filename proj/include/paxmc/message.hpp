#ifndef PAXMC_MESSAGE_HPP_
#define PAXMC_MESSAGE_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace paxmc {

/// The four protocol channels; a message's kind names the channel it travels on.
enum class MessageKind : std::uint8_t { kNone = 0, kPrepare, kPromise, kAccept, kLearn };

const char* to_string(MessageKind kind);

/**
 * Wire value on one of the four channels.
 *
 * Fields are stored in declaration order of the payload so that the
 * lexicographic order over (kind, f0, f1, f2) is the canonical channel order:
 *
 *   Prepare{acceptor_id, round}
 *   Promise{round, vrnd, vval}
 *   Accept {acceptor_id, round, value}
 *   Learn  {acceptor_id, round, value}
 *
 * -1 is the "undefined" sentinel for vrnd/vval.
 */
class Message {
 public:
  constexpr Message() = default;

  static constexpr Message prepare(int acceptor_id, int round) {
    return Message(MessageKind::kPrepare, acceptor_id, round, 0);
  }
  static constexpr Message promise(int round, int vrnd, int vval) {
    return Message(MessageKind::kPromise, round, vrnd, vval);
  }
  static constexpr Message accept(int acceptor_id, int round, int value) {
    return Message(MessageKind::kAccept, acceptor_id, round, value);
  }
  static constexpr Message learn(int acceptor_id, int round, int value) {
    return Message(MessageKind::kLearn, acceptor_id, round, value);
  }

  constexpr MessageKind kind() const { return kind_; }
  constexpr bool empty() const { return kind_ == MessageKind::kNone; }

  // Prepare, Accept, Learn.
  constexpr int acceptor_id() const { return f_[0]; }
  constexpr int round() const {
    return kind_ == MessageKind::kPromise ? f_[0] : f_[1];
  }
  // Promise.
  constexpr int vrnd() const { return f_[1]; }
  constexpr int vval() const { return f_[2]; }
  // Accept, Learn.
  constexpr int value() const { return f_[2]; }

  /// Raw payload field in canonical order.
  constexpr int field(std::size_t i) const { return f_[i]; }

  friend constexpr auto operator<=>(const Message&, const Message&) = default;

  std::string to_string() const;

 private:
  constexpr Message(MessageKind kind, int a, int b, int c)
      : kind_(kind),
        f_{static_cast<std::int8_t>(a), static_cast<std::int8_t>(b),
           static_cast<std::int8_t>(c)} {}

  MessageKind kind_ = MessageKind::kNone;
  std::array<std::int8_t, 3> f_{};
};

std::ostream& operator<<(std::ostream& os, const Message& m);

/// Parses the form produced by Message::to_string, e.g. "Accept(1,2,7)".
std::optional<Message> parse_message(const std::string& text);

/**
 * Receive pattern: fixes any subset of the three payload fields, like
 * Promela's constants / eval(x) in a receive. An optional strict lower bound
 * on the round field supports the acceptor's fresh-prepare read.
 */
struct MessagePattern {
  std::array<std::optional<int>, 3> fields{};
  std::optional<int> round_above{};

  static MessagePattern any() { return {}; }
  static MessagePattern for_acceptor(int id) {
    MessagePattern p;
    p.fields[0] = id;
    return p;
  }
  static MessagePattern promise_round(int round) {
    MessagePattern p;
    p.fields[0] = round;
    return p;
  }

  bool matches(const Message& m) const {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i] && *fields[i] != m.field(i)) return false;
    }
    return !round_above || m.round() > *round_above;
  }
};

}  // namespace paxmc

#endif  // PAXMC_MESSAGE_HPP_
