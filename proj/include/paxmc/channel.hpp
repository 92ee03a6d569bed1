#ifndef PAXMC_CHANNEL_HPP_
#define PAXMC_CHANNEL_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "paxmc/message.hpp"

namespace paxmc {

inline constexpr int kMaxChannelCapacity = 64;

/// Sorted: `!!` ordered insertion (canonical multiset form). Fifo: `!` append.
enum class ChannelMode : std::uint8_t { kSorted, kFifo };

/// FirstMatch: Promela `??` takes the first matching message in queue order.
/// AnyMatch: every distinct matching message is a separate branch.
enum class ReceiveMode : std::uint8_t { kFirstMatch, kAnyMatch };

/**
 * Bounded message buffer with inline storage. Capacity and mode are part of
 * the configuration, so they are stored alongside the contents to keep the
 * channel self-contained as a value.
 */
class Channel {
 public:
  Channel() = default;
  Channel(int capacity, ChannelMode mode)
      : capacity_(static_cast<std::uint8_t>(capacity)), mode_(mode) {}

  int capacity() const { return capacity_; }
  ChannelMode mode() const { return mode_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool full() const { return size_ >= capacity_; }
  int room() const { return capacity_ - size_; }

  std::span<const Message> contents() const { return {data_.data(), size_}; }
  const Message& operator[](int i) const { return data_[i]; }

  /// Returns false (and leaves the channel untouched) when full.
  bool insert(const Message& m) {
    if (full()) return false;
    auto* end = data_.data() + size_;
    auto* pos = end;
    if (mode_ == ChannelMode::kSorted) pos = std::upper_bound(data_.data(), end, m);
    std::move_backward(pos, end, end + 1);
    *pos = m;
    ++size_;
    return true;
  }

  /// Index of the first message matching `pattern` in queue order.
  std::optional<int> find(const MessagePattern& pattern) const {
    for (int i = 0; i < size_; ++i) {
      if (pattern.matches(data_[i])) return i;
    }
    return std::nullopt;
  }

  std::optional<Message> peek(const MessagePattern& pattern) const {
    if (auto i = find(pattern)) return data_[*i];
    return std::nullopt;
  }

  /// Removes the first message matching `pattern`.
  std::optional<Message> receive(const MessagePattern& pattern) {
    auto i = find(pattern);
    if (!i) return std::nullopt;
    Message m = data_[*i];
    erase_at(*i);
    return m;
  }

  /// Removes the first occurrence of exactly `m`.
  bool remove(const Message& m) {
    for (int i = 0; i < size_; ++i) {
      if (data_[i] == m) {
        erase_at(i);
        return true;
      }
    }
    return false;
  }

  /// Distinct matching messages, in queue order of first occurrence.
  std::vector<Message> distinct_matches(const MessagePattern& pattern) const {
    std::vector<Message> out;
    for (int i = 0; i < size_; ++i) {
      const Message& m = data_[i];
      if (pattern.matches(m) && std::find(out.begin(), out.end(), m) == out.end()) {
        out.push_back(m);
      }
    }
    return out;
  }

  bool contains(const Message& m) const {
    return std::find(data_.begin(), data_.begin() + size_, m) != data_.begin() + size_;
  }

  friend bool operator==(const Channel& a, const Channel& b) {
    return a.capacity_ == b.capacity_ && a.mode_ == b.mode_ &&
           std::ranges::equal(a.contents(), b.contents());
  }

 private:
  void erase_at(int i) {
    std::move(data_.begin() + i + 1, data_.begin() + size_, data_.begin() + i);
    --size_;
  }

  std::array<Message, kMaxChannelCapacity> data_{};
  std::uint8_t size_ = 0;
  std::uint8_t capacity_ = 0;
  ChannelMode mode_ = ChannelMode::kSorted;
};

/// Pairs a received message with the channel it was removed from.
std::optional<std::pair<Message, Channel>> receive(Channel chan, const MessagePattern& pattern);

/// Copying form of Channel::insert; nullopt when the channel is full.
std::optional<Channel> insert(Channel chan, const Message& m);

}  // namespace paxmc

#endif  // PAXMC_CHANNEL_HPP_
