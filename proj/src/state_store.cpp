#include "paxmc/state_store.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <stdexcept>

namespace paxmc {

StateStore::StateStore() : slots_(std::size_t{1} << 16, 0) {}

std::uint64_t StateStore::hash(std::string_view enc) const {
  // FNV-1a followed by a murmur finalizer.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : enc) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

std::optional<StateStore::Id> StateStore::find(std::string_view enc) const {
  const std::uint64_t h = hash(enc);
  const std::uint64_t tag = h >> 32;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = h & mask;; i = (i + 1) & mask) {
    const std::uint64_t slot = slots_[i];
    if (slot == 0) return std::nullopt;
    if ((slot >> 32) == tag) {
      const Id id = static_cast<Id>((slot & 0xffffffffu) - 1);
      if (encoding(id) == enc) return id;
    }
  }
}

std::pair<StateStore::Id, bool> StateStore::insert(std::string_view enc, Id parent,
                                                   const Transition& via) {
  if (enc.size() > 255) throw std::length_error("state encoding longer than 255 bytes");
  if ((size() + 1) * 10 > slots_.size() * 7) grow();
  const std::uint64_t h = hash(enc);
  const std::uint64_t tag = h >> 32;
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = h & mask;
  for (;; i = (i + 1) & mask) {
    const std::uint64_t slot = slots_[i];
    if (slot == 0) break;
    if ((slot >> 32) == tag) {
      const Id id = static_cast<Id>((slot & 0xffffffffu) - 1);
      if (encoding(id) == enc) return {id, false};
    }
  }
  if (chunk_used_ + enc.size() > kChunkBytes) {
    chunks_.push_back(std::make_unique<char[]>(kChunkBytes));
    chunk_used_ = 0;
  }
  char* dst = chunks_.back().get() + chunk_used_;
  std::memcpy(dst, enc.data(), enc.size());
  chunk_used_ += enc.size();

  const Id id = static_cast<Id>(size());
  starts_.push_back(dst);
  lengths_.push_back(static_cast<std::uint8_t>(enc.size()));
  parents_.push_back(parent);
  vias_.push_back(via.pack());
  slots_[i] = (tag << 32) | (std::uint64_t{id} + 1);
  return {id, true};
}

std::string_view StateStore::encoding(Id id) const { return {starts_[id], lengths_[id]}; }

void StateStore::grow() {
  std::vector<std::uint64_t> bigger(slots_.size() * 2, 0);
  const std::size_t mask = bigger.size() - 1;
  for (std::uint64_t slot : slots_) {
    if (slot == 0) continue;
    const Id id = static_cast<Id>((slot & 0xffffffffu) - 1);
    const std::uint64_t h = hash(encoding(id));
    std::size_t i = h & mask;
    while (bigger[i] != 0) i = (i + 1) & mask;
    bigger[i] = slot;
  }
  slots_ = std::move(bigger);
}

std::size_t StateStore::memory_bytes() const {
  return chunks_.size() * kChunkBytes + starts_.capacity() * sizeof(const char*) +
         lengths_.capacity() + parents_.capacity() * sizeof(Id) +
         vias_.capacity() * sizeof(std::uint32_t) + slots_.capacity() * sizeof(std::uint64_t);
}

std::vector<Transition> reconstruct_trace(const StateStore& store, StateStore::Id end) {
  std::vector<Transition> trace;
  if (end >= store.size()) throw std::logic_error("trace end is not a stored state");
  StateStore::Id cur = end;
  while (store.parent(cur) != StateStore::kNoParent) {
    const StateStore::Id prev = store.parent(cur);
    if (prev >= store.size()) throw std::logic_error("missing predecessor link");
    trace.push_back(store.via(cur));
    cur = prev;
    if (trace.size() > store.size()) throw std::logic_error("predecessor links form a cycle");
  }
  std::reverse(trace.begin(), trace.end());
  return trace;
}

}  // namespace paxmc
