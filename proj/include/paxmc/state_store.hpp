#ifndef PAXMC_STATE_STORE_HPP_
#define PAXMC_STATE_STORE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "paxmc/model.hpp"

namespace paxmc {

/**
 * Visited set of state encodings with a predecessor link per entry.
 *
 * Encodings live in a chunked byte arena and are addressed by dense ids
 * assigned in insertion order; an open-addressing table maps encodings to
 * ids. Not thread-safe: readers may run concurrently only while no insert is
 * in progress.
 */
class StateStore {
 public:
  using Id = std::uint32_t;
  static constexpr Id kNoParent = ~Id{0};

  StateStore();

  /// Inserts `enc` if absent. Returns its id and whether it was new.
  std::pair<Id, bool> insert(std::string_view enc, Id parent, const Transition& via);

  std::optional<Id> find(std::string_view enc) const;

  std::string_view encoding(Id id) const;
  Id parent(Id id) const { return parents_[id]; }
  Transition via(Id id) const { return Transition::unpack(vias_[id]); }

  std::size_t size() const { return parents_.size(); }
  std::size_t memory_bytes() const;

 private:
  static constexpr std::size_t kChunkBytes = std::size_t{1} << 22;

  std::uint64_t hash(std::string_view enc) const;
  void grow();

  std::vector<std::unique_ptr<char[]>> chunks_;
  std::size_t chunk_used_ = kChunkBytes;
  std::vector<const char*> starts_;
  std::vector<std::uint8_t> lengths_;
  std::vector<Id> parents_;
  std::vector<std::uint32_t> vias_;
  // Slot = (hash high 32 bits << 32) | (id + 1); 0 marks an empty slot.
  std::vector<std::uint64_t> slots_;
};

/// Transitions from the root to `end`, following predecessor links. Throws
/// std::logic_error when a link is missing.
std::vector<Transition> reconstruct_trace(const StateStore& store, StateStore::Id end);

}  // namespace paxmc

#endif  // PAXMC_STATE_STORE_HPP_
