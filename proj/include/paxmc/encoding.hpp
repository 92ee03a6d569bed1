#ifndef PAXMC_ENCODING_HPP_
#define PAXMC_ENCODING_HPP_

#include <string>
#include <string_view>

#include "paxmc/config.hpp"
#include "paxmc/state.hpp"

namespace paxmc {

/// Compact canonical byte serialization of a GlobalState (state-vector
/// analogue). Channel contents are written in queue order, which is the
/// canonical multiset form in Sorted mode. Values fixed by the configuration
/// (proposer rounds and values, acceptor ids, capacities) are not written.
using Encoding = std::string;

Encoding encode(const GlobalState& s);
void encode_into(const GlobalState& s, Encoding& out);

/// Inverse of encode for states of `cfg`. Throws std::invalid_argument on
/// malformed input.
GlobalState decode(std::string_view bytes, const Config& cfg);

}  // namespace paxmc

#endif  // PAXMC_ENCODING_HPP_
