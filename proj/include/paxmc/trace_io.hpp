#ifndef PAXMC_TRACE_IO_HPP_
#define PAXMC_TRACE_IO_HPP_

#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "paxmc/config.hpp"
#include "paxmc/model.hpp"

namespace paxmc {

/**
 * Line-oriented counterexample file.
 *
 *   # paxmc-trace v1
 *   # proposers=2
 *   # ... one `# key=value` line per Config field ...
 *   0 | proposer[0] | send_prepare | Prepare(0,1) | prepares_sent 0->1 phase start->start
 *
 * Step lines carry: index | actor | rule | message (or "-") | local changes.
 * Only the first four columns are read back; the last is for auditing.
 */
void write_trace(std::ostream& os, const Config& cfg, const std::vector<Transition>& trace);

struct TraceFile {
  Config config;
  std::vector<Transition> steps;
};

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TraceFile read_trace(std::istream& is);

/// The `key=value` lines shared by trace headers and config files.
std::vector<std::pair<std::string, std::string>> config_entries(const Config& cfg);

/// Applies one `key=value` setting; returns false for unknown keys or values.
bool apply_config_entry(Config& cfg, const std::string& key, const std::string& value);

}  // namespace paxmc

#endif  // PAXMC_TRACE_IO_HPP_
