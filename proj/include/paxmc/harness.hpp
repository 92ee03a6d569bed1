#ifndef PAXMC_HARNESS_HPP_
#define PAXMC_HARNESS_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "paxmc/config.hpp"
#include "paxmc/explorer.hpp"

namespace paxmc {

inline constexpr const char* kCsvHeader =
    "proposers,acceptors,channel_cap,maj,variant,receive_mode,verdict,states,transitions,"
    "max_depth,time_ms";

std::string csv_row(const Config& cfg, const Report& report);

struct CsvRecord {
  Config config;
  Report report;
};

/// Inverse of csv_row (time is parsed back at the printed precision).
std::optional<CsvRecord> parse_csv_row(const std::string& line);

/// "3", "2..4", "2,3,5" or a mix ("1,3..4"). An empty or descending range
/// yields no values. Throws std::invalid_argument on malformed text.
std::vector<int> parse_int_list(const std::string& text);

struct SweepSpec {
  std::vector<int> proposers{2};
  std::vector<int> acceptors{3};
  // maj per acceptor count: "default" (A/2+1), "all" (1..A) or explicit values.
  std::string maj = "default";
  std::optional<int> channel_cap;  // nullopt = auto (A*P)
  std::vector<Variant> variants{Variant::kBaseline};
  std::vector<ReceiveMode> receive_modes{ReceiveMode::kFirstMatch};
  Config base;  // learners, channel mode, acceptor fidelity flag
  ExploreOptions explore;
  int jobs = 1;
};

/// Every Config the sweep covers. Invalid combinations are reported on `err`
/// and left out.
std::vector<Config> sweep_configs(const SweepSpec& spec, std::ostream& err);

struct SweepRow {
  Config config;
  Report report;
};

/**
 * Runs the sweep, writing the CSV header, one row per config as it
 * completes (serialized by a single writer), then `# min-safe-maj` summary
 * lines per (P, A, variant, receive mode).
 */
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err);

/// Minimal maj with a Safe verdict among `rows` for one (P, A, variant,
/// receive mode) group; nullopt when none is Safe.
std::optional<int> minimal_safe_maj(const std::vector<SweepRow>& rows, int proposers,
                                    int acceptors, Variant variant, ReceiveMode receive);

}  // namespace paxmc

#endif  // PAXMC_HARNESS_HPP_
