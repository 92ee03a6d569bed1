#include "paxmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace paxmc {

namespace {

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::string csv_row(const Config& cfg, const Report& report) {
  std::ostringstream os;
  os << cfg.proposers << ',' << cfg.acceptors << ',' << cfg.capacity() << ',' << cfg.quorum()
     << ',' << to_string(cfg.variant) << ',' << to_string(cfg.receive) << ','
     << to_string(report.verdict) << ',' << report.states_explored << ','
     << report.transitions_fired << ',' << report.max_depth << ',' << std::fixed
     << std::setprecision(3) << report.wall_time_ms;
  return os.str();
}

std::optional<CsvRecord> parse_csv_row(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  for (std::string col; std::getline(ss, col, ',');) cols.push_back(col);
  if (cols.size() != 11) return std::nullopt;
  try {
    CsvRecord rec;
    rec.config.proposers = to_int(cols[0]);
    rec.config.acceptors = to_int(cols[1]);
    rec.config.channel_cap = to_int(cols[2]);
    rec.config.maj = to_int(cols[3]);
    auto variant = parse_variant(cols[4]);
    auto receive = parse_receive_mode(cols[5]);
    auto verdict = parse_verdict(cols[6]);
    if (!variant || !receive || !verdict) return std::nullopt;
    rec.config.variant = *variant;
    rec.config.receive = *receive;
    rec.report.verdict = *verdict;
    rec.report.states_explored = std::stoull(cols[7]);
    rec.report.transitions_fired = std::stoull(cols[8]);
    rec.report.max_depth = static_cast<std::uint32_t>(std::stoul(cols[9]));
    rec.report.wall_time_ms = std::stod(cols[10]);
    return rec;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<Config> sweep_configs(const SweepSpec& spec, std::ostream& err) {
  std::vector<Config> out;
  std::vector<int> explicit_maj;
  if (spec.maj != "default" && spec.maj != "all") explicit_maj = parse_int_list(spec.maj);
  for (int p : spec.proposers) {
    for (int a : spec.acceptors) {
      std::vector<std::optional<int>> majs;
      if (spec.maj == "default") {
        majs.push_back(std::nullopt);
      } else if (spec.maj == "all") {
        for (int m = 1; m <= a; ++m) majs.push_back(m);
      } else {
        majs.assign(explicit_maj.begin(), explicit_maj.end());
      }
      for (const auto& maj : majs) {
        for (Variant v : spec.variants) {
          for (ReceiveMode r : spec.receive_modes) {
            Config cfg = spec.base;
            cfg.proposers = p;
            cfg.acceptors = a;
            cfg.maj = maj;
            cfg.channel_cap = spec.channel_cap;
            cfg.variant = v;
            cfg.receive = r;
            try {
              cfg.validate();
            } catch (const ConfigError& e) {
              err << "skipping " << describe(cfg) << ": " << e.what() << '\n';
              continue;
            }
            out.push_back(cfg);
          }
        }
      }
    }
  }
  return out;
}

std::optional<int> minimal_safe_maj(const std::vector<SweepRow>& rows, int proposers,
                                    int acceptors, Variant variant, ReceiveMode receive) {
  std::optional<int> best;
  for (const SweepRow& row : rows) {
    const Config& c = row.config;
    if (c.proposers != proposers || c.acceptors != acceptors || c.variant != variant ||
        c.receive != receive || row.report.verdict != Verdict::kSafe) {
      continue;
    }
    if (!best || c.quorum() < *best) best = c.quorum();
  }
  return best;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  const std::vector<Config> configs = sweep_configs(spec, err);
  std::vector<SweepRow> rows;
  std::mutex writer;
  out << kCsvHeader << '\n';

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
      Report report = explore(configs[i], spec.explore);
      std::lock_guard lock(writer);
      out << csv_row(configs[i], report) << '\n' << std::flush;
      rows.push_back({configs[i], std::move(report)});
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < std::max(1, spec.jobs); ++j) pool.emplace_back(work);
    work();
  }

  std::vector<std::tuple<int, int, Variant, ReceiveMode>> groups;
  for (const Config& c : configs) {
    auto key = std::make_tuple(c.proposers, c.acceptors, c.variant, c.receive);
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  for (const auto& [p, a, v, r] : groups) {
    const auto m = minimal_safe_maj(rows, p, a, v, r);
    out << "# min-safe-maj proposers=" << p << " acceptors=" << a << " variant=" << to_string(v)
        << " receive=" << to_string(r) << " maj=" << (m ? std::to_string(*m) : "none") << '\n';
  }
  return rows;
}

}  // namespace paxmc
