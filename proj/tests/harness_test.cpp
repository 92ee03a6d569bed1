#include <gtest/gtest.h>

#include <sstream>

#include "paxmc/harness.hpp"
#include "paxmc/trace_io.hpp"

namespace paxmc {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

TEST(IntList, Forms) {
  EXPECT_EQ(parse_int_list("3"), std::vector{3});
  EXPECT_EQ(parse_int_list("2..4"), (std::vector{2, 3, 4}));
  EXPECT_EQ(parse_int_list("1,3..4"), (std::vector{1, 3, 4}));
  EXPECT_TRUE(parse_int_list("4..2").empty());
  EXPECT_TRUE(parse_int_list("").empty());
  EXPECT_THROW(parse_int_list("two"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("2..x"), std::invalid_argument);
}

TEST(Csv, RowParsesBack) {
  Config cfg;
  cfg.proposers = 2;
  cfg.acceptors = 3;
  cfg.maj = 2;
  cfg.variant = Variant::kOptimized;
  cfg.receive = ReceiveMode::kAnyMatch;
  const Report report = explore(cfg);
  const std::string row = csv_row(cfg, report);
  auto rec = parse_csv_row(row);
  ASSERT_TRUE(rec) << row;
  EXPECT_EQ(rec->config.proposers, 2);
  EXPECT_EQ(rec->config.acceptors, 3);
  EXPECT_EQ(rec->config.capacity(), 6);
  EXPECT_EQ(rec->config.quorum(), 2);
  EXPECT_EQ(rec->config.variant, Variant::kOptimized);
  EXPECT_EQ(rec->config.receive, ReceiveMode::kAnyMatch);
  EXPECT_EQ(rec->report.verdict, report.verdict);
  EXPECT_EQ(rec->report.states_explored, report.states_explored);
  EXPECT_EQ(rec->report.transitions_fired, report.transitions_fired);
  EXPECT_EQ(rec->report.max_depth, report.max_depth);
  EXPECT_NEAR(rec->report.wall_time_ms, report.wall_time_ms, 1e-3);
  EXPECT_EQ(csv_row(rec->config, rec->report), row);
}

TEST(Csv, HeaderHasElevenColumns) {
  const std::string h = kCsvHeader;
  EXPECT_EQ(std::count(h.begin(), h.end(), ','), 10);
  EXPECT_FALSE(parse_csv_row(h));
  EXPECT_FALSE(parse_csv_row("1,2,3"));
}

TEST(Sweep, InvalidCombinationsSkipped) {
  SweepSpec spec;
  spec.proposers = {2};
  spec.acceptors = {2, 3};
  spec.maj = "3";
  std::ostringstream err;
  const auto configs = sweep_configs(spec, err);
  ASSERT_EQ(configs.size(), 1u);
  EXPECT_EQ(configs[0].acceptors, 3);
  EXPECT_NE(err.str().find("skipping"), std::string::npos);
}

TEST(Sweep, GridExpansion) {
  SweepSpec spec;
  spec.proposers = {1, 2};
  spec.acceptors = {2, 3};
  spec.maj = "all";
  spec.variants = {Variant::kBaseline, Variant::kOptimized};
  std::ostringstream err;
  EXPECT_EQ(sweep_configs(spec, err).size(), 2u * (2 + 3) * 2);
  spec.maj = "default";
  EXPECT_EQ(sweep_configs(spec, err).size(), 2u * 2 * 2);
}

TEST(Sweep, EmptyRangeGivesHeaderOnly) {
  SweepSpec spec;
  spec.proposers = {};
  std::ostringstream out, err;
  const auto rows = run_sweep(spec, out, err);
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Sweep, MinimalSafeQuorum) {
  SweepSpec spec;
  spec.proposers = {2};
  spec.acceptors = {1, 2, 3};
  spec.maj = "all";
  spec.jobs = 2;
  std::ostringstream out, err;
  const auto rows = run_sweep(spec, out, err);
  ASSERT_EQ(rows.size(), 6u);
  for (int a : {1, 2, 3}) {
    EXPECT_EQ(minimal_safe_maj(rows, 2, a, Variant::kBaseline, ReceiveMode::kFirstMatch),
              a / 2 + 1);
  }
  const auto text = lines(out.str());
  ASSERT_EQ(text.size(), 1u + 6 + 3);
  EXPECT_EQ(text[0], kCsvHeader);
  for (std::size_t i = 1; i <= 6; ++i) EXPECT_TRUE(parse_csv_row(text[i])) << text[i];
  EXPECT_EQ(text[9], "# min-safe-maj proposers=2 acceptors=3 variant=baseline receive=first maj=2");
}

TEST(Sweep, VariantsGiveSameVerdicts) {
  SweepSpec spec;
  spec.proposers = {2};
  spec.acceptors = {3};
  spec.maj = "all";
  spec.variants = {Variant::kBaseline, Variant::kOptimized};
  std::ostringstream out, err;
  const auto rows = run_sweep(spec, out, err);
  for (int m = 1; m <= 3; ++m) {
    std::vector<Verdict> v;
    for (const SweepRow& r : rows) {
      if (r.config.quorum() == m) v.push_back(r.report.verdict);
    }
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], v[1]) << "MAJ=" << m;
  }
}

TEST(TraceIo, RoundTrip) {
  Config cfg;
  cfg.proposers = 2;
  cfg.acceptors = 2;
  cfg.maj = 1;
  cfg.variant = Variant::kOptimized;
  const Report r = explore(cfg);
  ASSERT_TRUE(r.trace);
  std::stringstream ss;
  write_trace(ss, cfg, *r.trace);
  const TraceFile file = read_trace(ss);
  EXPECT_EQ(file.steps, *r.trace);
  EXPECT_EQ(file.config.proposers, 2);
  EXPECT_EQ(file.config.acceptors, 2);
  EXPECT_EQ(file.config.quorum(), 1);
  EXPECT_EQ(file.config.variant, Variant::kOptimized);
  EXPECT_TRUE(replay(file.config, file.steps).violation);
}

TEST(TraceIo, StepLinesAreReadable) {
  Config cfg;
  cfg.proposers = 2;
  cfg.acceptors = 2;
  cfg.maj = 1;
  const Report r = explore(cfg);
  std::stringstream ss;
  write_trace(ss, cfg, *r.trace);
  const auto text = lines(ss.str());
  EXPECT_EQ(text[0], "# paxmc-trace v1");
  const std::string& first = *std::find_if(text.begin(), text.end(),
                                           [](const std::string& l) { return l[0] != '#'; });
  EXPECT_EQ(first.rfind("0 | proposer[", 0), 0u) << first;
  EXPECT_NE(text.back().find("| learn |"), std::string::npos) << text.back();
  EXPECT_NE(text.back().find("violation"), std::string::npos) << text.back();
}

TEST(TraceIo, RejectsMalformed) {
  std::istringstream missing_header("0 | proposer[0] | send_prepare | Prepare(0,1) |\n");
  EXPECT_THROW(read_trace(missing_header), TraceFormatError);
  std::istringstream bad_rule("# paxmc-trace v1\n# proposers=2\n0 | proposer[0] | fly | - |\n");
  EXPECT_THROW(read_trace(bad_rule), TraceFormatError);
  std::istringstream bad_key("# paxmc-trace v1\n# colour=blue\n");
  EXPECT_THROW(read_trace(bad_key), TraceFormatError);
}

TEST(ConfigEntries, RoundTrip) {
  Config cfg;
  cfg.proposers = 3;
  cfg.acceptors = 4;
  cfg.maj = 3;
  cfg.channel_cap = 20;
  cfg.variant = Variant::kOptimized;
  cfg.learners = {LearnerKind::kConcrete, 2};
  cfg.receive = ReceiveMode::kAnyMatch;
  cfg.channel_mode = ChannelMode::kFifo;
  cfg.faithful_optimized_acceptor = true;
  Config back;
  for (const auto& [k, v] : config_entries(cfg)) ASSERT_TRUE(apply_config_entry(back, k, v)) << k;
  EXPECT_EQ(config_entries(back), config_entries(cfg));
  EXPECT_FALSE(apply_config_entry(back, "maj", "x"));
  EXPECT_FALSE(apply_config_entry(back, "speed", "1"));
}

}  // namespace
}  // namespace paxmc
