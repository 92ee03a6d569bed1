#include "paxmc/trace_io.hpp"

#include <regex>
#include <sstream>
#include <string>

namespace paxmc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
void note_change(std::ostream& os, bool& any, const char* name, T before, T after) {
  if (before == after) return;
  os << (any ? " " : "") << name << ' ' << before << "->" << after;
  any = true;
}

// Local-variable changes of the acting process, plus the violation flag.
std::string changes(const GlobalState& before, const GlobalState& after, const Transition& t) {
  std::ostringstream os;
  bool any = false;
  const int i = t.actor;
  if (std::string(actor_role(t.rule)) == "proposer") {
    const auto& a = before.proposers()[i];
    const auto& b = after.proposers()[i];
    note_change(os, any, "phase", std::string(to_string(a.phase)), std::string(to_string(b.phase)));
    note_change(os, any, "prepares_sent", int(a.prepares_sent), int(b.prepares_sent));
    note_change(os, any, "count", int(a.count), int(b.count));
    note_change(os, any, "hr", int(a.hr), int(b.hr));
    note_change(os, any, "hval", int(a.hval), int(b.hval));
  } else if (std::string(actor_role(t.rule)) == "acceptor") {
    const auto& a = before.acceptors()[i];
    const auto& b = after.acceptors()[i];
    note_change(os, any, "rnd", int(a.rnd), int(b.rnd));
    note_change(os, any, "vrnd", int(a.vrnd), int(b.vrnd));
    note_change(os, any, "vval", int(a.vval), int(b.vval));
  } else {
    const auto& a = before.learners()[i];
    const auto& b = after.learners()[i];
    const int r = t.msg.round();
    note_change(os, any, ("mcount[" + std::to_string(r) + "]").c_str(), int(a.mcount[r]),
                int(b.mcount[r]));
    note_change(os, any, "lastval", int(a.lastval), int(b.lastval));
    note_change(os, any, "learned_value", int(a.learned_value), int(b.learned_value));
  }
  note_change(os, any, "violation", std::string(before.violation ? "true" : "false"),
              std::string(after.violation ? "true" : "false"));
  return any ? os.str() : "-";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_entries(const Config& cfg) {
  return {
      {"proposers", std::to_string(cfg.proposers)},
      {"acceptors", std::to_string(cfg.acceptors)},
      {"maj", std::to_string(cfg.quorum())},
      {"cap", std::to_string(cfg.capacity())},
      {"variant", to_string(cfg.variant)},
      {"learners", to_string(cfg.learners)},
      {"receive", to_string(cfg.receive)},
      {"channels", to_string(cfg.channel_mode)},
      {"faithful-optimized-acceptor", cfg.faithful_optimized_acceptor ? "true" : "false"},
  };
}

bool apply_config_entry(Config& cfg, const std::string& key, const std::string& value) {
  auto as_int = [&](int& dst) {
    try {
      std::size_t used = 0;
      dst = std::stoi(value, &used);
      return used == value.size();
    } catch (const std::exception&) {
      return false;
    }
  };
  int n = 0;
  if (key == "proposers") return as_int(cfg.proposers);
  if (key == "acceptors") return as_int(cfg.acceptors);
  if (key == "maj") {
    if (!as_int(n)) return false;
    cfg.maj = n;
    return true;
  }
  if (key == "cap") {
    if (value == "auto") {
      cfg.channel_cap.reset();
      return true;
    }
    if (!as_int(n)) return false;
    cfg.channel_cap = n;
    return true;
  }
  if (key == "variant") {
    auto v = parse_variant(value);
    if (v) cfg.variant = *v;
    return v.has_value();
  }
  if (key == "learners") {
    auto v = parse_learner_mode(value);
    if (v) cfg.learners = *v;
    return v.has_value();
  }
  if (key == "receive") {
    auto v = parse_receive_mode(value);
    if (v) cfg.receive = *v;
    return v.has_value();
  }
  if (key == "channels") {
    auto v = parse_channel_mode(value);
    if (v) cfg.channel_mode = *v;
    return v.has_value();
  }
  if (key == "faithful-optimized-acceptor") {
    if (value != "true" && value != "false") return false;
    cfg.faithful_optimized_acceptor = value == "true";
    return true;
  }
  return false;
}

void write_trace(std::ostream& os, const Config& cfg, const std::vector<Transition>& trace) {
  os << "# paxmc-trace v1\n";
  for (const auto& [k, v] : config_entries(cfg)) os << "# " << k << '=' << v << '\n';
  os << "# steps=" << trace.size() << '\n';
  GlobalState s = initial_state(cfg);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Transition& t = trace[i];
    GlobalState next = apply(s, cfg, t);
    os << i << " | " << actor_role(t.rule) << '[' << int(t.actor) << "] | " << to_string(t.rule)
       << " | " << (t.msg.empty() ? std::string("-") : t.msg.to_string()) << " | "
       << changes(s, next, t) << '\n';
    s = next;
  }
}

TraceFile read_trace(std::istream& is) {
  static const std::regex actor_re(R"((proposer|acceptor|learner)\[(\d+)\])");
  TraceFile file;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& why) {
    throw TraceFormatError("trace line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text[0] == '#') {
      const std::string body = trim(text.substr(1));
      if (body == "paxmc-trace v1") {
        header_seen = true;
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key == "steps") continue;
      if (!apply_config_entry(file.config, key, value)) fail("bad header entry '" + body + "'");
      continue;
    }
    if (!header_seen) fail("missing '# paxmc-trace v1' header");
    std::vector<std::string> cols;
    std::stringstream ss(text);
    for (std::string col; std::getline(ss, col, '|');) cols.push_back(trim(col));
    if (cols.size() < 4) fail("expected at least 4 '|'-separated columns");
    if (cols[0] != std::to_string(file.steps.size())) fail("step index out of sequence");
    std::smatch m;
    if (!std::regex_match(cols[1], m, actor_re)) fail("bad actor '" + cols[1] + "'");
    auto rule = parse_rule(cols[2]);
    if (!rule) fail("unknown rule '" + cols[2] + "'");
    if (m[1].str() != actor_role(*rule)) fail("rule does not belong to " + m[1].str());
    Transition t;
    t.rule = *rule;
    t.actor = static_cast<std::uint8_t>(std::stoi(m[2].str()));
    if (cols[3] != "-") {
      auto msg = parse_message(cols[3]);
      if (!msg) fail("bad message '" + cols[3] + "'");
      t.msg = *msg;
    }
    file.steps.push_back(t);
  }
  if (!header_seen) throw TraceFormatError("missing '# paxmc-trace v1' header");
  file.config.validate();
  return file;
}

}  // namespace paxmc
