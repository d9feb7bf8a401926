#include "mise/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string_view>

namespace mise {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint64_t to_u64(std::string_view v, std::size_t line) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError("config: expected unsigned integer, got '" +
                         std::string(v) + "'",
                     line);
  return out;
}

double to_double(std::string_view v, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(std::string(v), &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw ParseError("config: expected number, got '" + std::string(v) + "'",
                     line);
  }
}

bool to_bool(std::string_view v, std::size_t line) {
  if (v == "0" || v == "false") return false;
  if (v == "1" || v == "true") return true;
  throw ParseError("config: expected 0/1, got '" + std::string(v) + "'", line);
}

PolicyKind to_policy(std::string_view v, std::size_t line) {
  if (v == "frfcfs") return PolicyKind::FrFcfs;
  if (v == "always-prioritize") return PolicyKind::AlwaysPrioritize;
  if (v == "mise-qos") return PolicyKind::MiseQos;
  if (v == "mise-fair") return PolicyKind::MiseFair;
  throw ParseError("config: unknown policy '" + std::string(v) + "'", line);
}

std::vector<double> to_double_list(std::string_view v, std::size_t line) {
  std::vector<double> out;
  while (!v.empty()) {
    const std::size_t comma = v.find(',');
    out.push_back(to_double(trim(v.substr(0, comma)), line));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);

  ExperimentConfig cfg;
  std::string section;
  std::string line;
  std::size_t line_no = 0;

  const auto config_dir = std::filesystem::path(path).parent_path();

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    if (const std::size_t hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;

    if (sv.front() == '[') {
      if (sv.back() != ']')
        throw ParseError("config: malformed section header", line_no);
      section = std::string(trim(sv.substr(1, sv.size() - 2)));
      if (section == "app") cfg.apps.emplace_back();
      continue;
    }

    const std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("config: expected `key = value`", line_no);
    const std::string key{trim(sv.substr(0, eq))};
    const std::string_view value = trim(sv.substr(eq + 1));

    if (section == "dram") {
      DramConfig& d = cfg.sim.dram;
      if (key == "num_channels") d.num_channels = static_cast<std::uint32_t>(to_u64(value, line_no));
      else if (key == "banks_per_channel") d.banks_per_channel = static_cast<std::uint32_t>(to_u64(value, line_no));
      else if (key == "row_hit_latency") d.row_hit_latency = to_u64(value, line_no);
      else if (key == "row_closed_latency") d.row_closed_latency = to_u64(value, line_no);
      else if (key == "row_conflict_latency") d.row_conflict_latency = to_u64(value, line_no);
      else if (key == "bus_occupancy") d.bus_occupancy = to_u64(value, line_no);
      else throw ParseError("config: unknown [dram] key '" + key + "'", line_no);
    } else if (section == "sim") {
      if (key == "policy") cfg.sim.policy = to_policy(value, line_no);
      else if (key == "seed") cfg.sim.seed = to_u64(value, line_no);
      else if (key == "horizon") cfg.sim.horizon = to_u64(value, line_no);
      else if (key == "epoch_len") cfg.sim.epoch_len = to_u64(value, line_no);
      else if (key == "interval_len") cfg.sim.interval_len = to_u64(value, line_no);
      else if (key == "policies_use_stfm") cfg.sim.policies_use_stfm = to_bool(value, line_no);
      else if (key == "output") cfg.output = std::string(value);
      else throw ParseError("config: unknown [sim] key '" + key + "'", line_no);
    } else if (section == "qos") {
      QosConfig& q = cfg.sim.qos;
      if (key == "aoi") q.aoi = static_cast<app_id_t>(to_u64(value, line_no));
      else if (key == "bound") q.bound = to_double(value, line_no);
      else if (key == "step") q.step = to_double(value, line_no);
      else if (key == "hysteresis") q.hysteresis = to_double(value, line_no);
      else if (key == "unmeetable_patience") q.unmeetable_patience = static_cast<int>(to_u64(value, line_no));
      else if (key == "sweep_bounds") cfg.sweep_bounds = to_double_list(value, line_no);
      else throw ParseError("config: unknown [qos] key '" + key + "'", line_no);
    } else if (section == "fair") {
      FairConfig& f = cfg.sim.fair;
      if (key == "initial_bound") f.initial_bound = to_double(value, line_no);
      else if (key == "delta") f.delta = to_double(value, line_no);
      else if (key == "patience") f.patience = static_cast<int>(to_u64(value, line_no));
      else if (key == "min_share") f.min_share = to_double(value, line_no);
      else if (key == "exponent") f.exponent = to_double(value, line_no);
      else throw ParseError("config: unknown [fair] key '" + key + "'", line_no);
    } else if (section == "app") {
      if (cfg.apps.empty())
        throw ParseError("config: app key outside an [app] section", line_no);
      AppSpec& a = cfg.apps.back();
      if (key == "kind") {
        if (value == "synthetic") a.kind = AppKind::Synthetic;
        else if (value == "trace") a.kind = AppKind::Trace;
        else throw ParseError("config: unknown app kind '" + std::string(value) + "'", line_no);
      } else if (key == "level") {
        // Microbenchmark preset; later keys may still override fields.
        const int level = static_cast<int>(to_u64(value, line_no));
        const std::uint64_t budget = a.instruction_budget;
        a = microbench_spec(level);
        a.instruction_budget = budget;
      } else if (key == "compute_gap") a.compute_gap = to_u64(value, line_no);
      else if (key == "row_locality") a.row_locality = to_double(value, line_no);
      else if (key == "working_rows") a.working_rows = static_cast<std::uint32_t>(to_u64(value, line_no));
      else if (key == "mlp_limit") a.mlp_limit = static_cast<std::uint32_t>(to_u64(value, line_no));
      else if (key == "instruction_budget") a.instruction_budget = to_u64(value, line_no);
      else if (key == "trace_path") {
        a.trace_path = (config_dir / std::string(value)).string();
      } else throw ParseError("config: unknown [app] key '" + key + "'", line_no);
    } else if (section.empty()) {
      throw ParseError("config: key before any [section]", line_no);
    } else {
      throw ParseError("config: unknown section [" + section + "]", line_no);
    }
  }

  if (cfg.apps.empty()) throw ConfigError("config: no [app] sections");
  for (const AppSpec& a : cfg.apps) {
    a.validate();
    if (a.kind == AppKind::Trace && !std::filesystem::exists(a.trace_path))
      throw ConfigError("config: trace file does not exist: " + a.trace_path);
  }
  cfg.sim.validate(cfg.apps.size());
  return cfg;
}

}  // namespace mise
