#include "mise/workload.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

#include "mise/rng.hpp"

namespace mise {

namespace {

// Logical row index -> physical coordinates. Consecutive logical rows walk
// the channels first, then the banks, so a streaming app exercises all the
// bank-level parallelism the config offers. The per-app row_base keeps
// different apps' row numbers disjoint with overwhelming probability.
StreamEntry map_logical_row(std::uint64_t k, std::uint64_t row_base,
                            std::uint64_t gap, const DramConfig& dram) {
  StreamEntry e;
  e.instruction_gap = gap;
  e.channel = static_cast<std::uint32_t>(k % dram.num_channels);
  e.bank = static_cast<std::uint32_t>((k / dram.num_channels) %
                                      dram.banks_per_channel);
  e.row = row_base + k;
  return e;
}

}  // namespace

RequestStream gen_app_stream(const AppSpec& spec, std::uint64_t seed,
                             const DramConfig& dram, std::uint64_t budget) {
  spec.validate();
  if (spec.kind != AppKind::Synthetic)
    throw ConfigError("gen_app_stream: spec is not synthetic");
  if (spec.instruction_budget > 0) budget = spec.instruction_budget;

  const std::uint64_t per_request = spec.compute_gap + 1;
  const std::uint64_t n_requests = (budget + per_request - 1) / per_request;

  RngState rng{seed};
  const std::uint64_t row_base = rng_below(rng, 1ull << 30) << 10;
  std::uint64_t k = rng_below(rng, spec.working_rows);

  RequestStream stream;
  stream.entries.reserve(n_requests);
  for (std::uint64_t i = 0; i < n_requests; ++i) {
    stream.entries.push_back(
        map_logical_row(k, row_base, spec.compute_gap, dram));
    // Row reuse decision for the next request.
    if (rng_unit(rng) >= spec.row_locality && spec.working_rows > 1) {
      k = (k + 1 + rng_below(rng, spec.working_rows - 1)) % spec.working_rows;
    }
  }
  return stream;
}

AppSpec microbench_spec(int intensity_level) {
  if (intensity_level < 1 || intensity_level > 8)
    throw ConfigError("microbench_spec: intensity level must be in 1..8");
  AppSpec spec;
  spec.kind = AppKind::Synthetic;
  // Streaming access pattern; intensity rises as the compute gap shrinks.
  spec.compute_gap = 1ull << (11 - intensity_level);  // 1024 .. 8
  spec.row_locality = 0.9;
  spec.working_rows = 64;
  spec.mlp_limit = 1;
  return spec;
}

namespace {

std::uint64_t parse_u64_field(std::string_view field, std::size_t line_no,
                              const char* name) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string("trace: ") + name + " field overflows 64 bits",
                     line_no);
  if (ec != std::errc() || ptr != last)
    throw ParseError(std::string("trace: malformed ") + name + " field",
                     line_no);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

RequestStream parse_trace(const std::string& path, const DramConfig& dram) {
  std::ifstream in(path);
  if (!in) throw ConfigError("trace file not found: " + path);

  RequestStream stream;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;

    const std::size_t comma = sv.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("trace: expected `instruction_gap,address`", line_no);
    const std::uint64_t gap =
        parse_u64_field(trim(sv.substr(0, comma)), line_no, "instruction_gap");
    const std::uint64_t addr =
        parse_u64_field(trim(sv.substr(comma + 1)), line_no, "address");

    StreamEntry e;
    e.instruction_gap = gap;
    e.channel = static_cast<std::uint32_t>(addr % dram.num_channels);
    e.bank = static_cast<std::uint32_t>((addr / dram.num_channels) %
                                        dram.banks_per_channel);
    e.row = addr / (static_cast<std::uint64_t>(dram.num_channels) *
                    dram.banks_per_channel);
    stream.entries.push_back(e);
  }
  return stream;
}

}  // namespace mise
