#include "mise/sim.hpp"

#include <algorithm>
#include <cassert>
#include <span>

namespace mise {

void SimConfig::validate(std::size_t num_apps) const {
  dram.validate();
  if (num_apps < 1) throw ConfigError("simulation needs at least one app");
  if (epoch_len < 1) throw ConfigError("epoch_len must be >= 1");
  if (interval_len < epoch_len || interval_len % epoch_len != 0)
    throw ConfigError("interval_len must be a positive multiple of epoch_len");
  if (horizon < interval_len)
    throw ConfigError("horizon must cover at least one interval");
  if (policy == PolicyKind::MiseQos || policy == PolicyKind::AlwaysPrioritize)
    qos.validate(num_apps);
  if (policy == PolicyKind::MiseFair) fair.validate(num_apps);
}

std::vector<std::uint64_t> derive_stream_seeds(std::uint64_t seed,
                                               std::size_t num_apps) {
  RngState r{seed};
  std::vector<std::uint64_t> seeds(num_apps);
  for (auto& s : seeds) s = rng_next(r);
  return seeds;
}

std::pair<cycle_t, BankState> service_request(const BankState& bank,
                                              const MemRequest& req,
                                              const DramConfig& cfg,
                                              cycle_t now) {
  assert(bank.busy_until <= now);
  cycle_t latency;
  if (!bank.row_open) {
    latency = cfg.row_closed_latency;
  } else if (bank.open_row == req.row) {
    latency = cfg.row_hit_latency;
  } else {
    latency = cfg.row_conflict_latency;
  }
  BankState next = bank;
  next.open_row = req.row;  // open-page policy: the row stays open
  next.row_open = true;
  next.busy_until = now + latency;
  next.current_owner = static_cast<int>(req.app_id);
  return {latency, next};
}

namespace {

struct CoreRt {
  std::size_t entry_idx = 0;
  std::uint64_t gap_remaining = 0;
  bool finished = false;
  std::uint32_t outstanding = 0;
  std::uint32_t mlp_limit = 1;
  std::uint64_t retired = 0;
  cycle_t last_retire = 0;
  cycle_t stall_total = 0;
  std::size_t mark_ptr = 0;
};

struct Inflight {
  cycle_t completes;
  app_id_t app;
};

}  // namespace

struct Simulation::Impl {
  SimConfig cfg;
  std::size_t n = 0;
  std::uint32_t num_channels = 0;
  std::uint32_t banks_per_channel = 0;

  std::vector<RequestStream> streams;
  std::vector<std::vector<std::uint64_t>> marks;  // per app, sorted
  ServiceLog* service_log = nullptr;

  std::vector<CoreRt> cores;
  std::vector<std::vector<MemRequest>> queues;  // per channel
  std::vector<BankState> banks;                 // channel * B + bank
  std::vector<cycle_t> bus_busy_until;          // per channel
  std::vector<int> bus_owner;                   // per channel
  std::vector<Inflight> inflight;

  std::vector<EpochCounters> counters;
  std::vector<EstimatorState> est_states;
  BandwidthShares shares;
  RngState lottery_rng;
  app_id_t hp_app = 0;
  QosState qos_state;
  FairState fair_state;

  cycle_t clock = 0;
  std::uint32_t interval_index = 0;
  bool finished_run = false;
  SimResult result;
  std::vector<const MemRequest*> oldest_buf;  // scratch for the per-cycle scan

  Impl(const SimConfig& config, const std::vector<AppSpec>& apps,
       const RunOptions& opts)
      : cfg(config), n(apps.size()) {
    cfg.validate(n);
    num_channels = cfg.dram.num_channels;
    banks_per_channel = cfg.dram.banks_per_channel;

    if (opts.streams) {
      if (opts.streams->size() != n)
        throw ConfigError("stream override count does not match app count");
      streams = *opts.streams;
      for (const auto& s : streams)
        for (const auto& e : s.entries)
          if (e.channel >= num_channels || e.bank >= banks_per_channel)
            throw ConfigError("stream entry outside DRAM geometry");
    } else {
      std::vector<std::uint64_t> seeds =
          opts.stream_seeds ? *opts.stream_seeds
                            : derive_stream_seeds(cfg.seed, n);
      if (seeds.size() != n)
        throw ConfigError("stream seed count does not match app count");
      streams.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        apps[i].validate();
        if (apps[i].kind == AppKind::Synthetic) {
          streams.push_back(
              gen_app_stream(apps[i], seeds[i], cfg.dram, cfg.horizon));
        } else {
          streams.push_back(parse_trace(apps[i].trace_path, cfg.dram));
        }
      }
    }

    marks.assign(n, {});
    if (opts.retire_marks) {
      if (opts.retire_marks->size() != n)
        throw ConfigError("retire mark count does not match app count");
      marks = *opts.retire_marks;
    }
    service_log = opts.service_log;

    // Lottery stream continues the seed derivation after the app streams.
    RngState r{cfg.seed};
    for (std::size_t i = 0; i < n; ++i) rng_next(r);
    lottery_rng.state = rng_next(r);

    cores.resize(n);
    result.apps.resize(n);
    result.seed = cfg.seed;
    for (std::size_t i = 0; i < n; ++i) {
      cores[i].mlp_limit = apps[i].mlp_limit;
      if (streams[i].entries.empty()) {
        cores[i].finished = true;
      } else {
        cores[i].gap_remaining = streams[i].entries[0].instruction_gap;
      }
      // Marks at instruction count zero resolve to cycle zero.
      while (cores[i].mark_ptr < marks[i].size() &&
             marks[i][cores[i].mark_ptr] == 0) {
        result.apps[i].mark_cycles.push_back(0);
        ++cores[i].mark_ptr;
      }
    }

    queues.resize(num_channels);
    banks.assign(static_cast<std::size_t>(num_channels) * banks_per_channel,
                 BankState{});
    bus_busy_until.assign(num_channels, 0);
    bus_owner.assign(num_channels, kNoOwner);
    counters.resize(n);
    est_states.resize(n);
    oldest_buf.assign(n, nullptr);

    switch (cfg.policy) {
      case PolicyKind::AlwaysPrioritize:
        shares = always_prioritize_shares(cfg.qos.aoi, n);
        break;
      case PolicyKind::FrFcfs:
      case PolicyKind::MiseQos:
      case PolicyKind::MiseFair:
        shares = BandwidthShares::equal(n);
        break;
    }
    fair_state.bound_B = cfg.fair.initial_bound;
  }

  void retire(std::size_t i) {
    CoreRt& c = cores[i];
    ++c.retired;
    c.last_retire = clock;
    while (c.mark_ptr < marks[i].size() && marks[i][c.mark_ptr] == c.retired) {
      result.apps[i].mark_cycles.push_back(clock);
      ++c.mark_ptr;
    }
  }

  // True if `req` (still queued) is held up by another app's service: its
  // bank is busy with a foreign request, or the bank is free but the channel
  // bus is still occupied by a foreign transfer.
  bool blocked_by_other(const MemRequest& req) const {
    const BankState& b =
        banks[static_cast<std::size_t>(req.channel) * banks_per_channel +
              req.bank];
    if (b.busy(clock)) return b.current_owner != static_cast<int>(req.app_id);
    return bus_busy_until[req.channel] > clock &&
           bus_owner[req.channel] != static_cast<int>(req.app_id);
  }

  void run_policy(const std::vector<SlowdownEstimate>& ests) {
    std::vector<SlowdownEstimate> inputs(ests);
    if (cfg.policies_use_stfm)
      for (auto& e : inputs) e.mise_slowdown = e.stfm_slowdown;

    switch (cfg.policy) {
      case PolicyKind::FrFcfs:
      case PolicyKind::AlwaysPrioritize:
        break;  // static shares
      case PolicyKind::MiseQos: {
        auto [outcome, next] =
            qos_adjust(inputs[cfg.qos.aoi], cfg.qos, shares, qos_state);
        qos_state = next;
        shares = outcome.shares;
        result.qos_status_history.push_back(outcome.bound_status);
        break;
      }
      case PolicyKind::MiseFair: {
        auto [outcome, next] = fair_adjust(inputs, cfg.fair, shares, fair_state);
        fair_state = next;
        shares = outcome.shares;
        result.fair_bound_history.push_back(outcome.current_B);
        break;
      }
    }
    shares.validate();
  }

  void finalize_current_interval() {
    for (std::size_t i = 0; i < n; ++i) {
      counters[i].interval_cycles = cfg.interval_len;
      counters[i].total_cycles = cfg.interval_len;
    }
    std::vector<EpochCounters> snapshot(counters.begin(), counters.end());
    std::vector<SlowdownEstimate> ests =
        finalize_interval(counters, est_states, interval_index);
    for (std::size_t i = 0; i < n; ++i) {
      IntervalRecord rec;
      rec.counters = snapshot[i];
      rec.estimate = ests[i];
      rec.share = shares[i];
      rec.instr_end = cores[i].retired;
      rec.last_retire_cycle = cores[i].last_retire;
      result.apps[i].intervals.push_back(rec);
    }
    run_policy(ests);
    ++interval_index;
  }

  void step() {
    assert(!finished_run);
    if (clock > 0 && clock % cfg.interval_len == 0 &&
        interval_index < clock / cfg.interval_len) {
      finalize_current_interval();
    }
    if (clock % cfg.epoch_len == 0) {
      auto [app, next_rng] = lottery_draw(shares, lottery_rng);
      hp_app = app;
      lottery_rng = next_rng;
    }

    // Core phase: retire one instruction, issue a request, or stall.
    for (std::size_t i = 0; i < n; ++i) {
      CoreRt& c = cores[i];
      if (c.finished) continue;
      if (c.outstanding >= c.mlp_limit) {
        ++c.stall_total;
        ++counters[i].stall_cycles;
        continue;
      }
      if (c.gap_remaining > 0) {
        --c.gap_remaining;
        retire(i);
        continue;
      }
      const StreamEntry& e = streams[i].entries[c.entry_idx];
      MemRequest req;
      req.app_id = static_cast<app_id_t>(i);
      req.channel = e.channel;
      req.bank = e.bank;
      req.row = e.row;
      req.arrival_cycle = clock;
      queues[e.channel].push_back(req);
      ++c.outstanding;
      ++result.apps[i].requests_generated;
      retire(i);  // the memory instruction itself retires on issue
      ++c.entry_idx;
      if (c.entry_idx >= streams[i].entries.size()) {
        c.finished = true;
      } else {
        c.gap_remaining = streams[i].entries[c.entry_idx].instruction_gap;
      }
    }

    // Memory phase: at most one service start per channel per cycle.
    for (std::uint32_t ch = 0; ch < num_channels; ++ch) {
      if (bus_busy_until[ch] > clock) continue;
      auto bank_span = std::span<const BankState>(banks).subspan(
          static_cast<std::size_t>(ch) * banks_per_channel, banks_per_channel);
      const std::size_t idx =
          priority_overlay_pick(queues[ch], bank_span, clock, hp_app);
      if (idx == kNoPick) continue;
      const MemRequest req = queues[ch][idx];
      BankState& bank =
          banks[static_cast<std::size_t>(ch) * banks_per_channel + req.bank];
      const bool hit = bank.row_open && bank.open_row == req.row;
      auto [latency, next_bank] = service_request(bank, req, cfg.dram, clock);
      bank = next_bank;
      bus_busy_until[ch] = clock + cfg.dram.bus_occupancy;
      bus_owner[ch] = static_cast<int>(req.app_id);
      inflight.push_back({clock + latency, req.app_id});
      ++counters[req.app_id].shared_requests;
      if (req.app_id == hp_app) ++counters[req.app_id].hp_requests;
      if (service_log)
        service_log->push_back(
            {clock, latency, req.app_id, ch, req.bank, req.row, hit});
      queues[ch].erase(queues[ch].begin() + static_cast<std::ptrdiff_t>(idx));
    }

    // Interference accounting against the post-pick bank/bus state.
    ++counters[hp_app].hp_cycles;
    bool hp_blocked = false;
    std::vector<const MemRequest*>& oldest = oldest_buf;
    std::fill(oldest.begin(), oldest.end(), nullptr);
    for (std::uint32_t ch = 0; ch < num_channels; ++ch) {
      for (const MemRequest& req : queues[ch]) {
        const MemRequest*& o = oldest[req.app_id];
        if (o == nullptr || req.arrival_cycle < o->arrival_cycle) o = &req;
        if (req.app_id == hp_app && !hp_blocked && blocked_by_other(req))
          hp_blocked = true;
      }
    }
    if (hp_blocked) ++counters[hp_app].interference_cycles_hp;
    for (std::size_t i = 0; i < n; ++i)
      if (oldest[i] && blocked_by_other(*oldest[i]))
        ++counters[i].stfm_interference_cycles;

    // Completions take effect at the end of the cycle.
    for (std::size_t j = 0; j < inflight.size();) {
      if (inflight[j].completes == clock) {
        --cores[inflight[j].app].outstanding;
        ++result.apps[inflight[j].app].requests_serviced;
        inflight[j] = inflight.back();
        inflight.pop_back();
      } else {
        ++j;
      }
    }

    ++clock;
  }

  SimResult finish() {
    assert(!finished_run);
    finished_run = true;
    if (clock > 0 && clock % cfg.interval_len == 0 &&
        interval_index < clock / cfg.interval_len) {
      finalize_current_interval();
    }
    result.total_cycles = clock;
    result.num_intervals = interval_index;
    for (std::size_t i = 0; i < n; ++i) {
      AppResult& app = result.apps[i];
      app.instructions_retired = cores[i].retired;
      app.stall_cycles = cores[i].stall_total;
      app.shared_ipc = clock > 0 ? static_cast<double>(cores[i].retired) /
                                       static_cast<double>(clock)
                                 : 0.0;
      app.requests_pending = app.requests_generated - app.requests_serviced;
    }
    return std::move(result);
  }
};

Simulation::Simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps,
                       const RunOptions& opts)
    : impl_(new Impl(cfg, apps, opts)) {}

Simulation::~Simulation() { delete impl_; }

void Simulation::step() { impl_->step(); }

void Simulation::run_to_horizon() {
  while (impl_->clock < impl_->cfg.horizon) impl_->step();
}

SimResult Simulation::finish() { return impl_->finish(); }

cycle_t Simulation::now() const { return impl_->clock; }

CoreState Simulation::core_state(app_id_t app) const {
  const CoreRt& c = impl_->cores.at(app);
  CoreState s;
  s.app_id = app;
  s.instructions_retired = c.retired;
  s.outstanding_requests = c.outstanding;
  s.stalled = !c.finished && c.outstanding >= c.mlp_limit;
  s.stall_cycles = c.stall_total;
  s.total_cycles = impl_->clock;
  return s;
}

const BankState& Simulation::bank_state(std::uint32_t channel,
                                        std::uint32_t bank) const {
  return impl_->banks.at(
      static_cast<std::size_t>(channel) * impl_->banks_per_channel + bank);
}

std::size_t Simulation::queued_requests(std::uint32_t channel) const {
  return impl_->queues.at(channel).size();
}

app_id_t Simulation::current_hp_app() const { return impl_->hp_app; }

const BandwidthShares& Simulation::current_shares() const {
  return impl_->shares;
}

SimResult run_simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps,
                         const RunOptions& opts) {
  Simulation sim(cfg, apps, opts);
  sim.run_to_horizon();
  return sim.finish();
}

SimResult run_simulation(const SimConfig& cfg,
                         const std::vector<AppSpec>& apps) {
  return run_simulation(cfg, apps, RunOptions{});
}

}  // namespace mise
