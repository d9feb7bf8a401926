#include "mise/oracle.hpp"

namespace mise {

AloneReplay replay_alone(const AppSpec& app, const SimConfig& shared_cfg,
                         std::uint64_t stream_seed,
                         std::span<const std::uint64_t> marks) {
  SimConfig cfg = shared_cfg;
  cfg.policy = PolicyKind::FrFcfs;  // single app: shares are trivially 1.0
  // One spare interval of headroom; alone progress per instruction is never
  // slower than shared, so the shared horizon already suffices.
  cfg.horizon = shared_cfg.horizon + shared_cfg.interval_len;

  std::vector<std::vector<std::uint64_t>> mark_sets{
      std::vector<std::uint64_t>(marks.begin(), marks.end())};
  std::vector<std::uint64_t> seeds{stream_seed};

  RunOptions opts;
  opts.retire_marks = &mark_sets;
  opts.stream_seeds = &seeds;

  // The synthetic stream is budgeted by the config horizon; keep the shared
  // run's budget so both runs generate the identical stream.
  AppSpec alone = app;
  if (alone.kind == AppKind::Synthetic && alone.instruction_budget == 0)
    alone.instruction_budget = shared_cfg.horizon;

  SimResult res = run_simulation(cfg, {alone}, opts);
  AloneReplay replay;
  replay.mark_cycles = std::move(res.apps[0].mark_cycles);
  replay.complete = replay.mark_cycles.size() == mark_sets[0].size();
  return replay;
}

OracleResult run_oracle(const SimConfig& cfg, const std::vector<AppSpec>& apps,
                        SimResult& shared) {
  const std::size_t n = apps.size();
  if (shared.apps.size() != n)
    throw ConfigError("run_oracle: app list does not match the shared result");
  if (shared.num_intervals < 2)
    throw InsufficientDataError(
        "run_oracle: need at least two intervals (warmup plus one measured)");

  const std::vector<std::uint64_t> seeds = derive_stream_seeds(cfg.seed, n);
  OracleResult out;
  out.apps.resize(n);

  double mise_err_sum = 0.0;
  double stfm_err_sum = 0.0;
  std::size_t samples = 0;

  for (std::size_t i = 0; i < n; ++i) {
    AppResult& srec = shared.apps[i];
    const std::size_t k_total = srec.intervals.size();

    std::vector<std::uint64_t> marks(k_total);
    for (std::size_t k = 0; k < k_total; ++k)
      marks[k] = srec.intervals[k].instr_end;

    const AloneReplay replay = replay_alone(apps[i], cfg, seeds[i], marks);
    if (!replay.complete)
      throw InsufficientDataError(
          "run_oracle: alone replay did not reach the shared run's "
          "instruction count");

    // Warmup interval: actual recorded for completeness, never scored.
    if (marks[0] > 0 && replay.mark_cycles[0] > 0 &&
        srec.intervals[0].last_retire_cycle > 0) {
      srec.intervals[0].estimate.actual_slowdown =
          static_cast<double>(srec.intervals[0].last_retire_cycle) /
          static_cast<double>(replay.mark_cycles[0]);
    }

    double app_mise_sum = 0.0;
    double app_stfm_sum = 0.0;
    std::size_t app_samples = 0;
    for (std::size_t k = 1; k < k_total; ++k) {
      const std::uint64_t instr = marks[k] - marks[k - 1];
      if (instr == 0) continue;
      const cycle_t shared_time = srec.intervals[k].last_retire_cycle -
                                  srec.intervals[k - 1].last_retire_cycle;
      const cycle_t alone_time =
          replay.mark_cycles[k] - replay.mark_cycles[k - 1];
      if (shared_time == 0 || alone_time == 0) continue;
      const double actual = static_cast<double>(shared_time) /
                            static_cast<double>(alone_time);
      srec.intervals[k].estimate.actual_slowdown = actual;
      const double me =
          estimation_error(srec.intervals[k].estimate.mise_slowdown, actual);
      const double se =
          estimation_error(srec.intervals[k].estimate.stfm_slowdown, actual);
      app_mise_sum += me;
      app_stfm_sum += se;
      ++app_samples;
      mise_err_sum += me;
      stfm_err_sum += se;
      ++samples;
    }
    if (app_samples > 0) {
      out.apps[i].mise_err_pct = app_mise_sum / static_cast<double>(app_samples);
      out.apps[i].stfm_err_pct = app_stfm_sum / static_cast<double>(app_samples);
    }

    // Whole post-warmup window, instruction-aligned on both sides.
    const std::uint64_t window_instr = marks[k_total - 1] - marks[0];
    if (window_instr > 0) {
      const cycle_t shared_window = srec.intervals[k_total - 1].last_retire_cycle -
                                    srec.intervals[0].last_retire_cycle;
      const cycle_t alone_window =
          replay.mark_cycles[k_total - 1] - replay.mark_cycles[0];
      if (shared_window > 0 && alone_window > 0) {
        OracleAppResult& oar = out.apps[i];
        oar.alone_ipc = static_cast<double>(window_instr) /
                        static_cast<double>(alone_window);
        oar.shared_ipc = static_cast<double>(window_instr) /
                         static_cast<double>(shared_window);
        oar.actual_slowdown = actual_slowdown(oar.alone_ipc, oar.shared_ipc);
        oar.valid = true;
      }
    }
  }

  out.samples = samples;
  if (samples > 0) {
    out.mise_mape = mise_err_sum / static_cast<double>(samples);
    out.stfm_mape = stfm_err_sum / static_cast<double>(samples);
  }
  return out;
}

}  // namespace mise
