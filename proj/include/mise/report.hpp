#ifndef MISE_REPORT_HPP
#define MISE_REPORT_HPP

#include <string>
#include <vector>

#include "mise/oracle.hpp"
#include "mise/sim.hpp"

namespace mise {

// Locale-independent fixed formatting: 6 fractional digits, '.' separator.
// All CSV output goes through this so identical runs produce byte-identical
// files.
std::string fmt_fixed(double v);

// Per-interval rows:
//   interval,app,srsr,arsr,alpha,mise_slowdown,stfm_slowdown,share,carried_forward_flag
std::string interval_csv(const SimResult& result);

// Per-app oracle summary rows:
//   app,alone_ipc,shared_ipc,actual_slowdown,mise_error_pct,stfm_error_pct
std::string summary_csv(const OracleResult& oracle);

// `run` output: interval rows, a `# summary` marker line, then the summary.
std::string run_report(const SimResult& result, const OracleResult* oracle);

// `compare-models` output: one summary row per app plus a trailing `mean`
// row carrying the aggregate errors.
std::string compare_report(const OracleResult& oracle);

struct SweepRow {
  std::string policy;  // "mise-qos" or "always-prioritize"
  double bound = 0.0;  // 0 for the reference row
  double aoi_actual_slowdown = 0.0;
  bool met_actual = false;
  bool met_predicted = false;
  double harmonic_speedup_others = 0.0;
  double max_slowdown_others = 0.0;
};

// `sweep-bounds` output:
//   policy,bound,aoi_actual_slowdown,met_actual,met_predicted,
//   harmonic_speedup_others,max_slowdown_others
std::string sweep_report(const std::vector<SweepRow>& rows);

void write_file(const std::string& path, const std::string& contents);

}  // namespace mise

#endif  // MISE_REPORT_HPP
