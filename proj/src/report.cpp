#include "mise/report.hpp"

#include <cstdio>
#include <fstream>

namespace mise {

std::string fmt_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string interval_csv(const SimResult& result) {
  std::string out =
      "interval,app,srsr,arsr,alpha,mise_slowdown,stfm_slowdown,share,"
      "carried_forward_flag\n";
  for (std::uint32_t k = 0; k < result.num_intervals; ++k) {
    for (std::size_t i = 0; i < result.apps.size(); ++i) {
      const IntervalRecord& rec = result.apps[i].intervals[k];
      const SlowdownEstimate& e = rec.estimate;
      out += std::to_string(k);
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += fmt_fixed(e.srsr);
      out += ',';
      out += fmt_fixed(e.arsr);
      out += ',';
      out += fmt_fixed(e.alpha);
      out += ',';
      out += fmt_fixed(e.mise_slowdown);
      out += ',';
      out += fmt_fixed(e.stfm_slowdown);
      out += ',';
      out += fmt_fixed(rec.share);
      out += ',';
      out += e.carried_forward ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

namespace {

void append_summary_row(std::string& out, const std::string& label,
                        const OracleAppResult& a, double mise_err,
                        double stfm_err) {
  out += label;
  out += ',';
  out += fmt_fixed(a.alone_ipc);
  out += ',';
  out += fmt_fixed(a.shared_ipc);
  out += ',';
  out += fmt_fixed(a.actual_slowdown);
  out += ',';
  out += fmt_fixed(mise_err);
  out += ',';
  out += fmt_fixed(stfm_err);
  out += '\n';
}

const char kSummaryHeader[] =
    "app,alone_ipc,shared_ipc,actual_slowdown,mise_error_pct,stfm_error_pct\n";

}  // namespace

std::string summary_csv(const OracleResult& oracle) {
  std::string out = kSummaryHeader;
  for (std::size_t i = 0; i < oracle.apps.size(); ++i) {
    append_summary_row(out, std::to_string(i), oracle.apps[i],
                       oracle.apps[i].mise_err_pct,
                       oracle.apps[i].stfm_err_pct);
  }
  return out;
}

std::string run_report(const SimResult& result, const OracleResult* oracle) {
  std::string out = interval_csv(result);
  out += "# summary\n";
  if (oracle) {
    out += summary_csv(*oracle);
  } else {
    out += kSummaryHeader;
  }
  return out;
}

std::string compare_report(const OracleResult& oracle) {
  std::string out = summary_csv(oracle);

  OracleAppResult mean;
  std::size_t valid = 0;
  for (const auto& a : oracle.apps) {
    if (!a.valid) continue;
    mean.alone_ipc += a.alone_ipc;
    mean.shared_ipc += a.shared_ipc;
    mean.actual_slowdown += a.actual_slowdown;
    ++valid;
  }
  if (valid > 0) {
    mean.alone_ipc /= static_cast<double>(valid);
    mean.shared_ipc /= static_cast<double>(valid);
    mean.actual_slowdown /= static_cast<double>(valid);
  }
  append_summary_row(out, "mean", mean, oracle.mise_mape, oracle.stfm_mape);
  return out;
}

std::string sweep_report(const std::vector<SweepRow>& rows) {
  std::string out =
      "policy,bound,aoi_actual_slowdown,met_actual,met_predicted,"
      "harmonic_speedup_others,max_slowdown_others\n";
  for (const SweepRow& r : rows) {
    out += r.policy;
    out += ',';
    out += fmt_fixed(r.bound);
    out += ',';
    out += fmt_fixed(r.aoi_actual_slowdown);
    out += ',';
    out += r.met_actual ? '1' : '0';
    out += ',';
    out += r.met_predicted ? '1' : '0';
    out += ',';
    out += fmt_fixed(r.harmonic_speedup_others);
    out += ',';
    out += fmt_fixed(r.max_slowdown_others);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace mise
