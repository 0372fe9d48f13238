#include <fmt/format.h>

#include <fstream>
#include <ostream>

#include "dwpp/harness.hpp"

namespace dwpp {

namespace {

using Buffer = fmt::memory_buffer;

void flush(const Buffer& buf, std::ostream& out) {
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void writeFile(const std::filesystem::path& file, const auto& writer) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() + " for writing");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing " + file.string());
  }
}

struct TableSpec {
  const char* title;
  MeanSd AggregateMetrics::*member;
  int precision;
};

constexpr TableSpec kTables[] = {
    {"Constraint violation ratio [%]", &AggregateMetrics::violation_ratio, 1},
    {"Mean cross track error [m]", &AggregateMetrics::mean_cte, 3},
    {"Max cross track error [m]", &AggregateMetrics::max_cte, 3},
    {"Travel time [s]", &AggregateMetrics::travel_time, 2},
};

}  // namespace

std::vector<StabilityAdvisory> stabilityAdvisories(const ExperimentConfig& config) {
  std::vector<StabilityAdvisory> out;
  const double v = config.controller.limits.v_max;
  for (auto kind : config.controllers) {
    LookaheadConfig la = config.controller.lookahead;
    if (kind == ControllerKind::kPP) {
      la.mode = LookaheadMode::kFixed;
    } else if (kind == ControllerKind::kAPP) {
      la.mode = LookaheadMode::kVelocityScaled;
    }
    StabilityAdvisory a;
    a.controller = kind;
    a.speed = v;
    a.lookahead = effectiveLookahead(la, v);
    a.required = minStableLookahead(v, config.stability);
    a.satisfied = a.lookahead >= a.required;
    out.push_back(a);
  }
  return out;
}

void writeMetricsCsv(const ComparisonResult& result, std::ostream& out) {
  Buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "path,controller,trial,violation_ratio,mean_cte,max_cte,travel_time,reached_goal\n");
  for (const auto& r : result.trials) {
    const auto& m = r.metrics;
    fmt::format_to(std::back_inserter(buf), "{},{},{},{:.6f},{:.9f},{:.9f},{:.3f},{:d}\n", r.path,
                   toString(r.controller), r.trial, m.violation_ratio, m.mean_cte, m.max_cte,
                   m.travel_time, static_cast<int>(m.reached_goal));
  }
  flush(buf, out);
}

void writeSummaryCsv(const ComparisonResult& result, std::ostream& out) {
  Buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "path,controller,trials,reached,violation_ratio_mean,violation_ratio_sd,"
                 "mean_cte_mean,mean_cte_sd,max_cte_mean,max_cte_sd,travel_time_mean,"
                 "travel_time_sd\n");
  for (const auto& c : result.cells) {
    const auto& m = c.metrics;
    fmt::format_to(std::back_inserter(buf),
                   "{},{},{},{},{:.6f},{:.6f},{:.9f},{:.9f},{:.9f},{:.9f},{:.3f},{:.3f}\n", c.path,
                   toString(c.controller), m.trial_count, m.reached_count, m.violation_ratio.mean,
                   m.violation_ratio.sd, m.mean_cte.mean, m.mean_cte.sd, m.max_cte.mean,
                   m.max_cte.sd, m.travel_time.mean, m.travel_time.sd);
  }
  flush(buf, out);
}

void writeSummaryText(const ComparisonResult& result, const ExperimentConfig& config,
                      std::ostream& out) {
  Buffer buf;
  auto put = [&](fmt::string_view format, const auto&... args) {
    fmt::vformat_to(std::back_inserter(buf), format, fmt::make_format_args(args...));
  };

  const auto& lim = config.controller.limits;
  put("Kinematic simulation, {} trial(s) per cell, dt = {} s\n", config.trials, lim.dt);
  put("Limits: v [{}, {}] m/s, omega [{}, {}] rad/s, a {}/{} m/s^2, alpha {}/{} rad/s^2\n",
      lim.v_min, lim.v_max, lim.omega_min, lim.omega_max, lim.a_acc_max, lim.a_dcc_max,
      lim.alpha_acc_max, lim.alpha_dcc_max);
  if (config.trials > 1) {
    put("Spread comes from seeded initial-pose perturbation (sigma {} m / {} rad, seeds {}..{}),\n"
        "not from real-world variability; SDs are qualitative only.\n",
        config.noise.sigma_position, config.noise.sigma_heading, config.base_seed,
        config.base_seed + config.trials - 1);
  }

  for (const auto& table : kTables) {
    put("\n{} (Mean ± SD)\n", table.title);
    put("{:<8}", "Path");
    for (auto kind : result.controller_order) {
      put(" | {:^17}", toString(kind));
    }
    put("\n");
    for (const auto& path : result.path_order) {
      put("{:<8}", "Path " + path);
      for (auto kind : result.controller_order) {
        const MeanSd& ms = result.cell(path, kind).metrics.*(table.member);
        put(" | {:^17}", fmt::format("{:.{}f} ± {:.{}f}", ms.mean, table.precision, ms.sd,
                                     table.precision));
      }
      put("\n");
    }
  }

  put("\nGoal reached\n");
  for (const auto& c : result.cells) {
    put("  Path {} {}: {}/{}\n", c.path, toString(c.controller), c.metrics.reached_count,
        c.metrics.trial_count);
  }

  put("\nStability advisory (L >= v_max * T * L'_min, T = {} s, L'_min = {})\n",
      config.stability.steering_time_constant, config.stability.min_nondim_lookahead);
  for (const auto& a : stabilityAdvisories(config)) {
    put("  {}: L = {:.3f} m at v = {:.3f} m/s, required >= {:.3f} m: {}\n", toString(a.controller),
        a.lookahead, a.speed, a.required, a.satisfied ? "ok" : "VIOLATED");
  }
  flush(buf, out);
}

void writeSweepCsv(const SweepResult& result, std::ostream& out) {
  Buffer buf;
  fmt::format_to(std::back_inserter(buf), "lookahead,mean_cte,max_cte,travel_time,reached,trials\n");
  for (const auto& r : result.rows) {
    fmt::format_to(std::back_inserter(buf), "{:.4f},{:.9f},{:.9f},{:.3f},{},{}\n", r.lookahead,
                   r.mean_cte, r.max_cte, r.travel_time, r.reached_count, r.trial_count);
  }
  flush(buf, out);
}

void emitReport(const ComparisonResult& result, const ExperimentConfig& config,
                const std::filesystem::path& dir) {
  if (result.trials.empty() || result.cells.empty()) {
    throw ParameterError("emitReport: no results to report");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
  }
  writeFile(dir / "metrics.csv", [&](std::ostream& o) { writeMetricsCsv(result, o); });
  writeFile(dir / "summary.csv", [&](std::ostream& o) { writeSummaryCsv(result, o); });
  writeFile(dir / "summary.txt", [&](std::ostream& o) { writeSummaryText(result, config, o); });
}

}  // namespace dwpp
