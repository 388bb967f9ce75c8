#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relsamp/cli/config.hpp"

namespace relsamp::cli {

using Json = nlohmann::ordered_json;

struct RunReport {
  std::string verb;
  ExperimentConfig config;
  // Deterministic content, one object per section. Arrays of flat objects are
  // rendered as tables in the text summary.
  Json sections = Json::object();
  // Wall-clock seconds per stage; written to timings.json only.
  std::vector<std::pair<std::string, double>> timings;
  // Paths relative to the output directory.
  std::vector<std::string> artifacts;
  // Nonzero when the run completed but a numerical step did not converge.
  int exit_code = 0;
};

// Throws Numerical if any number in the tree is NaN or infinite.
void require_finite(const Json& value, const std::string& path = "report");

Json report_json(const RunReport& report);
std::string render_text(const RunReport& report);
Json timings_json(const RunReport& report);

// Writes report.json, report.txt, timings.json and config.ini into out_dir.
void write_report(const RunReport& report, const std::filesystem::path& out_dir);

class StageTimer {
 public:
  StageTimer(RunReport& report, std::string stage)
      : report_(report), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() { stop(); }
  void stop() {
    if (stopped_) return;
    stopped_ = true;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    report_.timings.emplace_back(stage_, dt.count());
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  RunReport& report_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
  bool stopped_ = false;
};

}  // namespace relsamp::cli
