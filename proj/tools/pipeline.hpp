#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evsharp/calibrate.hpp"
#include "evsharp/events.hpp"

namespace evsharp::cli {

// Everything a subcommand run needs, resolved from flags and config file.
struct RunConfig {
  enum class Task {
    Simulate,
    Blur,
    Deblur,
    Interpolate,
    Enhance,
    Calibrate,
    Evaluate,
    DumpIntegral,
  };

  Task task = Task::Enhance;
  std::string events_path;
  std::vector<std::string> frames;
  std::string out_path;
  std::string ref_path;
  std::string threshold_spec = "auto";
  std::string query_spec;
  int bins = 16;
  LossWeights weights;
  std::string format = "pgm";
  std::vector<ExposureWindow> windows;
  double c_lo = 0.02;
  double c_hi = 2.0;
  bool invert_polarity = false;
  std::optional<TimeSpan> span;
  double at_time = 0.0;
  bool has_at = false;
};

// Executes one task; throws evsharp::Error on failure.
void run(const RunConfig& config);

}  // namespace evsharp::cli
