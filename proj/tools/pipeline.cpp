#include "pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evsharp/errors.hpp"
#include "evsharp/io.hpp"
#include "evsharp/metrics.hpp"
#include "evsharp/reconstruct.hpp"
#include "evsharp/simulate.hpp"

namespace evsharp::cli {

namespace {

namespace fs = std::filesystem;

std::string json_double(double v) {
  if (std::isinf(v)) {
    return v > 0.0 ? "\"inf\"" : "\"-inf\"";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool looks_like_count(const std::string& spec) {
  if (spec.empty()) {
    return false;
  }
  return std::all_of(spec.begin(), spec.end(), [](unsigned char ch) {
    return std::isdigit(ch) != 0;
  });
}

std::vector<double> parse_time_list(const std::string& spec) {
  std::vector<double> times;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) {
      raise(ErrorKind::InvalidInput, "empty entry in query list");
    }
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (end == nullptr || *end != '\0' || !std::isfinite(v)) {
      raise(ErrorKind::InvalidInput, "bad query time: " + item);
    }
    times.push_back(v);
  }
  if (times.empty()) {
    raise(ErrorKind::InvalidInput, "query list is empty");
  }
  return times;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = 0.5 * (a + b);
    return out;
  }
  for (int k = 0; k < n; ++k) {
    out[k] = a + (b - a) * static_cast<double>(k) / (n - 1);
  }
  return out;
}

// Query defaults per task: deblur spreads instants over the first exposure,
// interpolate stays strictly between the two reference instants, enhance
// spans the whole hull.
std::vector<double> resolve_queries(const RunConfig& config,
                                    ExposureWindow win_first,
                                    ExposureWindow win_last) {
  int count = 0;
  if (config.query_spec.empty()) {
    count = config.task == RunConfig::Task::Enhance ? 15 : 7;
  } else if (looks_like_count(config.query_spec)) {
    count = std::stoi(config.query_spec);
    if (count < 1) {
      raise(ErrorKind::InvalidInput, "query count must be positive");
    }
  } else {
    return parse_time_list(config.query_spec);
  }
  switch (config.task) {
    case RunConfig::Task::Deblur:
      return linspace(win_first.t_start, win_first.t_end(), count);
    case RunConfig::Task::Interpolate: {
      std::vector<double> out(count);
      double a = win_first.t_start;
      double b = win_last.t_start;
      for (int k = 0; k < count; ++k) {
        out[k] = a + (b - a) * static_cast<double>(k + 1) / (count + 1);
      }
      return out;
    }
    default:
      return linspace(win_first.t_start, win_last.t_end(), count);
  }
}

double parse_numeric_threshold(const std::string& spec) {
  char* end = nullptr;
  double v = std::strtod(spec.c_str(), &end);
  if (end == nullptr || *end != '\0') {
    raise(ErrorKind::InvalidInput, "bad threshold value: " + spec);
  }
  return v;
}

// The event file plus the declared windows and query instants together
// define what the recording claims to know; the stream span is their hull
// unless the caller pinned it explicitly.
EventStream load_stream(const RunConfig& config, int width, int height,
                        const std::vector<double>& extra_times) {
  if (config.events_path.empty()) {
    raise(ErrorKind::InvalidInput, "an event file is required");
  }
  EventLoadOptions options;
  if (width > 0) {
    options.width = width;
  }
  if (height > 0) {
    options.height = height;
  }
  options.invert_polarity = config.invert_polarity;
  EventStream raw = load_events(config.events_path, options);
  TimeSpan span = raw.span();
  if (config.span) {
    span = *config.span;
  } else {
    for (const ExposureWindow& win : config.windows) {
      span.begin = std::min(span.begin, win.t_start);
      span.end = std::max(span.end, win.t_end());
    }
    for (double t : extra_times) {
      span.begin = std::min(span.begin, t);
      span.end = std::max(span.end, t);
    }
  }
  return EventStream(raw.width(), raw.height(), raw.events(), span);
}

std::vector<Frame> load_reference_frames(const RunConfig& config) {
  if (config.frames.size() != config.windows.size()) {
    raise(ErrorKind::InvalidInput,
          "need exactly one --windows entry per reference frame");
  }
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < config.frames.size(); ++i) {
    frames.push_back(load_frame(config.frames[i], config.windows[i]));
  }
  return frames;
}

void save_frame_sequence(const std::string& dir,
                         const std::vector<Frame>& frames,
                         const std::vector<double>& timestamps,
                         const std::string& format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    raise(ErrorKind::Io, "cannot create directory " + dir);
  }
  std::string manifest;
  char line[96];
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06zu.%s", i, format.c_str());
    save_frame((fs::path(dir) / name).string(), frames[i]);
    std::snprintf(line, sizeof(line), "%zu %.17g\n", i, timestamps[i]);
    manifest += line;
  }
  std::ofstream out(fs::path(dir) / "manifest.txt",
                    std::ios::binary | std::ios::trunc);
  out << manifest;
  if (!out) {
    raise(ErrorKind::Io, "cannot write manifest in " + dir);
  }
}

struct SequenceEntry {
  std::size_t index;
  double timestamp;
  Frame frame;
};

std::vector<SequenceEntry> load_frame_sequence(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.txt", std::ios::binary);
  if (!in) {
    raise(ErrorKind::Io, "cannot open manifest in " + dir);
  }
  std::vector<SequenceEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
      continue;
    }
    std::size_t index;
    double t;
    if (std::sscanf(line.c_str(), "%zu %lf", &index, &t) != 2) {
      raise(ErrorKind::Io, "bad manifest line in " + dir + ": " + line);
    }
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06zu", index);
    fs::path base = fs::path(dir) / name;
    fs::path candidate = base;
    candidate += ".pgm";
    if (!fs::exists(candidate)) {
      candidate = base;
      candidate += ".raw";
    }
    if (!fs::exists(candidate)) {
      raise(ErrorKind::Io, "missing frame file for manifest entry " +
                               std::to_string(index) + " in " + dir);
    }
    entries.push_back(SequenceEntry{
        index, t, load_frame(candidate.string(), ExposureWindow{t, 0.0})});
  }
  if (entries.empty()) {
    raise(ErrorKind::Io, "empty manifest in " + dir);
  }
  return entries;
}

Threshold resolve_threshold(const RunConfig& config,
                            const std::vector<Frame>& frames,
                            const EventStream& stream) {
  if (config.threshold_spec != "auto") {
    return Threshold(parse_numeric_threshold(config.threshold_spec));
  }
  if (frames.size() < 2) {
    raise(ErrorKind::InvalidInput,
          "automatic threshold calibration needs two reference frames");
  }
  std::vector<double> queries = default_calibration_queries(
      frames[0].exposure(), frames[1].exposure());
  Threshold c =
      estimate_threshold(frames[0], frames[1], stream, queries, config.c_lo,
                         config.c_hi, config.weights);
  std::fprintf(stderr, "info: calibrated threshold %.17g\n", c.value());
  return c;
}

void require_out(const RunConfig& config) {
  if (config.out_path.empty()) {
    raise(ErrorKind::InvalidInput, "--out is required for this task");
  }
}

void run_simulate(const RunConfig& config) {
  require_out(config);
  if (config.frames.size() != 1) {
    raise(ErrorKind::InvalidInput,
          "simulate takes exactly one --frames entry (a video directory)");
  }
  if (config.windows.empty()) {
    raise(ErrorKind::InvalidInput,
          "simulate needs at least one exposure window");
  }
  if (config.threshold_spec == "auto") {
    raise(ErrorKind::InvalidInput, "simulate needs a numeric threshold");
  }
  Threshold c(parse_numeric_threshold(config.threshold_spec));
  LatentVideo video = load_video(config.frames[0]);
  EventStream events = generate_events(video, c);
  std::error_code ec;
  fs::create_directories(config.out_path, ec);
  if (ec) {
    raise(ErrorKind::Io, "cannot create directory " + config.out_path);
  }
  save_events((fs::path(config.out_path) / "events.evs").string(), events);
  std::string manifest;
  char line[120];
  for (std::size_t k = 0; k < config.windows.size(); ++k) {
    Frame blur = synthesize_blur(video, config.windows[k]);
    char name[32];
    std::snprintf(name, sizeof(name), "blur_%06zu.%s", k,
                  config.format.c_str());
    save_frame((fs::path(config.out_path) / name).string(), blur);
    std::snprintf(line, sizeof(line), "%zu %.17g %.17g\n", k,
                  config.windows[k].t_start, config.windows[k].duration);
    manifest += line;
  }
  std::ofstream mf(fs::path(config.out_path) / "blur_manifest.txt",
                   std::ios::binary | std::ios::trunc);
  mf << manifest;
  if (!mf) {
    raise(ErrorKind::Io, "cannot write blur manifest");
  }
}

void run_blur(const RunConfig& config) {
  require_out(config);
  if (config.frames.size() != 1 || config.windows.size() != 1) {
    raise(ErrorKind::InvalidInput,
          "blur takes one video directory and one window");
  }
  LatentVideo video = load_video(config.frames[0]);
  save_frame(config.out_path, synthesize_blur(video, config.windows[0]));
}

void run_deblur(const RunConfig& config) {
  require_out(config);
  if (config.frames.empty() || config.frames.size() > 2) {
    raise(ErrorKind::InvalidInput, "deblur takes one or two reference frames");
  }
  std::vector<Frame> frames = load_reference_frames(config);
  EventStream stream =
      load_stream(config, frames[0].width(), frames[0].height(), {});
  Threshold c = resolve_threshold(config, frames, stream);
  std::vector<double> queries =
      resolve_queries(config, frames[0].exposure(),
                      frames.back().exposure());
  const ExposureWindow win = frames[0].exposure();
  for (double m : queries) {
    if (!win.contains(m)) {
      raise(ErrorKind::OutOfRange,
            "deblur query " + std::to_string(m) + " outside the exposure");
    }
  }
  std::vector<Frame> latents;
  latents.reserve(queries.size());
  for (double m : queries) {
    IntegralMap map = integral_for(stream, m, win, c);
    latents.push_back(reconstruct_latent(frames[0], map));
  }
  save_frame_sequence(config.out_path, latents, queries, config.format);
}

void run_two_frame_task(const RunConfig& config) {
  require_out(config);
  if (config.frames.size() != 2) {
    raise(ErrorKind::InvalidInput, "this task takes exactly two frames");
  }
  std::vector<Frame> frames = load_reference_frames(config);
  if (config.task == RunConfig::Task::Interpolate) {
    for (const Frame& f : frames) {
      if (!f.exposure().is_sharp()) {
        raise(ErrorKind::InvalidInput,
              "interpolate needs instantaneous reference frames");
      }
    }
  }
  EventStream stream =
      load_stream(config, frames[0].width(), frames[0].height(), {});
  Threshold c = resolve_threshold(config, frames, stream);
  std::vector<double> queries =
      resolve_queries(config, frames[0].exposure(), frames[1].exposure());
  std::vector<Frame> latents = enhance(frames[0], frames[1], stream, queries, c);
  save_frame_sequence(config.out_path, latents, queries, config.format);
}

void run_calibrate(const RunConfig& config) {
  if (config.frames.size() != 2) {
    raise(ErrorKind::InvalidInput, "calibrate takes exactly two frames");
  }
  std::vector<Frame> frames = load_reference_frames(config);
  EventStream stream =
      load_stream(config, frames[0].width(), frames[0].height(), {});
  std::vector<double> queries;
  if (config.query_spec.empty()) {
    queries = default_calibration_queries(frames[0].exposure(),
                                          frames[1].exposure());
  } else if (looks_like_count(config.query_spec)) {
    queries = default_calibration_queries(frames[0].exposure(),
                                          frames[1].exposure(),
                                          std::stoi(config.query_spec));
  } else {
    queries = parse_time_list(config.query_spec);
  }
  Threshold c = config.threshold_spec == "auto"
                    ? estimate_threshold(frames[0], frames[1], stream, queries,
                                         config.c_lo, config.c_hi,
                                         config.weights)
                    : Threshold(parse_numeric_threshold(config.threshold_spec));
  LossReport report =
      total_loss(frames[0], frames[1], stream, queries, c, config.weights);
  std::printf("{\"c\":%s,\"l_be\":%s,\"l_sb\":%s,\"l_bb\":%s,\"total\":%s}\n",
              json_double(report.threshold).c_str(),
              json_double(report.blur_event).c_str(),
              json_double(report.sharp_blur).c_str(),
              json_double(report.blur_blur).c_str(),
              json_double(report.total).c_str());
}

void run_evaluate(const RunConfig& config) {
  if (config.frames.size() != 1) {
    raise(ErrorKind::InvalidInput,
          "evaluate takes one --frames directory and one --ref directory");
  }
  if (config.ref_path.empty()) {
    raise(ErrorKind::InvalidInput, "--ref is required for evaluate");
  }
  std::vector<SequenceEntry> outputs = load_frame_sequence(config.frames[0]);
  std::vector<SequenceEntry> refs = load_frame_sequence(config.ref_path);
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  for (const SequenceEntry& entry : outputs) {
    // Pair with the reference closest in time, earlier one on ties.
    const SequenceEntry* best = &refs.front();
    for (const SequenceEntry& ref : refs) {
      if (std::abs(ref.timestamp - entry.timestamp) <
          std::abs(best->timestamp - entry.timestamp)) {
        best = &ref;
      }
    }
    double p = psnr(best->frame, entry.frame);
    double s = ssim(best->frame, entry.frame);
    psnr_sum += p;
    ssim_sum += s;
    std::printf("{\"frame\":%zu,\"time\":%s,\"psnr\":%s,\"ssim\":%s}\n",
                entry.index, json_double(entry.timestamp).c_str(),
                json_double(p).c_str(), json_double(s).c_str());
  }
  double n = static_cast<double>(outputs.size());
  std::printf("{\"frames\":%zu,\"mean_psnr\":%s,\"mean_ssim\":%s}\n",
              outputs.size(), json_double(psnr_sum / n).c_str(),
              json_double(ssim_sum / n).c_str());
}

void run_dump_integral(const RunConfig& config) {
  require_out(config);
  if (config.windows.size() != 1) {
    raise(ErrorKind::InvalidInput, "dump-integral takes exactly one window");
  }
  if (!config.has_at) {
    raise(ErrorKind::InvalidInput, "dump-integral needs --at <time>");
  }
  if (config.threshold_spec == "auto") {
    raise(ErrorKind::InvalidInput, "dump-integral needs a numeric threshold");
  }
  Threshold c(parse_numeric_threshold(config.threshold_spec));
  EventStream stream = load_stream(config, 0, 0, {config.at_time});
  IntegralMap map =
      integral_for(stream, config.at_time, config.windows[0], c);
  save_integral(config.out_path, map);
}

}  // namespace

void run(const RunConfig& config) {
  if (config.bins < 1) {
    raise(ErrorKind::InvalidInput, "bin count must be at least 1");
  }
  if (config.format != "pgm" && config.format != "raw") {
    raise(ErrorKind::InvalidInput, "unsupported format: " + config.format);
  }
  if (!std::isfinite(config.weights.blur_event) ||
      !std::isfinite(config.weights.sharp_blur) ||
      !std::isfinite(config.weights.blur_blur) ||
      config.weights.blur_event < 0.0 || config.weights.sharp_blur < 0.0 ||
      config.weights.blur_blur < 0.0) {
    raise(ErrorKind::InvalidInput, "loss weights must be finite and >= 0");
  }
  for (const ExposureWindow& win : config.windows) {
    if (!std::isfinite(win.t_start) || !std::isfinite(win.duration) ||
        win.duration < 0.0) {
      raise(ErrorKind::InvalidInput, "exposure windows must be finite, T >= 0");
    }
  }
  switch (config.task) {
    case RunConfig::Task::Simulate:
      run_simulate(config);
      return;
    case RunConfig::Task::Blur:
      run_blur(config);
      return;
    case RunConfig::Task::Deblur:
      run_deblur(config);
      return;
    case RunConfig::Task::Interpolate:
    case RunConfig::Task::Enhance:
      run_two_frame_task(config);
      return;
    case RunConfig::Task::Calibrate:
      run_calibrate(config);
      return;
    case RunConfig::Task::Evaluate:
      run_evaluate(config);
      return;
    case RunConfig::Task::DumpIntegral:
      run_dump_integral(config);
      return;
  }
  raise(ErrorKind::InvalidInput, "unknown task");
}

}  // namespace evsharp::cli
