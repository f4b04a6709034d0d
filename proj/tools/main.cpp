#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evsharp/errors.hpp"
#include "pipeline.hpp"

namespace {

using evsharp::Error;
using evsharp::ErrorKind;
using evsharp::ExposureWindow;
using evsharp::TimeSpan;
using evsharp::cli::RunConfig;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return 3;
    case ErrorKind::InvalidInterval:
      return 4;
    case ErrorKind::Bounds:
      return 5;
    case ErrorKind::Coverage:
      return 6;
    case ErrorKind::OutOfRange:
      return 7;
    case ErrorKind::DimensionMismatch:
      return 8;
    case ErrorKind::EmptyWindow:
      return 9;
    case ErrorKind::InvalidInput:
      return 10;
    case ErrorKind::CalibrationImpossible:
      return 11;
    case ErrorKind::InternalConsistency:
      return 12;
  }
  return 1;
}

std::vector<ExposureWindow> parse_windows(const std::string& spec) {
  std::vector<ExposureWindow> windows;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t next = spec.find(';', pos);
    std::string part = spec.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    double t_start = 0.0;
    double duration = 0.0;
    char tail;
    if (std::sscanf(part.c_str(), "%lf,%lf%c", &t_start, &duration, &tail) !=
        2) {
      evsharp::raise(ErrorKind::InvalidInput,
                     "bad window '" + part + "'; expected t_start,duration");
    }
    windows.push_back(ExposureWindow{t_start, duration});
    if (next == std::string::npos) {
      break;
    }
    pos = next + 1;
  }
  if (windows.empty()) {
    evsharp::raise(ErrorKind::InvalidInput, "no exposure windows given");
  }
  return windows;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string windows_spec;
  std::string weights_spec;
  std::string span_spec;

  CLI::App app{
      "evsharp: reconstruct sharp latent frames at arbitrary timestamps "
      "from reference frames plus event streams"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* sub, bool events, bool frames, bool out) {
    if (events) {
      sub->add_option("--events", cfg.events_path, "event file (.evs or .csv)");
      sub->add_flag("--invert-polarity", cfg.invert_polarity,
                    "negate event polarities on load");
      sub->add_option("--span", span_spec,
                      "override the stream span as begin,end");
    }
    if (frames) {
      sub->add_option("--frames", cfg.frames,
                      "reference frame files or a video directory")
          ->delimiter(',');
      sub->add_option("--windows", windows_spec,
                      "exposure windows as t_start,duration;...");
    }
    if (out) {
      sub->add_option("--out", cfg.out_path, "output path");
    }
    sub->add_option("--format", cfg.format, "frame format: pgm or raw")
        ->capture_default_str();
    sub->set_config("--config", "",
                    "read option defaults from a key=value file");
  };
  auto add_model = [&](CLI::App* sub, bool with_queries) {
    sub->add_option("--c", cfg.threshold_spec,
                    "contrast threshold value, or 'auto'")
        ->capture_default_str();
    if (with_queries) {
      sub->add_option("--queries", cfg.query_spec,
                      "query count or explicit times t1,t2,...");
    }
    sub->add_option("--bins", cfg.bins, "temporal bin count for grid exports")
        ->capture_default_str();
    sub->add_option("--weights", weights_spec,
                    "loss weights as blur-event,sharp-blur,blur-blur");
    sub->add_option("--c-range", [&cfg](const std::vector<std::string>& vals) {
          double lo = 0.0;
          double hi = 0.0;
          char tail;
          if (vals.empty() ||
              std::sscanf(vals.back().c_str(), "%lf,%lf%c", &lo, &hi, &tail) !=
                  2) {
            return false;
          }
          cfg.c_lo = lo;
          cfg.c_hi = hi;
          return true;
        },
        "calibration search range as lo,hi");
  };

  CLI::App* sim = app.add_subcommand(
      "simulate", "generate events and blurry frames from a latent video");
  add_io(sim, false, true, true);
  add_model(sim, false);

  CLI::App* blr =
      app.add_subcommand("blur", "average a latent video over one exposure");
  add_io(blr, false, true, true);

  CLI::App* deb = app.add_subcommand(
      "deblur", "restore latent frames inside a blurry exposure");
  add_io(deb, true, true, true);
  add_model(deb, true);

  CLI::App* itp = app.add_subcommand(
      "interpolate", "synthesize frames between two sharp references");
  add_io(itp, true, true, true);
  add_model(itp, true);

  CLI::App* enh = app.add_subcommand(
      "enhance", "reconstruct latents across a pair of exposures");
  add_io(enh, true, true, true);
  add_model(enh, true);

  CLI::App* cal = app.add_subcommand(
      "calibrate", "estimate the contrast threshold and report losses");
  add_io(cal, true, true, false);
  add_model(cal, true);

  CLI::App* evl = app.add_subcommand(
      "evaluate", "score restored frames against reference frames");
  add_io(evl, false, true, false);
  evl->add_option("--ref", cfg.ref_path, "reference frame directory");

  CLI::App* dmp = app.add_subcommand(
      "dump-integral", "write the integral map for one query time");
  add_io(dmp, true, false, true);
  add_model(dmp, false);
  dmp->add_option("--windows", windows_spec,
                  "exposure window as t_start,duration");
  CLI::Option* at_opt =
      dmp->add_option("--at", cfg.at_time, "query time for the integral map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(sim)) {
      cfg.task = RunConfig::Task::Simulate;
    } else if (app.got_subcommand(blr)) {
      cfg.task = RunConfig::Task::Blur;
    } else if (app.got_subcommand(deb)) {
      cfg.task = RunConfig::Task::Deblur;
    } else if (app.got_subcommand(itp)) {
      cfg.task = RunConfig::Task::Interpolate;
    } else if (app.got_subcommand(enh)) {
      cfg.task = RunConfig::Task::Enhance;
    } else if (app.got_subcommand(cal)) {
      cfg.task = RunConfig::Task::Calibrate;
    } else if (app.got_subcommand(evl)) {
      cfg.task = RunConfig::Task::Evaluate;
    } else if (app.got_subcommand(dmp)) {
      cfg.task = RunConfig::Task::DumpIntegral;
    }
    if (!windows_spec.empty()) {
      cfg.windows = parse_windows(windows_spec);
    }
    if (!weights_spec.empty()) {
      double a = 0.0;
      double b = 0.0;
      double g = 0.0;
      char tail;
      if (std::sscanf(weights_spec.c_str(), "%lf,%lf,%lf%c", &a, &b, &g,
                      &tail) != 3) {
        evsharp::raise(ErrorKind::InvalidInput,
                       "bad --weights; expected three comma-separated values");
      }
      cfg.weights = evsharp::LossWeights{a, b, g};
    }
    if (!span_spec.empty()) {
      double begin = 0.0;
      double end = 0.0;
      char tail;
      if (std::sscanf(span_spec.c_str(), "%lf,%lf%c", &begin, &end, &tail) !=
          2) {
        evsharp::raise(ErrorKind::InvalidInput,
                       "bad --span; expected begin,end");
      }
      cfg.span = TimeSpan{begin, end};
    }
    cfg.has_at = at_opt->count() > 0;
    evsharp::cli::run(cfg);
    return 0;
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s: %s\n", evsharp::to_string(err.kind()),
                 err.what());
    return exit_code_for(err.kind());
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: internal: %s\n", ex.what());
    return 1;
  }
}
