#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evsharp/events.hpp"
#include "evsharp/frame.hpp"
#include "evsharp/integral.hpp"
#include "evsharp/simulate.hpp"

namespace evsharp {

// Event container format: 16-byte header (magic "EVS1", u16 width,
// u16 height, u64 count), then 16 bytes per event (f64 t, u16 x, u16 y,
// i8 p, 3 zero bytes), all little-endian. A CSV alternative with header
// line "t,x,y,p" is accepted on load and selected on save by the .csv
// extension.
struct EventLoadOptions {
  std::optional<int> width;
  std::optional<int> height;
  std::optional<TimeSpan> span;
  bool invert_polarity = false;
};

void save_events(const std::string& path, const EventStream& stream);
EventStream load_events(const std::string& path,
                        const EventLoadOptions& options = {});

// Frame formats, picked by extension: .pgm is binary 8-bit P5 with values
// mapped linearly by value/255 and clamped to the intensity range; .raw is
// an 8-byte header (u32 width, u32 height, little-endian) followed by
// row-major f64 values.
void save_frame(const std::string& path, const Frame& frame);
Frame load_frame(const std::string& path, ExposureWindow exposure);

struct RasterF64 {
  int width = 0;
  int height = 0;
  std::vector<double> values;
};

void save_raster_f64(const std::string& path, int width, int height,
                     const std::vector<double>& values);
RasterF64 load_raster_f64(const std::string& path);

void save_integral(const std::string& path, const IntegralMap& map);

// A latent video on disk is a directory of numbered frames plus a
// manifest.txt with one "index timestamp" line per frame.
void save_video(const std::string& dir, const LatentVideo& video,
                const std::string& format);
LatentVideo load_video(const std::string& dir);

}  // namespace evsharp
