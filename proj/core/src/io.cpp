#include "evsharp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evsharp/errors.hpp"

namespace evsharp {

namespace {

constexpr char kEventMagic[4] = {'E', 'V', 'S', '1'};

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_f64(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(out, bits);
}

class ByteReader {
 public:
  ByteReader(const std::string& data, const std::string& path)
      : data_(data), path_(path) {}

  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint8_t>(data_[pos_]) |
                      (static_cast<std::uint16_t>(
                           static_cast<std::uint8_t>(data_[pos_ + 1]))
                       << 8);
    pos_ += 2;
    return v;
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(
               static_cast<std::uint8_t>(data_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<std::uint8_t>(data_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  double f64() {
    std::uint64_t bits = u64();
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
  }

  std::int8_t i8() {
    need(1);
    return static_cast<std::int8_t>(data_[pos_++]);
  }

  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  void need(std::size_t n) {
    if (pos_ + n > data_.size()) {
      raise(ErrorKind::Io, "truncated file: " + path_);
    }
  }

  const std::string& data_;
  std::string path_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::Io, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) {
    raise(ErrorKind::Io, "cannot read " + path);
  }
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(ErrorKind::Io, "cannot open " + path + " for writing");
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    raise(ErrorKind::Io, "cannot write " + path);
  }
}

std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

void save_events_binary(const std::string& path, const EventStream& stream) {
  std::string out;
  out.reserve(16 + stream.size() * 16);
  out.append(kEventMagic, 4);
  put_u16(out, static_cast<std::uint16_t>(stream.width()));
  put_u16(out, static_cast<std::uint16_t>(stream.height()));
  put_u64(out, stream.size());
  for (const Event& e : stream.events()) {
    put_f64(out, e.t);
    put_u16(out, e.x);
    put_u16(out, e.y);
    out.push_back(static_cast<char>(e.p));
    out.append(3, '\0');
  }
  write_file(path, out);
}

void save_events_csv(const std::string& path, const EventStream& stream) {
  std::string out = "t,x,y,p\n";
  char line[96];
  for (const Event& e : stream.events()) {
    std::snprintf(line, sizeof(line), "%.17g,%u,%u,%d\n", e.t,
                  static_cast<unsigned>(e.x), static_cast<unsigned>(e.y),
                  static_cast<int>(e.p));
    out += line;
  }
  write_file(path, out);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<Event> parse_csv_events(const std::string& data,
                                    const std::string& path) {
  std::istringstream in(data);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,x,y,p") {
    raise(ErrorKind::Io, "missing t,x,y,p header in " + path);
  }
  std::vector<Event> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = trim(line);
    if (row.empty()) {
      continue;
    }
    double t;
    long x;
    long y;
    long p;
    char tail;
    int fields = std::sscanf(row.c_str(), "%lf,%ld,%ld,%ld%c", &t, &x, &y, &p,
                             &tail);
    if (fields != 4) {
      raise(ErrorKind::Io,
            "bad event row " + std::to_string(line_no) + " in " + path);
    }
    if (x < 0 || y < 0 || x > 0xffff || y > 0xffff || (p != 1 && p != -1)) {
      raise(ErrorKind::Io,
            "bad event values at row " + std::to_string(line_no) + " in " +
                path);
    }
    events.push_back(Event{t, static_cast<std::uint16_t>(x),
                           static_cast<std::uint16_t>(y),
                           static_cast<std::int8_t>(p)});
  }
  return events;
}

EventStream assemble_stream(std::vector<Event> events, int width, int height,
                            const EventLoadOptions& options,
                            const std::string& path) {
  if (options.invert_polarity) {
    for (Event& e : events) {
      e.p = static_cast<std::int8_t>(-e.p);
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  TimeSpan span{0.0, 0.0};
  if (options.span) {
    span = *options.span;
  } else if (!events.empty()) {
    span = TimeSpan{events.front().t, events.back().t};
  }
  if (width <= 0 || height <= 0) {
    raise(ErrorKind::Io, "event geometry unknown for " + path);
  }
  return EventStream(width, height, std::move(events), span);
}

Frame frame_from_raster(RasterF64 raster, ExposureWindow exposure) {
  return Frame::clamped(raster.width, raster.height, std::move(raster.values),
                        exposure);
}

// PGM token scan: whitespace-separated fields, # comments to end of line.
class PgmParser {
 public:
  PgmParser(const std::string& data, const std::string& path)
      : data_(data), path_(path) {}

  std::string token() {
    while (pos_ < data_.size()) {
      char ch = data_[pos_];
      if (ch == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
    std::size_t begin = pos_;
    while (pos_ < data_.size() &&
           !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      ++pos_;
    }
    if (begin == pos_) {
      raise(ErrorKind::Io, "truncated header in " + path_);
    }
    return data_.substr(begin, pos_ - begin);
  }

  long number() {
    std::string tok = token();
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') {
      raise(ErrorKind::Io, "bad header field '" + tok + "' in " + path_);
    }
    return v;
  }

  // One whitespace byte separates the header from the pixel block.
  std::size_t pixel_offset() {
    if (pos_ >= data_.size()) {
      raise(ErrorKind::Io, "missing pixel data in " + path_);
    }
    return pos_ + 1;
  }

 private:
  const std::string& data_;
  std::string path_;
  std::size_t pos_ = 0;
};

Frame load_pgm(const std::string& path, ExposureWindow exposure) {
  std::string data = read_file(path);
  PgmParser parser(data, path);
  if (parser.token() != "P5") {
    raise(ErrorKind::Io, "not a binary PGM: " + path);
  }
  long w = parser.number();
  long h = parser.number();
  long maxval = parser.number();
  if (w <= 0 || h <= 0 || w > 0xffff || h > 0xffff) {
    raise(ErrorKind::Io, "bad PGM geometry in " + path);
  }
  if (maxval != 255) {
    raise(ErrorKind::Io, "unsupported PGM maxval in " + path);
  }
  std::size_t offset = parser.pixel_offset();
  std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (offset + count > data.size()) {
    raise(ErrorKind::Io, "truncated pixel data in " + path);
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] =
        static_cast<double>(static_cast<std::uint8_t>(data[offset + i])) /
        255.0;
  }
  return Frame::clamped(static_cast<int>(w), static_cast<int>(h),
                        std::move(values), exposure);
}

void save_pgm(const std::string& path, const Frame& frame) {
  char header[64];
  std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", frame.width(),
                frame.height());
  std::string out = header;
  out.reserve(out.size() + frame.data().size());
  for (double v : frame.data()) {
    long q = std::lround(v * 255.0);
    q = std::clamp(q, 0L, 255L);
    out.push_back(static_cast<char>(static_cast<unsigned char>(q)));
  }
  write_file(path, out);
}

}  // namespace

void save_events(const std::string& path, const EventStream& stream) {
  if (lower_extension(path) == ".csv") {
    save_events_csv(path, stream);
  } else {
    save_events_binary(path, stream);
  }
}

EventStream load_events(const std::string& path,
                        const EventLoadOptions& options) {
  std::string data = read_file(path);
  if (data.size() >= 4 && std::memcmp(data.data(), kEventMagic, 4) == 0) {
    ByteReader reader(data, path);
    reader.skip(4);
    int width = reader.u16();
    int height = reader.u16();
    std::uint64_t count = reader.u64();
    std::vector<Event> events;
    events.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      Event e;
      e.t = reader.f64();
      e.x = reader.u16();
      e.y = reader.u16();
      e.p = reader.i8();
      reader.skip(3);
      events.push_back(e);
    }
    return assemble_stream(std::move(events), options.width.value_or(width),
                           options.height.value_or(height), options, path);
  }
  std::vector<Event> events = parse_csv_events(data, path);
  int width = options.width.value_or(0);
  int height = options.height.value_or(0);
  if (width <= 0 || height <= 0) {
    int max_x = -1;
    int max_y = -1;
    for (const Event& e : events) {
      max_x = std::max(max_x, static_cast<int>(e.x));
      max_y = std::max(max_y, static_cast<int>(e.y));
    }
    if (width <= 0) {
      width = max_x + 1;
    }
    if (height <= 0) {
      height = max_y + 1;
    }
  }
  return assemble_stream(std::move(events), width, height, options, path);
}

void save_raster_f64(const std::string& path, int width, int height,
                     const std::vector<double>& values) {
  if (width <= 0 || height <= 0 ||
      values.size() != static_cast<std::size_t>(width) * height) {
    raise(ErrorKind::InvalidInput, "raster buffer does not match geometry");
  }
  std::string out;
  out.reserve(8 + values.size() * 8);
  put_u32(out, static_cast<std::uint32_t>(width));
  put_u32(out, static_cast<std::uint32_t>(height));
  for (double v : values) {
    put_f64(out, v);
  }
  write_file(path, out);
}

RasterF64 load_raster_f64(const std::string& path) {
  std::string data = read_file(path);
  ByteReader reader(data, path);
  RasterF64 raster;
  raster.width = static_cast<int>(reader.u32());
  raster.height = static_cast<int>(reader.u32());
  if (raster.width <= 0 || raster.height <= 0) {
    raise(ErrorKind::Io, "bad raster geometry in " + path);
  }
  std::size_t count =
      static_cast<std::size_t>(raster.width) * raster.height;
  raster.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    raster.values[i] = reader.f64();
  }
  return raster;
}

void save_integral(const std::string& path, const IntegralMap& map) {
  save_raster_f64(path, map.width(), map.height(), map.data());
}

void save_frame(const std::string& path, const Frame& frame) {
  std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    save_pgm(path, frame);
  } else if (ext == ".raw" || ext == ".f64") {
    save_raster_f64(path, frame.width(), frame.height(), frame.data());
  } else {
    raise(ErrorKind::InvalidInput, "unsupported frame format: " + path);
  }
}

Frame load_frame(const std::string& path, ExposureWindow exposure) {
  std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    return load_pgm(path, exposure);
  }
  if (ext == ".raw" || ext == ".f64") {
    return frame_from_raster(load_raster_f64(path), exposure);
  }
  raise(ErrorKind::InvalidInput, "unsupported frame format: " + path);
}

void save_video(const std::string& dir, const LatentVideo& video,
                const std::string& format) {
  if (format != "pgm" && format != "raw") {
    raise(ErrorKind::InvalidInput, "unsupported video format: " + format);
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    raise(ErrorKind::Io, "cannot create directory " + dir);
  }
  std::string manifest;
  char line[96];
  for (std::size_t i = 0; i < video.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06zu.%s", i, format.c_str());
    save_frame((std::filesystem::path(dir) / name).string(), video.frame(i));
    std::snprintf(line, sizeof(line), "%zu %.17g\n", i, video.timestamp(i));
    manifest += line;
  }
  write_file((std::filesystem::path(dir) / "manifest.txt").string(), manifest);
}

LatentVideo load_video(const std::string& dir) {
  std::string manifest =
      read_file((std::filesystem::path(dir) / "manifest.txt").string());
  std::istringstream in(manifest);
  std::string line;
  std::vector<Frame> frames;
  while (std::getline(in, line)) {
    std::string row = trim(line);
    if (row.empty()) {
      continue;
    }
    std::size_t index;
    double t;
    if (std::sscanf(row.c_str(), "%zu %lf", &index, &t) != 2) {
      raise(ErrorKind::Io, "bad manifest line in " + dir + ": " + row);
    }
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06zu", index);
    std::filesystem::path base = std::filesystem::path(dir) / name;
    std::filesystem::path candidate = base;
    candidate += ".pgm";
    if (!std::filesystem::exists(candidate)) {
      candidate = base;
      candidate += ".raw";
    }
    if (!std::filesystem::exists(candidate)) {
      raise(ErrorKind::Io, "missing frame file for manifest entry " +
                               std::to_string(index) + " in " + dir);
    }
    frames.push_back(
        load_frame(candidate.string(), ExposureWindow{t, 0.0}));
  }
  if (frames.empty()) {
    raise(ErrorKind::Io, "empty manifest in " + dir);
  }
  return LatentVideo(std::move(frames));
}

}  // namespace evsharp
