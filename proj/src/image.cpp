#include "fpic/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "fpic/error.hpp"

namespace fpic {

Channel::Channel(std::size_t width, std::size_t height, std::vector<Sample> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width == 0 || height == 0) throw InvalidArgument("channel dimensions must be positive");
  if (data_.size() != width * height) throw InvalidArgument("channel data length != width*height");
}

RasterImage::RasterImage(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<Sample> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width == 0 || height == 0) throw InvalidArgument("image dimensions must be positive");
  if (channels != 1 && channels != 3) throw InvalidArgument("image must have 1 or 3 channels");
  if (data_.size() != width * height * channels)
    throw InvalidArgument("image data length != width*height*channels");
}

namespace {

constexpr std::size_t kMaxDimension = 1u << 16;

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Header integer; whitespace and '#' comments are skipped.
  std::size_t header_int(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw ParseError(field, "truncated header");
    if (!std::isdigit(bytes_[pos_])) throw ParseError(field, "expected decimal integer");
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > 1'000'000'000) throw ParseError(field, "value out of range");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from a binary raster.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw ParseError("maxval", "missing whitespace before raster");
    ++pos_;
  }

  std::vector<Sample> binary_payload(std::size_t count) {
    if (bytes_.size() - pos_ < count)
      throw ParseError("payload", "truncated: expected " + std::to_string(count) + " bytes, found " +
                                      std::to_string(bytes_.size() - pos_));
    std::vector<Sample> out(bytes_.begin() + pos_, bytes_.begin() + pos_ + count);
    pos_ += count;
    return out;
  }

  std::vector<Sample> ascii_payload(std::size_t count) {
    std::vector<Sample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      skip_space_and_comments();
      if (pos_ >= bytes_.size())
        throw ParseError("payload", "truncated: expected " + std::to_string(count) + " samples, found " +
                                        std::to_string(i));
      const std::size_t v = header_int("payload");
      if (v > 255) throw ParseError("payload", "sample exceeds maxval");
      out.push_back(static_cast<Sample>(v));
    }
    return out;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

RasterImage decode_pnm(std::span<const std::uint8_t> bytes) {
  const char kind = static_cast<char>(bytes[1]);
  const std::size_t channels = (kind == '2' || kind == '5') ? 1 : 3;
  const bool ascii = kind == '2' || kind == '3';

  PnmReader reader(bytes);
  const std::size_t width = reader.header_int("width");
  const std::size_t height = reader.header_int("height");
  if (width == 0 || width > kMaxDimension) throw ParseError("width", "out of range");
  if (height == 0 || height > kMaxDimension) throw ParseError("height", "out of range");
  const std::size_t maxval = reader.header_int("maxval");
  if (maxval != 255) throw ParseError("maxval", "only 255 is supported, got " + std::to_string(maxval));

  const std::size_t count = width * height * channels;
  std::vector<Sample> data;
  if (ascii) {
    data = reader.ascii_payload(count);
  } else {
    reader.end_header();
    data = reader.binary_payload(count);
  }
  return RasterImage(width, height, channels, std::move(data));
}

std::uint32_t read_le(std::span<const std::uint8_t> b, std::size_t off, std::size_t n) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint32_t>(b[off + i]) << (8 * i);
  return v;
}

void put_le(std::vector<std::uint8_t>& out, std::uint32_t v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

constexpr std::size_t kBmpFileHeader = 14;
constexpr std::size_t kBmpInfoHeader = 40;

RasterImage decode_bmp(std::span<const std::uint8_t> b) {
  if (b.size() < kBmpFileHeader + kBmpInfoHeader) throw ParseError("header", "truncated BMP header");
  const std::uint32_t offset = read_le(b, 10, 4);
  const std::uint32_t info_size = read_le(b, 14, 4);
  if (info_size < kBmpInfoHeader) throw ParseError("biSize", "BITMAPINFOHEADER required");
  const auto raw_width = static_cast<std::int32_t>(read_le(b, 18, 4));
  const auto raw_height = static_cast<std::int32_t>(read_le(b, 22, 4));
  const std::uint32_t planes = read_le(b, 26, 2);
  const std::uint32_t bpp = read_le(b, 28, 2);
  const std::uint32_t compression = read_le(b, 30, 4);
  if (planes != 1) throw ParseError("biPlanes", "must be 1");
  if (bpp != 24) throw ParseError("biBitCount", "only 24 bpp is supported, got " + std::to_string(bpp));
  if (compression != 0) throw ParseError("biCompression", "only BI_RGB is supported");
  if (raw_width <= 0 || static_cast<std::size_t>(raw_width) > kMaxDimension)
    throw ParseError("biWidth", "out of range");
  if (raw_height == 0 || raw_height == INT32_MIN ||
      static_cast<std::size_t>(raw_height < 0 ? -raw_height : raw_height) > kMaxDimension)
    throw ParseError("biHeight", "out of range");

  const bool top_down = raw_height < 0;
  const auto width = static_cast<std::size_t>(raw_width);
  const auto height = static_cast<std::size_t>(top_down ? -raw_height : raw_height);
  const std::size_t stride = (width * 3 + 3) & ~std::size_t{3};
  if (offset > b.size() || b.size() - offset < stride * height)
    throw ParseError("payload", "truncated pixel array");

  std::vector<Sample> data(width * height * 3);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t src_row = top_down ? y : height - 1 - y;
    const std::uint8_t* src = b.data() + offset + src_row * stride;
    Sample* dst = data.data() + y * width * 3;
    for (std::size_t x = 0; x < width; ++x) {
      dst[3 * x + 0] = src[3 * x + 2];
      dst[3 * x + 1] = src[3 * x + 1];
      dst[3 * x + 2] = src[3 * x + 0];
    }
  }
  return RasterImage(width, height, 3, std::move(data));
}

std::vector<std::uint8_t> encode_bmp(const RasterImage& img) {
  const std::size_t stride = (img.width() * 3 + 3) & ~std::size_t{3};
  const std::size_t pixel_bytes = stride * img.height();
  std::vector<std::uint8_t> out;
  out.reserve(kBmpFileHeader + kBmpInfoHeader + pixel_bytes);
  out.push_back('B');
  out.push_back('M');
  put_le(out, static_cast<std::uint32_t>(kBmpFileHeader + kBmpInfoHeader + pixel_bytes), 4);
  put_le(out, 0, 4);
  put_le(out, kBmpFileHeader + kBmpInfoHeader, 4);
  put_le(out, kBmpInfoHeader, 4);
  put_le(out, static_cast<std::uint32_t>(img.width()), 4);
  put_le(out, static_cast<std::uint32_t>(img.height()), 4);
  put_le(out, 1, 2);
  put_le(out, 24, 2);
  put_le(out, 0, 4);
  put_le(out, static_cast<std::uint32_t>(pixel_bytes), 4);
  put_le(out, 2835, 4);  // 72 dpi
  put_le(out, 2835, 4);
  put_le(out, 0, 4);
  put_le(out, 0, 4);

  const auto data = img.data();
  for (std::size_t y = img.height(); y-- > 0;) {
    const Sample* row = data.data() + y * img.width() * 3;
    for (std::size_t x = 0; x < img.width(); ++x) {
      out.push_back(row[3 * x + 2]);
      out.push_back(row[3 * x + 1]);
      out.push_back(row[3 * x + 0]);
    }
    out.insert(out.end(), stride - img.width() * 3, 0);
  }
  return out;
}

}  // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw ParseError("magic", "file too short");
  if (bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '3' || bytes[1] == '5' || bytes[1] == '6'))
    return decode_pnm(bytes);
  if (bytes[0] == 'B' && bytes[1] == 'M') return decode_bmp(bytes);
  throw ParseError("magic", "unsupported image format");
}

RasterImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return decode_image(bytes);
}

std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format) {
  switch (format) {
    case ImageFormat::pgm:
    case ImageFormat::ppm: {
      const bool gray = format == ImageFormat::pgm;
      if (img.channels() != (gray ? 1u : 3u))
        throw ShapeMismatch(std::string(gray ? "pgm" : "ppm") + " requires " + (gray ? "1" : "3") +
                            " channel(s), image has " + std::to_string(img.channels()));
      const std::string header = std::string(gray ? "P5" : "P6") + "\n" + std::to_string(img.width()) + " " +
                                 std::to_string(img.height()) + "\n255\n";
      std::vector<std::uint8_t> out(header.begin(), header.end());
      out.insert(out.end(), img.data().begin(), img.data().end());
      return out;
    }
    case ImageFormat::bmp:
      if (img.channels() != 3)
        throw ShapeMismatch("bmp requires 3 channels, image has " + std::to_string(img.channels()));
      return encode_bmp(img);
  }
  throw InvalidArgument("unknown image format");
}

void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format) {
  const auto bytes = encode_image(img, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Channel> split_channels(const RasterImage& img) {
  const std::size_t n = img.width() * img.height();
  std::vector<Channel> out;
  out.reserve(img.channels());
  const auto data = img.data();
  for (std::size_t ch = 0; ch < img.channels(); ++ch) {
    std::vector<Sample> plane(n);
    for (std::size_t i = 0; i < n; ++i) plane[i] = data[i * img.channels() + ch];
    out.emplace_back(img.width(), img.height(), std::move(plane));
  }
  return out;
}

RasterImage merge_channels(std::span<const Channel> channels) {
  if (channels.size() != 1 && channels.size() != 3)
    throw InvalidArgument("merge requires 1 or 3 channels, got " + std::to_string(channels.size()));
  const std::size_t w = channels[0].width();
  const std::size_t h = channels[0].height();
  for (const auto& c : channels)
    if (c.width() != w || c.height() != h) throw ShapeMismatch("channel dimensions differ");

  const std::size_t count = channels.size();
  std::vector<Sample> data(w * h * count);
  for (std::size_t ch = 0; ch < count; ++ch) {
    const auto plane = channels[ch].data();
    for (std::size_t i = 0; i < plane.size(); ++i) data[i * count + ch] = plane[i];
  }
  return RasterImage(w, h, count, std::move(data));
}

}  // namespace fpic
