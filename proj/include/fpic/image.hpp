#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fpic {

using Sample = std::uint8_t;

/// Single-plane pixel matrix, row-major.
class Channel {
 public:
  Channel() = default;
  Channel(std::size_t width, std::size_t height, std::vector<Sample> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const Sample> data() const noexcept { return data_; }
  std::span<const Sample> row(std::size_t r) const noexcept {
    return std::span<const Sample>(data_).subspan(r * width_, width_);
  }
  Sample at(std::size_t r, std::size_t c) const { return data_.at(r * width_ + c); }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Sample> data_;
};

/// Interleaved 1- or 3-channel raster. Row-major, top row first.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<Sample> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t sample_count() const noexcept { return data_.size(); }

  std::span<const Sample> data() const noexcept { return data_; }
  Sample at(std::size_t r, std::size_t c, std::size_t ch = 0) const {
    return data_.at((r * width_ + c) * channels_ + ch);
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<Sample> data_;
};

enum class ImageFormat { pgm, ppm, bmp };

/// Reads PGM (P2/P5), PPM (P3/P6) with maxval 255, or 24-bit BI_RGB BMP.
/// Throws IoError when the file cannot be read and ParseError otherwise.
RasterImage load_image(const std::filesystem::path& path);
RasterImage decode_image(std::span<const std::uint8_t> bytes);

/// PGM/PPM are written in binary form (P5/P6). BMP requires 3 channels.
void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format);
std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format);

std::vector<Channel> split_channels(const RasterImage& img);
RasterImage merge_channels(std::span<const Channel> channels);

}  // namespace fpic
