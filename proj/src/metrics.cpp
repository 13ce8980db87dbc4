#include "fpic/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fpic/error.hpp"

namespace fpic {

namespace {

void require_same_shape(const RasterImage& a, const RasterImage& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels())
    throw ShapeMismatch("images differ in shape");
}

std::vector<double> luma(const RasterImage& img) {
  const std::size_t n = img.width() * img.height();
  std::vector<double> y(n);
  const auto d = img.data();
  if (img.channels() == 1) {
    for (std::size_t i = 0; i < n; ++i) y[i] = d[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.299 * d[3 * i] + 0.587 * d[3 * i + 1] + 0.114 * d[3 * i + 2];
  }
  return y;
}

}  // namespace

double mse(const RasterImage& a, const RasterImage& b) {
  require_same_shape(a, b);
  const auto da = a.data();
  const auto db = b.data();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const std::int64_t d = std::int64_t{da[i]} - std::int64_t{db[i]};
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(da.size());
}

double psnr(const RasterImage& a, const RasterImage& b) {
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeakValue * kPeakValue / e);
}

double ssim(const RasterImage& a, const RasterImage& b) {
  require_same_shape(a, b);
  if (a.width() < kSsimWindow || a.height() < kSsimWindow)
    throw InvalidArgument("SSIM needs images of at least 8x8");

  constexpr double c1 = (0.01 * kPeakValue) * (0.01 * kPeakValue);
  constexpr double c2 = (0.03 * kPeakValue) * (0.03 * kPeakValue);
  const auto x = luma(a);
  const auto y = luma(b);
  const std::size_t w = a.width();
  const double n = kSsimWindow * kSsimWindow;

  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t r = 0; r + kSsimWindow <= a.height(); ++r) {
    for (std::size_t c = 0; c + kSsimWindow <= w; ++c) {
      double sx = 0, sy = 0;
      for (std::size_t i = 0; i < kSsimWindow; ++i)
        for (std::size_t j = 0; j < kSsimWindow; ++j) {
          sx += x[(r + i) * w + c + j];
          sy += y[(r + i) * w + c + j];
        }
      const double mx = sx / n, my = sy / n;
      double vx = 0, vy = 0, cov = 0;
      for (std::size_t i = 0; i < kSsimWindow; ++i)
        for (std::size_t j = 0; j < kSsimWindow; ++j) {
          const double dx = x[(r + i) * w + c + j] - mx;
          const double dy = y[(r + i) * w + c + j] - my;
          vx += dx * dx;
          vy += dy * dy;
          cov += dx * dy;
        }
      vx /= n;
      vy /= n;
      cov /= n;
      total += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

QualityReport evaluate(const RasterImage& original, const RasterImage& candidate) {
  return {mse(original, candidate), psnr(original, candidate), ssim(original, candidate)};
}

double compression_ratio(std::uint64_t uncompressed_bits, std::uint64_t compressed_bits) {
  if (uncompressed_bits == 0 || compressed_bits == 0) throw InvalidArgument("sizes must be positive");
  return static_cast<double>(uncompressed_bits) / static_cast<double>(compressed_bits);
}

}  // namespace fpic
