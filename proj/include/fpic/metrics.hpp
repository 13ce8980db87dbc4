#pragma once

#include <cstddef>
#include <cstdint>

#include "fpic/image.hpp"

namespace fpic {

inline constexpr double kPeakValue = 255.0;
inline constexpr std::size_t kSsimWindow = 8;

struct QualityReport {
  double mse = 0;
  double psnr_db = 0;  ///< +inf when mse == 0
  double ssim = 0;
};

/// Mean squared difference over every sample, channels pooled.
double mse(const RasterImage& a, const RasterImage& b);

/// 10·log10(255² / MSE); +infinity for identical images.
double psnr(const RasterImage& a, const RasterImage& b);

/// Mean SSIM over all 8×8 windows (stride 1) of the luma plane, with
/// C1 = (0.01·255)² and C2 = (0.03·255)². Throws InvalidArgument when either
/// dimension is below the window size.
double ssim(const RasterImage& a, const RasterImage& b);

QualityReport evaluate(const RasterImage& original, const RasterImage& candidate);

/// uncompressed / compressed. Throws InvalidArgument when either is zero.
double compression_ratio(std::uint64_t uncompressed_bits, std::uint64_t compressed_bits);

}  // namespace fpic
