#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fpic/container.hpp"
#include "fpic/image.hpp"
#include "fpic/quantizer.hpp"
#include "fpic/seqmine.hpp"
#include "fpic/tiling.hpp"

namespace fpic {

struct CodecParams {
  std::size_t k = 8;
  SupportThreshold alpha = SupportThreshold::fraction(0.46);
  ClusteringMode mode = ClusteringMode::dp;
  std::uint64_t seed = 0;
  /// Optional per-channel cluster counts; overrides `k` when non-empty.
  std::vector<std::size_t> channel_k;
};

/// A coded plane together with the intermediate results that produced it.
struct EncodedChannel {
  ChannelSection section;
  MinedPatternSet mined;
  TilingRecord tiling;
};

/// Mining, tiling and entropy coding of one quantized plane. `min_support` is
/// the absolute row threshold.
EncodedChannel encode_labels(const LabelMatrix& labels, const ClusterModel& model, std::size_t min_support);

/// Codes already-quantized planes (all the same shape).
CompressedImage compress_quantized(std::span<const Quantization> planes, const SupportThreshold& alpha);

/// Throws InvalidArgument for invalid parameters.
CompressedImage compress(const RasterImage& img, const CodecParams& params);

/// Throws DecodeError when a stream does not decode to width*height labels.
RasterImage decompress(const CompressedImage& ci);

}  // namespace fpic
