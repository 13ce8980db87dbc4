#include "fpic/codec.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "fpic/entropy.hpp"
#include "fpic/error.hpp"

namespace fpic {

namespace {

std::uint16_t alpha_field(const SupportThreshold& alpha, std::size_t rows) {
  const double fraction = alpha.is_fraction() ? alpha.value() : alpha.value() / static_cast<double>(rows);
  const double scaled = std::round(fraction * 10000.0);
  return static_cast<std::uint16_t>(std::min(scaled, double{std::numeric_limits<std::uint16_t>::max()}));
}

// Runs `fn(i)` for each plane on its own thread; results keep plane order.
template <typename Fn>
auto per_plane(std::size_t count, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  if (count == 1) return std::vector<Result>{fn(0)};
  std::vector<std::future<Result>> jobs;
  for (std::size_t i = 0; i < count; ++i) jobs.push_back(std::async(std::launch::async, fn, i));
  std::vector<Result> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

EncodedChannel encode_labels(const LabelMatrix& labels, const ClusterModel& model, std::size_t min_support) {
  if (model.k() == 0 || model.k() > 256) throw InvalidArgument("cluster count out of range");
  for (Label l : labels.labels())
    if (l >= model.k()) throw InvalidArgument("label " + std::to_string(l) + " >= k=" + std::to_string(model.k()));

  const auto db = SequenceDatabase::from_labels(labels);
  EncodedChannel out;
  out.mined = mine_closed(db, min_support);
  out.tiling = modified_support(db, out.mined);
  out.section.model = model;
  out.section.table = build_code(tiling_weights(out.tiling));
  out.section.stream = encode_tokens(out.tiling, out.section.table);
  return out;
}

CompressedImage compress_quantized(std::span<const Quantization> planes, const SupportThreshold& alpha) {
  if (planes.size() != 1 && planes.size() != 3) throw InvalidArgument("need 1 or 3 planes");
  const std::size_t w = planes[0].labels.width();
  const std::size_t h = planes[0].labels.height();
  for (const auto& p : planes)
    if (p.labels.width() != w || p.labels.height() != h) throw ShapeMismatch("plane dimensions differ");
  if (w > std::numeric_limits<std::uint32_t>::max() || h > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("image too large for the container");

  const std::size_t min_support = alpha.resolve(h);
  CompressedImage ci;
  ci.width = static_cast<std::uint32_t>(w);
  ci.height = static_cast<std::uint32_t>(h);
  ci.alpha_per_10000 = alpha_field(alpha, h);
  for (auto& enc : per_plane(planes.size(), [&](std::size_t i) {
         return encode_labels(planes[i].labels, planes[i].model, min_support).section;
       }))
    ci.channels.push_back(std::move(enc));
  return ci;
}

CompressedImage compress(const RasterImage& img, const CodecParams& params) {
  if (!params.channel_k.empty() && params.channel_k.size() != img.channels())
    throw InvalidArgument("per-channel k list must name every channel");
  auto k_for = [&](std::size_t ch) { return params.channel_k.empty() ? params.k : params.channel_k[ch]; };
  for (std::size_t ch = 0; ch < img.channels(); ++ch)
    if (k_for(ch) == 0 || k_for(ch) > 256) throw InvalidArgument("k must be in [1, 256]");

  const auto planes = split_channels(img);
  const auto quantized = per_plane(planes.size(), [&](std::size_t i) {
    return quantize(planes[i], k_for(i), params.mode, params.seed);
  });
  return compress_quantized(quantized, params.alpha);
}

RasterImage decompress(const CompressedImage& ci) {
  if (ci.channels.size() != 1 && ci.channels.size() != 3) throw FormatError("channel count must be 1 or 3");
  const std::size_t n = std::size_t{ci.width} * ci.height;
  const auto planes = per_plane(ci.channels.size(), [&](std::size_t i) {
    const auto& ch = ci.channels[i];
    return reconstruct(decode_stream(ch.stream, ch.table, n, ci.width), ch.model);
  });
  return merge_channels(planes);
}

}  // namespace fpic
