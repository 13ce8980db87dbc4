#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fpic/image.hpp"

namespace fpic {

using Label = std::uint8_t;

/// Cluster identifier table: `means[id]` is the pixel value substituted for
/// identifier `id` at decode time. Means ascend with the identifier.
struct ClusterModel {
  std::vector<Sample> means;

  std::size_t k() const noexcept { return means.size(); }
  friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

/// Per-pixel cluster identifiers, row-major, same shape as the source channel.
class LabelMatrix {
 public:
  LabelMatrix() = default;
  LabelMatrix(std::size_t width, std::size_t height, std::vector<Label> labels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::span<const Label> row(std::size_t r) const noexcept {
    return std::span<const Label>(labels_).subspan(r * width_, width_);
  }

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Label> labels_;
};

enum class ClusteringMode {
  dp,     ///< exact 1-D k-means over the value histogram
  lloyd,  ///< seeded Lloyd iterations
};

struct Quantization {
  ClusterModel model;
  LabelMatrix labels;
};

/// Clusters the channel's values into at most `k` groups. When the channel has
/// fewer than `k` distinct values the effective k shrinks to that count.
/// Throws InvalidArgument for k outside [1, 256] or an empty channel.
Quantization quantize(const Channel& ch, std::size_t k, ClusteringMode mode = ClusteringMode::dp,
                      std::uint64_t seed = 0);

/// Nearest-mean labelling against a fixed model; ties go to the lower id.
LabelMatrix assign_labels(const Channel& ch, const ClusterModel& model);

Channel reconstruct(const LabelMatrix& labels, const ClusterModel& model);

}  // namespace fpic
