#include "fpic/quantizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fpic/error.hpp"

namespace fpic {

LabelMatrix::LabelMatrix(std::size_t width, std::size_t height, std::vector<Label> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (width == 0 || height == 0) throw InvalidArgument("label matrix dimensions must be positive");
  if (labels_.size() != width * height) throw InvalidArgument("label count != width*height");
}

namespace {

struct Bin {
  Sample value;
  std::uint64_t count;
};

std::vector<Bin> histogram(const Channel& ch) {
  std::array<std::uint64_t, 256> counts{};
  for (Sample s : ch.data()) ++counts[s];
  std::vector<Bin> bins;
  for (std::size_t v = 0; v < counts.size(); ++v)
    if (counts[v] != 0) bins.push_back({static_cast<Sample>(v), counts[v]});
  return bins;
}

// Rounded (half away from zero) average of bins [first, last).
Sample rounded_mean(std::span<const Bin> bins) {
  std::uint64_t sum = 0, n = 0;
  for (const auto& b : bins) {
    sum += b.value * b.count;
    n += b.count;
  }
  return static_cast<Sample>((2 * sum + n) / (2 * n));
}

// Optimal partition of the sorted histogram into k contiguous groups. Returns
// the start index of each group.
std::vector<std::size_t> optimal_breaks(std::span<const Bin> bins, std::size_t k) {
  const std::size_t d = bins.size();
  std::vector<double> s1(d + 1, 0.0), s2(d + 1, 0.0), w(d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double v = bins[i].value;
    const double c = static_cast<double>(bins[i].count);
    w[i + 1] = w[i] + c;
    s1[i + 1] = s1[i] + c * v;
    s2[i + 1] = s2[i] + c * v * v;
  }
  // SSE of bins [i, j).
  auto sse = [&](std::size_t i, std::size_t j) {
    const double n = w[j] - w[i];
    const double s = s1[j] - s1[i];
    return (s2[j] - s2[i]) - s * s / n;
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[g][j]: best SSE covering bins [0, j) with g groups.
  std::vector<std::vector<double>> cost(k + 1, std::vector<double>(d + 1, kInf));
  std::vector<std::vector<std::size_t>> split(k + 1, std::vector<std::size_t>(d + 1, 0));
  cost[0][0] = 0.0;
  for (std::size_t g = 1; g <= k; ++g) {
    for (std::size_t j = g; j <= d - (k - g); ++j) {
      for (std::size_t i = g - 1; i < j; ++i) {
        if (cost[g - 1][i] == kInf) continue;
        const double c = cost[g - 1][i] + sse(i, j);
        // Strict improvement with a relative margin keeps the choice stable
        // against floating-point noise.
        if (c < cost[g][j] - 1e-9 * (1.0 + std::abs(c))) {
          cost[g][j] = c;
          split[g][j] = i;
        }
      }
    }
  }

  std::vector<std::size_t> starts(k);
  std::size_t j = d;
  for (std::size_t g = k; g >= 1; --g) {
    starts[g - 1] = split[g][j];
    j = split[g][j];
  }
  return starts;
}

ClusterModel dp_model(std::span<const Bin> bins, std::size_t k) {
  const auto starts = optimal_breaks(bins, k);
  ClusterModel model;
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t end = g + 1 < k ? starts[g + 1] : bins.size();
    model.means.push_back(rounded_mean(bins.subspan(starts[g], end - starts[g])));
  }
  return model;
}

constexpr int kLloydIterations = 100;

ClusterModel lloyd_model(std::span<const Bin> bins, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picks(bins.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  std::shuffle(picks.begin(), picks.end(), rng);
  std::vector<double> centers;
  for (std::size_t i = 0; i < k; ++i) centers.push_back(bins[picks[i]].value);
  std::sort(centers.begin(), centers.end());

  std::vector<std::size_t> assign(bins.size(), k);
  for (int iter = 0; iter < kLloydIterations; ++iter) {
    bool changed = false;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < k; ++c)
        if (std::abs(bins[b].value - centers[c]) < std::abs(bins[b].value - centers[best])) best = c;
      if (assign[b] != best) {
        assign[b] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sum(k, 0.0), n(k, 0.0);
    for (std::size_t b = 0; b < bins.size(); ++b) {
      sum[assign[b]] += static_cast<double>(bins[b].value) * static_cast<double>(bins[b].count);
      n[assign[b]] += static_cast<double>(bins[b].count);
    }
    // Empty clusters keep their previous center.
    for (std::size_t c = 0; c < k; ++c)
      if (n[c] > 0) centers[c] = sum[c] / n[c];
  }

  std::vector<std::vector<Bin>> members(k);
  for (std::size_t b = 0; b < bins.size(); ++b) members[assign[b]].push_back(bins[b]);
  ClusterModel model;
  for (const auto& m : members)
    if (!m.empty()) model.means.push_back(rounded_mean(m));
  std::sort(model.means.begin(), model.means.end());
  model.means.erase(std::unique(model.means.begin(), model.means.end()), model.means.end());
  return model;
}

}  // namespace

LabelMatrix assign_labels(const Channel& ch, const ClusterModel& model) {
  if (model.k() == 0) throw InvalidArgument("cluster model is empty");
  // Lookup table over the 256 possible values.
  std::array<Label, 256> nearest{};
  for (int v = 0; v < 256; ++v) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < model.k(); ++c)
      if (std::abs(v - int{model.means[c]}) < std::abs(v - int{model.means[best]})) best = c;
    nearest[v] = static_cast<Label>(best);
  }
  std::vector<Label> labels;
  labels.reserve(ch.size());
  for (Sample s : ch.data()) labels.push_back(nearest[s]);
  return LabelMatrix(ch.width(), ch.height(), std::move(labels));
}

Quantization quantize(const Channel& ch, std::size_t k, ClusteringMode mode, std::uint64_t seed) {
  if (k == 0 || k > 256) throw InvalidArgument("k must be in [1, 256], got " + std::to_string(k));
  if (ch.empty()) throw InvalidArgument("cannot quantize an empty channel");

  const auto bins = histogram(ch);
  const std::size_t effective_k = std::min(k, bins.size());
  ClusterModel model = mode == ClusteringMode::dp ? dp_model(bins, effective_k)
                                                  : lloyd_model(bins, effective_k, seed);
  LabelMatrix labels = assign_labels(ch, model);
  return {std::move(model), std::move(labels)};
}

Channel reconstruct(const LabelMatrix& labels, const ClusterModel& model) {
  std::vector<Sample> out;
  out.reserve(labels.labels().size());
  for (Label l : labels.labels()) {
    if (l >= model.k())
      throw InvalidArgument("label " + std::to_string(l) + " out of range for k=" + std::to_string(model.k()));
    out.push_back(model.means[l]);
  }
  return Channel(labels.width(), labels.height(), std::move(out));
}

}  // namespace fpic
