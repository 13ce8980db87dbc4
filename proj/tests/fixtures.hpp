#pragma once

#include <filesystem>
#include <random>
#include <vector>

#include "fpic/image.hpp"
#include "fpic/quantizer.hpp"
#include "fpic/seqmine.hpp"

namespace fpic::testing {

inline std::filesystem::path data_dir() { return FPIC_TEST_DATA_DIR; }

// 8x8 sample block used throughout the worked example.
inline const std::vector<std::vector<int>> kBlock = {
    {154, 123, 123, 123, 123, 123, 123, 136}, {192, 180, 136, 154, 154, 154, 136, 110},
    {254, 198, 154, 154, 180, 154, 123, 123}, {239, 180, 136, 180, 180, 166, 123, 123},
    {180, 154, 136, 167, 166, 149, 136, 136}, {128, 136, 123, 136, 154, 180, 198, 166},
    {123, 105, 110, 149, 136, 136, 180, 166}, {110, 136, 123, 123, 123, 136, 154, 136}};

// Its cluster identifiers (k = 5) and the identifier table.
inline const std::vector<std::vector<int>> kBlockLabels = {
    {1, 4, 4, 4, 4, 4, 4, 2}, {0, 0, 2, 1, 1, 1, 2, 4}, {3, 0, 1, 1, 0, 1, 4, 4}, {3, 0, 2, 0, 0, 0, 4, 4},
    {0, 1, 2, 0, 0, 1, 2, 2}, {2, 2, 4, 2, 1, 0, 0, 1}, {4, 4, 4, 1, 2, 2, 0, 0}, {4, 2, 4, 4, 4, 2, 1, 2}};
inline const std::vector<Sample> kBlockMeans = {179, 153, 135, 246, 120};

// Expected decoder output for the block.
inline const std::vector<std::vector<int>> kBlockDecoded = {
    {153, 120, 120, 120, 120, 120, 120, 135}, {179, 179, 135, 153, 153, 153, 135, 120},
    {246, 179, 153, 153, 179, 153, 120, 120}, {246, 179, 135, 179, 179, 179, 120, 120},
    {179, 153, 135, 179, 179, 153, 135, 135}, {135, 135, 120, 135, 153, 179, 179, 153},
    {120, 120, 120, 153, 135, 135, 179, 179}, {120, 135, 120, 120, 120, 135, 153, 135}};

// Two-row example for modified support.
inline const std::vector<std::vector<int>> kTwoRows = {{4, 4, 4, 1, 2, 2, 0, 0}, {4, 0, 0, 4, 4, 4, 2, 2}};

template <typename T = Sample>
std::vector<T> flatten(const std::vector<std::vector<int>>& m) {
  std::vector<T> out;
  for (const auto& r : m)
    for (int v : r) out.push_back(static_cast<T>(v));
  return out;
}

inline SequenceDatabase to_db(const std::vector<std::vector<int>>& m) {
  std::vector<std::vector<Symbol>> rows;
  for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
  return SequenceDatabase(std::move(rows));
}

inline RasterImage gray(const std::vector<std::vector<int>>& m) {
  return RasterImage(m[0].size(), m.size(), 1, flatten(m));
}

inline LabelMatrix block_labels() {
  return LabelMatrix(8, 8, flatten<Label>(kBlockLabels));
}

inline ClusterModel block_model() { return ClusterModel{kBlockMeans}; }

/// Random database; rows may be empty but at least one is not.
inline SequenceDatabase random_db(std::mt19937& rng, std::size_t max_rows, std::size_t max_len,
                                  std::size_t max_alphabet) {
  std::uniform_int_distribution<std::size_t> nrows(1, max_rows), len(1, max_len), alpha(1, max_alphabet);
  const std::size_t rows = nrows(rng);
  const std::size_t a = alpha(rng);
  std::uniform_int_distribution<int> sym(0, static_cast<int>(a) - 1);
  std::vector<std::vector<Symbol>> out(rows);
  for (auto& r : out) {
    r.resize(len(rng));
    for (auto& s : r) s = static_cast<Symbol>(sym(rng));
  }
  return SequenceDatabase(std::move(out));
}

inline RasterImage random_image(std::mt19937& rng, std::size_t w, std::size_t h, std::size_t channels,
                                int levels = 256) {
  std::uniform_int_distribution<int> v(0, levels - 1);
  std::vector<Sample> data(w * h * channels);
  const int scale = 255 / std::max(levels - 1, 1);
  for (auto& s : data) s = static_cast<Sample>(v(rng) * scale);
  return RasterImage(w, h, channels, std::move(data));
}

}  // namespace fpic::testing
