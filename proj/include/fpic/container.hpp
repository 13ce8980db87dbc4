#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fpic/entropy.hpp"
#include "fpic/quantizer.hpp"

namespace fpic {

/// Everything the decoder needs for one color plane.
struct ChannelSection {
  ClusterModel model;
  CodeTable table;
  BitStream stream;

  friend bool operator==(const ChannelSection&, const ChannelSection&) = default;
};

/// In-memory form of a .fpic file.
///
/// Layout (little-endian):
///   "FPIC" | version u8 = 1 | width u32 | height u32 | channels u8 | alpha u16 (1/10000)
///   per channel:
///     k u16 | k mean bytes
///     pattern_count u16 | per pattern: len u8, len symbol bytes, code_len u8
///     stream_bits u32 | ceil(stream_bits / 8) bytes
/// Patterns appear in canonical code order.
struct CompressedImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t alpha_per_10000 = 0;  ///< provenance only
  std::vector<ChannelSection> channels;

  friend bool operator==(const CompressedImage&, const CompressedImage&) = default;
};

inline constexpr std::uint8_t kContainerVersion = 1;

/// Throws FormatError when a field does not fit its wire width or the
/// container violates its invariants.
std::vector<std::uint8_t> serialize(const CompressedImage& ci);
/// Throws FormatError on bad magic/version, truncation, trailing bytes,
/// out-of-range symbols, non-zero stream padding or invalid code lengths.
CompressedImage deserialize(std::span<const std::uint8_t> bytes);

std::uint64_t compressed_size_bits(const CompressedImage& ci);

void write_container(const CompressedImage& ci, const std::filesystem::path& path);
CompressedImage read_container(const std::filesystem::path& path);

}  // namespace fpic
