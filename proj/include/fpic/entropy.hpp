#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fpic/quantizer.hpp"
#include "fpic/seqmine.hpp"
#include "fpic/tiling.hpp"

namespace fpic {

struct CodeEntry {
  Pattern pattern;
  std::uint8_t length = 0;
  std::uint64_t codeword = 0;  ///< right-aligned, `length` significant bits

  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

/// Canonical prefix code: entries ordered by (length, pattern), codewords
/// numbered consecutively within that order. Fully determined by the
/// (pattern, length) pairs.
class CodeTable {
 public:
  static constexpr std::size_t kMaxCodeLength = 64;

  CodeTable() = default;

  /// Validates the lengths (complete code, or a single 1-bit entry) and
  /// assigns canonical codewords. Throws InvalidArgument otherwise.
  static CodeTable from_lengths(std::vector<std::pair<Pattern, std::uint8_t>> lengths);

  std::span<const CodeEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const CodeEntry* find(const Pattern& p) const;

  friend bool operator==(const CodeTable&, const CodeTable&) = default;

 private:
  friend class CanonicalDecoder;
  std::vector<CodeEntry> entries_;
};

/// Octets plus the count of meaningful bits. Bits fill each byte from the MSB
/// down; the tail of the last byte is zero.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_length = 0;

  friend bool operator==(const BitStream&, const BitStream&) = default;
};

class BitWriter {
 public:
  void put(std::uint64_t bits, std::size_t count);
  BitStream finish() &&;

 private:
  BitStream out_;
};

class BitReader {
 public:
  explicit BitReader(const BitStream& s) : s_(s) {}
  bool exhausted() const noexcept { return pos_ >= s_.bit_length; }
  std::uint64_t position() const noexcept { return pos_; }
  unsigned next();

 private:
  const BitStream& s_;
  std::uint64_t pos_ = 0;
};

/// Huffman code over positive weights. Equal weights merge the subtree with
/// the lexicographically smaller minimal pattern first. A single entry gets
/// the 1-bit code "0".
CodeTable build_code(const std::map<Pattern, std::uint64_t>& weights);

/// Nonzero modified supports of a tiling, ready for build_code.
std::map<Pattern, std::uint64_t> tiling_weights(const TilingRecord& rec);

/// Σ weight × code length.
std::uint64_t weighted_length(const CodeTable& table, const std::map<Pattern, std::uint64_t>& weights);

BitStream encode_tokens(const TilingRecord& rec, const CodeTable& table);

/// Expands codewords until `expected_symbols` labels are produced and cuts
/// them into rows of `row_length`. Throws DecodeError on early exhaustion,
/// overshoot, trailing bits or non-zero padding.
LabelMatrix decode_stream(const BitStream& bits, const CodeTable& table, std::size_t expected_symbols,
                          std::size_t row_length);

}  // namespace fpic
