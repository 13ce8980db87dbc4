#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpic/seqmine.hpp"

namespace fpic {

/// One replacement site: `pattern` indexes TilingRecord::order.
struct Token {
  std::size_t row = 0;
  std::size_t start = 0;
  std::size_t pattern = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TilingEntry {
  Pattern pattern;
  std::size_t support = 0;   ///< row-support from mining
  std::size_t modified = 0;  ///< non-overlapping occurrences claimed

  friend bool operator==(const TilingEntry&, const TilingEntry&) = default;
};

/// Result of greedy longest-first removal. `order` is the processing order;
/// tokens are sorted by (row, start) and partition every row.
struct TilingRecord {
  std::vector<TilingEntry> order;
  std::vector<Token> tokens;

  std::size_t modified_support(const Pattern& p) const;
  const Pattern& pattern_of(const Token& t) const { return order[t.pattern].pattern; }

  friend bool operator==(const TilingRecord&, const TilingRecord&) = default;
};

/// Left-to-right non-overlapping match offsets of `p` in `segment`.
std::vector<std::size_t> greedy_scan(std::span<const Symbol> segment, const Pattern& p);

/// Processing order: length desc, then row-support desc, then symbols
/// lexicographically desc. Matches never cross a previously removed span.
/// Throws InvalidArgument if some symbol is left uncovered.
TilingRecord modified_support(const SequenceDatabase& db, std::span<const SupportedPattern> patterns);
TilingRecord modified_support(const SequenceDatabase& db, const MinedPatternSet& mined);

}  // namespace fpic
