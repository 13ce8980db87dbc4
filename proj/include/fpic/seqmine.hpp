#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fpic/quantizer.hpp"

namespace fpic {

using Symbol = Label;

/// Contiguous run of symbols. Ordered lexicographically.
class Pattern {
 public:
  static constexpr std::size_t kMaxLength = 255;

  Pattern() = default;
  explicit Pattern(std::vector<Symbol> symbols);
  Pattern(std::initializer_list<Symbol> symbols) : Pattern(std::vector<Symbol>(symbols)) {}
  explicit Pattern(std::span<const Symbol> symbols)
      : Pattern(std::vector<Symbol>(symbols.begin(), symbols.end())) {}

  std::size_t size() const noexcept { return symbols_.size(); }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Symbol back() const { return symbols_.back(); }

  /// True when `other` occurs in this pattern as a contiguous run.
  bool contains(const Pattern& other) const;

  /// Symbols joined by '-', e.g. "4-4-4".
  std::string to_string() const;
  /// Inverse of to_string. Throws InvalidArgument on malformed text.
  static Pattern parse(const std::string& text);

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<Symbol> symbols_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept;
};

/// Rows of a label matrix, each an independent sequence.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  explicit SequenceDatabase(std::vector<std::vector<Symbol>> rows);
  static SequenceDatabase from_labels(const LabelMatrix& labels);

  std::size_t row_count() const noexcept { return rows_.size(); }
  std::span<const Symbol> row(std::size_t r) const noexcept { return rows_[r]; }
  const std::vector<std::vector<Symbol>>& rows() const noexcept { return rows_; }
  std::size_t symbol_count() const noexcept;
  /// Distinct symbols, ascending.
  std::vector<Symbol> alphabet() const;

 private:
  std::vector<std::vector<Symbol>> rows_;
};

struct SupportedPattern {
  Pattern pattern;
  std::size_t support = 0;

  friend bool operator==(const SupportedPattern&, const SupportedPattern&) = default;
};

/// One level of the closed-sequence search: the frequent patterns of a single
/// length that survived absorption, and those that were absorbed.
struct MinedLevel {
  std::size_t length = 0;
  std::vector<SupportedPattern> closed;
  std::vector<SupportedPattern> absorbed;
};

struct MinedPatternSet {
  /// Every symbol of the database, never filtered.
  std::vector<SupportedPattern> e1;
  /// Levels of length 2, 3, ... up to the longest non-empty frequent level.
  std::vector<MinedLevel> levels;

  /// e1 plus all closed levels, sorted by pattern.
  std::vector<SupportedPattern> all() const;
};

/// Absolute minimum support, either given directly or as a fraction of rows
/// rounded up.
class SupportThreshold {
 public:
  static SupportThreshold absolute(std::size_t rows);
  static SupportThreshold fraction(double value);

  bool is_fraction() const noexcept { return is_fraction_; }
  double value() const noexcept { return value_; }
  std::size_t resolve(std::size_t row_count) const;

 private:
  SupportThreshold(bool is_fraction, double value) : is_fraction_(is_fraction), value_(value) {}
  bool is_fraction_ = false;
  double value_ = 1;
};

/// Number of rows containing `p` at least once.
std::size_t row_support(const SequenceDatabase& db, const Pattern& p);

/// a ⧺ last(b) for every pair whose (len-1)-suffix/prefix overlap; on
/// length-1 inputs this is the full cartesian product.
std::set<Pattern> candidate_join(const std::set<Pattern>& prev);

/// Level-wise closed contiguous-sequence mining. Throws InvalidArgument for
/// alpha = 0.
MinedPatternSet mine_closed(const SequenceDatabase& db, std::size_t alpha);

/// Reference implementation: enumerate every substring, filter, drop anything
/// with an equal-support supersequence, keep all single symbols.
MinedPatternSet brute_force_closed(const SequenceDatabase& db, std::size_t alpha);

}  // namespace fpic
