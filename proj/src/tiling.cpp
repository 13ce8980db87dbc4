#include "fpic/tiling.hpp"

#include <algorithm>
#include <string>

#include "fpic/error.hpp"

namespace fpic {

std::size_t TilingRecord::modified_support(const Pattern& p) const {
  for (const auto& e : order)
    if (e.pattern == p) return e.modified;
  return 0;
}

std::vector<std::size_t> greedy_scan(std::span<const Symbol> segment, const Pattern& p) {
  std::vector<std::size_t> hits;
  const auto needle = p.symbols();
  std::size_t i = 0;
  while (i + needle.size() <= segment.size()) {
    if (std::equal(needle.begin(), needle.end(), segment.begin() + static_cast<std::ptrdiff_t>(i))) {
      hits.push_back(i);
      i += needle.size();
    } else {
      ++i;
    }
  }
  return hits;
}

namespace {

struct Segment {
  std::size_t row;
  std::size_t begin;
  std::size_t end;
};

bool comes_first(const SupportedPattern& a, const SupportedPattern& b) {
  if (a.pattern.size() != b.pattern.size()) return a.pattern.size() > b.pattern.size();
  if (a.support != b.support) return a.support > b.support;
  return a.pattern > b.pattern;
}

}  // namespace

TilingRecord modified_support(const SequenceDatabase& db, std::span<const SupportedPattern> patterns) {
  std::vector<SupportedPattern> sorted(patterns.begin(), patterns.end());
  std::sort(sorted.begin(), sorted.end(), comes_first);

  TilingRecord rec;
  std::vector<Segment> segments;
  for (std::size_t r = 0; r < db.row_count(); ++r)
    if (!db.row(r).empty()) segments.push_back({r, 0, db.row(r).size()});

  for (const auto& sp : sorted) {
    const std::size_t index = rec.order.size();
    rec.order.push_back({sp.pattern, sp.support, 0});
    if (segments.empty()) continue;

    const std::size_t len = sp.pattern.size();
    std::vector<Segment> remaining;
    remaining.reserve(segments.size());
    std::size_t claimed = 0;
    for (const auto& seg : segments) {
      const auto view = db.row(seg.row).subspan(seg.begin, seg.end - seg.begin);
      std::size_t cursor = seg.begin;
      for (std::size_t off : greedy_scan(view, sp.pattern)) {
        const std::size_t at = seg.begin + off;
        if (at > cursor) remaining.push_back({seg.row, cursor, at});
        rec.tokens.push_back({seg.row, at, index});
        cursor = at + len;
        ++claimed;
      }
      if (cursor < seg.end) remaining.push_back({seg.row, cursor, seg.end});
    }
    rec.order.back().modified = claimed;
    segments = std::move(remaining);
  }

  if (!segments.empty()) {
    const auto& s = segments.front();
    throw InvalidArgument("pattern set leaves row " + std::to_string(s.row) + " columns [" +
                          std::to_string(s.begin) + ", " + std::to_string(s.end) + ") uncovered");
  }
  std::sort(rec.tokens.begin(), rec.tokens.end(),
            [](const Token& a, const Token& b) { return a.row != b.row ? a.row < b.row : a.start < b.start; });
  return rec;
}

TilingRecord modified_support(const SequenceDatabase& db, const MinedPatternSet& mined) {
  return modified_support(db, mined.all());
}

}  // namespace fpic
