#include "fpic/entropy.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "fpic/error.hpp"

namespace fpic {

const CodeEntry* CodeTable::find(const Pattern& p) const {
  for (const auto& e : entries_)
    if (e.pattern == p) return &e;
  return nullptr;
}

CodeTable CodeTable::from_lengths(std::vector<std::pair<Pattern, std::uint8_t>> lengths) {
  if (lengths.empty()) throw InvalidArgument("code table needs at least one entry");
  std::sort(lengths.begin(), lengths.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i].first == lengths[i - 1].first)
      throw InvalidArgument("duplicate pattern " + lengths[i].first.to_string() + " in code table");

  const std::size_t max_len = lengths.back().second;
  if (lengths.front().second == 0 || max_len > kMaxCodeLength)
    throw InvalidArgument("code length out of range");
  if (lengths.size() == 1 && max_len != 1) throw InvalidArgument("single-entry code must have length 1");

  if (lengths.size() > 1) {
    // Kraft equality, tracked as free slots per depth.
    std::vector<std::size_t> count(max_len + 1, 0);
    for (const auto& [p, l] : lengths) ++count[l];
    std::uint64_t free = 1;
    std::uint64_t left = lengths.size();
    for (std::size_t d = 1; d <= max_len; ++d) {
      free *= 2;
      if (count[d] > free) throw InvalidArgument("code lengths oversubscribe the code space");
      free -= count[d];
      left -= count[d];
      if (free > left) throw InvalidArgument("code lengths leave the code space incomplete");
    }
    if (free != 0) throw InvalidArgument("code lengths leave the code space incomplete");
  }

  CodeTable table;
  std::uint64_t code = 0;
  std::uint8_t prev_len = lengths.front().second;
  for (auto& [pattern, len] : lengths) {
    code <<= (len - prev_len);
    prev_len = len;
    table.entries_.push_back({std::move(pattern), len, code});
    ++code;
  }
  return table;
}

void BitWriter::put(std::uint64_t bits, std::size_t count) {
  for (std::size_t i = count; i-- > 0;) {
    if (out_.bit_length % 8 == 0) out_.bytes.push_back(0);
    if ((bits >> i) & 1u) out_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (out_.bit_length % 8));
    ++out_.bit_length;
  }
}

BitStream BitWriter::finish() && { return std::move(out_); }

unsigned BitReader::next() {
  if (exhausted()) throw DecodeError("bitstream exhausted");
  const unsigned bit = (s_.bytes[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return bit;
}

namespace {

struct HuffNode {
  std::uint64_t weight;
  const Pattern* min_pattern;
  std::size_t left = SIZE_MAX;
  std::size_t right = SIZE_MAX;
};

}  // namespace

CodeTable build_code(const std::map<Pattern, std::uint64_t>& weights) {
  if (weights.empty()) throw InvalidArgument("build_code: empty weight map");
  for (const auto& [p, w] : weights)
    if (w == 0) throw InvalidArgument("build_code: zero weight for " + p.to_string());

  if (weights.size() == 1) return CodeTable::from_lengths({{weights.begin()->first, 1}});

  std::vector<HuffNode> nodes;
  nodes.reserve(2 * weights.size());
  for (const auto& [p, w] : weights) nodes.push_back({w, &p});

  auto later = [&](std::size_t a, std::size_t b) {
    if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
    return *nodes[a].min_pattern > *nodes[b].min_pattern;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> queue(later);
  for (std::size_t i = 0; i < nodes.size(); ++i) queue.push(i);
  while (queue.size() > 1) {
    const std::size_t a = queue.top();
    queue.pop();
    const std::size_t b = queue.top();
    queue.pop();
    const Pattern* min = *nodes[a].min_pattern < *nodes[b].min_pattern ? nodes[a].min_pattern : nodes[b].min_pattern;
    nodes.push_back({nodes[a].weight + nodes[b].weight, min, a, b});
    queue.push(nodes.size() - 1);
  }

  std::vector<std::pair<Pattern, std::uint8_t>> lengths;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{queue.top(), 0}};
  while (!stack.empty()) {
    const auto [n, depth] = stack.back();
    stack.pop_back();
    if (nodes[n].left == SIZE_MAX) {
      if (depth > CodeTable::kMaxCodeLength) throw InvalidArgument("Huffman code exceeds 64 bits");
      lengths.emplace_back(*nodes[n].min_pattern, static_cast<std::uint8_t>(depth));
    } else {
      stack.emplace_back(nodes[n].left, depth + 1);
      stack.emplace_back(nodes[n].right, depth + 1);
    }
  }
  return CodeTable::from_lengths(std::move(lengths));
}

std::map<Pattern, std::uint64_t> tiling_weights(const TilingRecord& rec) {
  std::map<Pattern, std::uint64_t> w;
  for (const auto& e : rec.order)
    if (e.modified > 0) w.emplace(e.pattern, e.modified);
  return w;
}

std::uint64_t weighted_length(const CodeTable& table, const std::map<Pattern, std::uint64_t>& weights) {
  std::uint64_t total = 0;
  for (const auto& [p, w] : weights) {
    const CodeEntry* e = table.find(p);
    if (!e) throw InvalidArgument("pattern " + p.to_string() + " missing from code table");
    total += w * e->length;
  }
  return total;
}

BitStream encode_tokens(const TilingRecord& rec, const CodeTable& table) {
  std::vector<const CodeEntry*> codes(rec.order.size(), nullptr);
  for (std::size_t i = 0; i < rec.order.size(); ++i) codes[i] = table.find(rec.order[i].pattern);

  BitWriter writer;
  for (const Token& t : rec.tokens) {
    const CodeEntry* e = codes.at(t.pattern);
    if (!e) throw InvalidArgument("token pattern " + rec.pattern_of(t).to_string() + " missing from code table");
    writer.put(e->codeword, e->length);
  }
  return std::move(writer).finish();
}

/// Length-indexed canonical decoding tables.
class CanonicalDecoder {
 public:
  explicit CanonicalDecoder(const CodeTable& table) : table_(table) {
    const std::size_t max_len = table.entries_.empty() ? 0 : table.entries_.back().length;
    first_code_.assign(max_len + 1, 0);
    first_index_.assign(max_len + 1, 0);
    count_.assign(max_len + 1, 0);
    for (std::size_t i = table.entries_.size(); i-- > 0;) {
      const auto& e = table.entries_[i];
      first_code_[e.length] = e.codeword;
      first_index_[e.length] = i;
      ++count_[e.length];
    }
  }

  const CodeEntry& next(BitReader& reader) const {
    std::uint64_t code = 0;
    for (std::size_t len = 1; len < count_.size(); ++len) {
      code = (code << 1) | reader.next();
      if (count_[len] != 0 && code >= first_code_[len] && code - first_code_[len] < count_[len])
        return table_.entries_[first_index_[len] + (code - first_code_[len])];
    }
    throw DecodeError("invalid codeword at bit " + std::to_string(reader.position()));
  }

 private:
  const CodeTable& table_;
  std::vector<std::uint64_t> first_code_;
  std::vector<std::size_t> first_index_;
  std::vector<std::size_t> count_;
};

LabelMatrix decode_stream(const BitStream& bits, const CodeTable& table, std::size_t expected_symbols,
                          std::size_t row_length) {
  if (expected_symbols == 0 || row_length == 0 || expected_symbols % row_length != 0)
    throw InvalidArgument("expected_symbols must be a positive multiple of row_length");
  if (table.size() == 0) throw DecodeError("empty code table");
  if (bits.bytes.size() != (bits.bit_length + 7) / 8)
    throw DecodeError("byte count does not match bit length");
  if (bits.bit_length % 8 != 0) {
    const std::uint8_t mask = static_cast<std::uint8_t>(0xFFu >> (bits.bit_length % 8));
    if (bits.bytes.back() & mask) throw DecodeError("non-zero padding bits");
  }

  const CanonicalDecoder decoder(table);
  BitReader reader(bits);
  std::vector<Label> labels;
  labels.reserve(expected_symbols);
  while (labels.size() < expected_symbols) {
    if (reader.exhausted())
      throw DecodeError("bitstream exhausted after " + std::to_string(labels.size()) + " of " +
                        std::to_string(expected_symbols) + " symbols");
    const CodeEntry& e = decoder.next(reader);
    if (labels.size() + e.pattern.size() > expected_symbols)
      throw DecodeError("pattern overshoots the symbol count");
    const auto s = e.pattern.symbols();
    labels.insert(labels.end(), s.begin(), s.end());
  }
  if (!reader.exhausted()) throw DecodeError("trailing bits after the last symbol");
  return LabelMatrix(row_length, expected_symbols / row_length, std::move(labels));
}

}  // namespace fpic
