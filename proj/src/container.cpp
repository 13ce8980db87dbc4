#include "fpic/container.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "fpic/error.hpp"

namespace fpic {

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'P', 'I', 'C'};

class Writer {
 public:
  template <typename T>
  void put(std::uint64_t v, const char* field) {
    if (v > std::numeric_limits<T>::max()) throw FormatError(std::string(field) + " does not fit its field");
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() && { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  template <typename T>
  T get(const char* field) {
    need(sizeof(T), field);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(b_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::span<const std::uint8_t> bytes(std::size_t n, const char* field) {
    need(n, field);
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const noexcept { return pos_ == b_.size(); }

 private:
  void need(std::size_t n, const char* field) {
    if (b_.size() - pos_ < n) throw FormatError(std::string("truncated container at ") + field);
  }

  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

void check_invariants(const CompressedImage& ci) {
  if (ci.width == 0 || ci.height == 0) throw FormatError("image dimensions must be positive");
  if (ci.channels.size() != 1 && ci.channels.size() != 3) throw FormatError("channel count must be 1 or 3");
  for (const auto& ch : ci.channels) {
    if (ch.model.k() == 0 || ch.model.k() > 256) throw FormatError("cluster count out of range");
    if (ch.table.size() == 0) throw FormatError("empty code table");
    for (const auto& e : ch.table.entries())
      for (Symbol s : e.pattern.symbols())
        if (s >= ch.model.k()) throw FormatError("pattern symbol exceeds cluster count");
    if (ch.stream.bytes.size() != (ch.stream.bit_length + 7) / 8)
      throw FormatError("stream byte count does not match bit length");
  }
}

}  // namespace

std::vector<std::uint8_t> serialize(const CompressedImage& ci) {
  check_invariants(ci);
  Writer w;
  w.bytes(kMagic);
  w.put<std::uint8_t>(kContainerVersion, "version");
  w.put<std::uint32_t>(ci.width, "width");
  w.put<std::uint32_t>(ci.height, "height");
  w.put<std::uint8_t>(ci.channels.size(), "channels");
  w.put<std::uint16_t>(ci.alpha_per_10000, "alpha");
  for (const auto& ch : ci.channels) {
    w.put<std::uint16_t>(ch.model.k(), "k");
    w.bytes(ch.model.means);
    w.put<std::uint16_t>(ch.table.size(), "pattern_count");
    for (const auto& e : ch.table.entries()) {
      w.put<std::uint8_t>(e.pattern.size(), "pattern length");
      w.bytes(e.pattern.symbols());
      w.put<std::uint8_t>(e.length, "code length");
    }
    w.put<std::uint32_t>(ch.stream.bit_length, "stream_bits");
    w.bytes(ch.stream.bytes);
  }
  return std::move(w).take();
}

CompressedImage deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) throw FormatError("bad magic");
  const auto version = r.get<std::uint8_t>("version");
  if (version != kContainerVersion) throw FormatError("unsupported version " + std::to_string(version));

  CompressedImage ci;
  ci.width = r.get<std::uint32_t>("width");
  ci.height = r.get<std::uint32_t>("height");
  const auto channels = r.get<std::uint8_t>("channels");
  if (channels != 1 && channels != 3) throw FormatError("channel count must be 1 or 3");
  ci.alpha_per_10000 = r.get<std::uint16_t>("alpha");

  for (std::uint8_t c = 0; c < channels; ++c) {
    ChannelSection ch;
    const auto k = r.get<std::uint16_t>("k");
    if (k == 0 || k > 256) throw FormatError("cluster count out of range");
    const auto means = r.bytes(k, "means");
    ch.model.means.assign(means.begin(), means.end());

    const auto count = r.get<std::uint16_t>("pattern_count");
    if (count == 0) throw FormatError("empty code table");
    std::vector<std::pair<Pattern, std::uint8_t>> lengths;
    lengths.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
      const auto len = r.get<std::uint8_t>("pattern length");
      if (len == 0) throw FormatError("zero-length pattern");
      const auto symbols = r.bytes(len, "pattern symbols");
      for (std::uint8_t s : symbols)
        if (s >= k) throw FormatError("pattern symbol " + std::to_string(s) + " >= k=" + std::to_string(k));
      lengths.emplace_back(Pattern(symbols), r.get<std::uint8_t>("code length"));
    }
    try {
      ch.table = CodeTable::from_lengths(std::move(lengths));
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("invalid code table: ") + e.what());
    }

    ch.stream.bit_length = r.get<std::uint32_t>("stream_bits");
    const auto payload = r.bytes((ch.stream.bit_length + 7) / 8, "stream");
    ch.stream.bytes.assign(payload.begin(), payload.end());
    if (ch.stream.bit_length % 8 != 0 &&
        (ch.stream.bytes.back() & (0xFFu >> (ch.stream.bit_length % 8))) != 0)
      throw FormatError("non-zero stream padding");
    ci.channels.push_back(std::move(ch));
  }
  if (!r.done()) throw FormatError("trailing bytes after last channel");
  check_invariants(ci);
  return ci;
}

std::uint64_t compressed_size_bits(const CompressedImage& ci) { return 8 * serialize(ci).size(); }

void write_container(const CompressedImage& ci, const std::filesystem::path& path) {
  const auto bytes = serialize(ci);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

CompressedImage read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace fpic
