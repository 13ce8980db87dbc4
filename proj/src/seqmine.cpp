#include "fpic/seqmine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fpic/error.hpp"

namespace fpic {

Pattern::Pattern(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("pattern must be non-empty");
  if (symbols_.size() > kMaxLength) throw InvalidArgument("pattern longer than 255 symbols");
}

bool Pattern::contains(const Pattern& other) const {
  return std::search(symbols_.begin(), symbols_.end(), other.symbols_.begin(), other.symbols_.end()) !=
         symbols_.end();
}

std::string Pattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

Pattern Pattern::parse(const std::string& text) {
  std::vector<Symbol> symbols;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '-')) {
    if (part.empty() || part.size() > 3 || !std::all_of(part.begin(), part.end(), ::isdigit))
      throw InvalidArgument("malformed pattern '" + text + "'");
    const int v = std::stoi(part);
    if (v > 255) throw InvalidArgument("symbol out of range in '" + text + "'");
    symbols.push_back(static_cast<Symbol>(v));
  }
  if (symbols.empty() || text.back() == '-') throw InvalidArgument("malformed pattern '" + text + "'");
  return Pattern(std::move(symbols));
}

std::size_t PatternHash::operator()(const Pattern& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Symbol s : p.symbols()) h = (h ^ s) * 1099511628211ull;
  return h ^ p.size();
}

SequenceDatabase::SequenceDatabase(std::vector<std::vector<Symbol>> rows) : rows_(std::move(rows)) {
  if (std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); }))
    throw InvalidArgument("sequence database needs at least one non-empty row");
}

SequenceDatabase SequenceDatabase::from_labels(const LabelMatrix& labels) {
  std::vector<std::vector<Symbol>> rows;
  rows.reserve(labels.height());
  for (std::size_t r = 0; r < labels.height(); ++r) {
    const auto row = labels.row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return SequenceDatabase(std::move(rows));
}

std::size_t SequenceDatabase::symbol_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<Symbol> SequenceDatabase::alphabet() const {
  std::vector<bool> seen(256, false);
  for (const auto& r : rows_)
    for (Symbol s : r) seen[s] = true;
  std::vector<Symbol> out;
  for (std::size_t s = 0; s < seen.size(); ++s)
    if (seen[s]) out.push_back(static_cast<Symbol>(s));
  return out;
}

std::vector<SupportedPattern> MinedPatternSet::all() const {
  std::vector<SupportedPattern> out = e1;
  for (const auto& level : levels) out.insert(out.end(), level.closed.begin(), level.closed.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  return out;
}

SupportThreshold SupportThreshold::absolute(std::size_t rows) {
  if (rows == 0) throw InvalidArgument("minimum support must be at least 1");
  return SupportThreshold(false, static_cast<double>(rows));
}

SupportThreshold SupportThreshold::fraction(double value) {
  if (!(value > 0.0 && value <= 1.0)) throw InvalidArgument("support fraction must be in (0, 1]");
  return SupportThreshold(true, value);
}

std::size_t SupportThreshold::resolve(std::size_t row_count) const {
  if (!is_fraction_) return static_cast<std::size_t>(value_);
  // Small epsilon so that e.g. 0.25 * 8 does not round up to 3 through
  // representation error.
  const double raw = value_ * static_cast<double>(row_count);
  const auto threshold = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(threshold, 1);
}

std::size_t row_support(const SequenceDatabase& db, const Pattern& p) {
  std::size_t count = 0;
  const auto needle = p.symbols();
  for (const auto& row : db.rows())
    if (std::search(row.begin(), row.end(), needle.begin(), needle.end()) != row.end()) ++count;
  return count;
}

std::set<Pattern> candidate_join(const std::set<Pattern>& prev) {
  std::set<Pattern> out;
  if (prev.empty()) return out;
  const std::size_t len = prev.begin()->size();
  for (const auto& p : prev)
    if (p.size() != len) throw InvalidArgument("candidate_join: patterns of mixed length");

  // Index by the (len-1)-prefix so each a only meets compatible b.
  std::map<std::vector<Symbol>, std::vector<const Pattern*>> by_prefix;
  for (const auto& b : prev) {
    const auto s = b.symbols();
    by_prefix[std::vector<Symbol>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len - 1))].push_back(&b);
  }
  for (const auto& a : prev) {
    const auto s = a.symbols();
    const std::vector<Symbol> suffix(s.begin() + 1, s.end());
    const auto it = by_prefix.find(suffix);
    if (it == by_prefix.end()) continue;
    for (const Pattern* b : it->second) {
      std::vector<Symbol> joined(s.begin(), s.end());
      joined.push_back(b->back());
      out.emplace(std::move(joined));
    }
  }
  return out;
}

namespace {

// Row supports of every candidate, counting each row once. Scans each row's
// windows of the candidates' length instead of searching per candidate.
std::map<Pattern, std::size_t> count_supports(const SequenceDatabase& db, const std::set<Pattern>& candidates) {
  std::map<Pattern, std::size_t> supports;
  if (candidates.empty()) return supports;
  const std::size_t len = candidates.begin()->size();

  std::unordered_map<Pattern, std::size_t, PatternHash> index;
  std::vector<std::size_t> counts(candidates.size(), 0);
  std::vector<std::size_t> last_row(candidates.size(), SIZE_MAX);
  {
    std::size_t i = 0;
    for (const auto& c : candidates) index.emplace(c, i++);
  }

  for (std::size_t r = 0; r < db.row_count(); ++r) {
    const auto row = db.row(r);
    if (row.size() < len) continue;
    for (std::size_t start = 0; start + len <= row.size(); ++start) {
      const auto it = index.find(Pattern(row.subspan(start, len)));
      if (it == index.end() || last_row[it->second] == r) continue;
      last_row[it->second] = r;
      ++counts[it->second];
    }
  }
  std::size_t i = 0;
  for (const auto& c : candidates) supports.emplace(c, counts[i++]);
  return supports;
}

std::vector<SupportedPattern> single_symbols(const SequenceDatabase& db) {
  std::vector<SupportedPattern> e1;
  for (Symbol s : db.alphabet()) {
    Pattern p{s};
    const std::size_t support = row_support(db, p);
    e1.push_back({std::move(p), support});
  }
  return e1;
}

}  // namespace

MinedPatternSet mine_closed(const SequenceDatabase& db, std::size_t alpha) {
  if (alpha == 0) throw InvalidArgument("minimum support must be at least 1");

  MinedPatternSet result;
  result.e1 = single_symbols(db);

  std::set<Pattern> generators;
  for (const auto& e : result.e1) generators.insert(e.pattern);

  // Frequent patterns of the previous level, before absorption.
  std::map<Pattern, std::size_t> prev_frequent;
  for (std::size_t len = 2;; ++len) {
    std::map<Pattern, std::size_t> frequent;
    if (len <= Pattern::kMaxLength) {
      for (const auto& [p, s] : count_supports(db, candidate_join(generators)))
        if (s >= alpha) frequent.emplace(p, s);
    }

    if (len > 2) {
      // A level-(len-1) pattern is absorbed by any one-longer frequent
      // supersequence with equal support.
      MinedLevel& level = result.levels.back();
      for (const auto& [gamma, gamma_support] : prev_frequent) {
        const bool absorbed = std::any_of(frequent.begin(), frequent.end(), [&](const auto& sigma) {
          return sigma.second == gamma_support && sigma.first.contains(gamma);
        });
        (absorbed ? level.absorbed : level.closed).push_back({gamma, gamma_support});
      }
    }
    if (frequent.empty()) break;

    result.levels.push_back(MinedLevel{len, {}, {}});
    generators.clear();
    for (const auto& [p, s] : frequent) generators.insert(p);
    prev_frequent = std::move(frequent);
  }
  return result;
}

MinedPatternSet brute_force_closed(const SequenceDatabase& db, std::size_t alpha) {
  if (alpha == 0) throw InvalidArgument("minimum support must be at least 1");

  std::map<Pattern, std::size_t> supports;
  for (const auto& row : db.rows()) {
    std::set<Pattern> in_row;
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j <= row.size() && j - i <= Pattern::kMaxLength; ++j)
        in_row.insert(Pattern(std::span<const Symbol>(row).subspan(i, j - i)));
    for (const auto& p : in_row) ++supports[p];
  }

  MinedPatternSet result;
  std::map<std::size_t, MinedLevel> by_length;
  for (const auto& [p, s] : supports) {
    if (p.size() == 1) {
      result.e1.push_back({p, s});
      continue;
    }
    if (s < alpha) continue;
    bool absorbed = false;
    for (const auto& [q, t] : supports) {
      if (q.size() > p.size() && t == s && q.contains(p)) {
        absorbed = true;
        break;
      }
    }
    auto& level = by_length[p.size()];
    level.length = p.size();
    (absorbed ? level.absorbed : level.closed).push_back({p, s});
  }
  for (auto& [len, level] : by_length) result.levels.push_back(std::move(level));
  return result;
}

}  // namespace fpic
