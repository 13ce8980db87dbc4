#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpic/codec.hpp"
#include "fpic/container.hpp"
#include "fpic/error.hpp"
#include "fpic/image.hpp"
#include "fpic/metrics.hpp"
#include "fpic/seqmine.hpp"
#include "fpic/tiling.hpp"

namespace fpic::cli {

namespace {

using Clock = std::chrono::steady_clock;

SupportThreshold parse_min_support(const std::string& text) {
  double v = 0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("--min-sup: not a number: " + text);
  }
  if (used != text.size() || !std::isfinite(v) || v <= 0) throw InvalidArgument("--min-sup must be positive: " + text);
  if (v < 1) return SupportThreshold::fraction(v);
  if (v != std::floor(v)) throw InvalidArgument("--min-sup >= 1 must be a whole number of rows: " + text);
  return SupportThreshold::absolute(static_cast<std::size_t>(v));
}

ClusteringMode parse_mode(const std::string& s) {
  if (s == "dp") return ClusteringMode::dp;
  if (s == "lloyd") return ClusteringMode::lloyd;
  throw InvalidArgument("--clustering must be dp or lloyd");
}

ImageFormat parse_format(const std::string& s) {
  if (s == "pgm") return ImageFormat::pgm;
  if (s == "ppm") return ImageFormat::ppm;
  if (s == "bmp") return ImageFormat::bmp;
  throw InvalidArgument("--format must be pgm, ppm or bmp");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

ClusterModel parse_means(const std::string& text) {
  ClusterModel model;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
    }
    if (used != part.size() || v < 0 || v > 255) throw InvalidArgument("--means: bad value '" + part + "'");
    model.means.push_back(static_cast<Sample>(v));
  }
  if (model.k() == 0 || model.k() > 256) throw InvalidArgument("--means needs 1..256 values");
  return model;
}

/// Pixel values taken as cluster identifiers of `model`.
std::vector<Quantization> pinned_labels(const RasterImage& img, const ClusterModel& model) {
  std::vector<Quantization> out;
  for (const auto& ch : split_channels(img)) {
    for (Sample s : ch.data())
      if (s >= model.k()) throw InvalidArgument("label " + std::to_string(s) + " exceeds --means table");
    out.push_back({model, LabelMatrix(ch.width(), ch.height(), {ch.data().begin(), ch.data().end()})});
  }
  return out;
}

std::string format_double(double v, int precision) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

std::uint64_t raw_bits(const RasterImage& img) { return std::uint64_t{8} * img.sample_count(); }

template <typename T>
struct Range {
  T lo, hi, step;
};

template <typename T>
Range<T> parse_range(const std::string& flag, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument(flag + " must be LO:HI:STEP");
  Range<T> r{};
  T* fields[] = {&r.lo, &r.hi, &r.step};
  for (int i = 0; i < 3; ++i) {
    std::size_t used = 0;
    try {
      if constexpr (std::is_integral_v<T>)
        *fields[i] = static_cast<T>(std::stoll(parts[i], &used));
      else
        *fields[i] = static_cast<T>(std::stod(parts[i], &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size()) throw InvalidArgument(flag + ": bad number '" + parts[i] + "'");
  }
  if (!(r.step > 0) || r.lo > r.hi) throw InvalidArgument(flag + " is empty");
  return r;
}

// --- subcommands ---------------------------------------------------------

struct CompressArgs {
  std::string input, output, min_sup, clustering = "dp", means, channel_k;
  std::size_t clusters = 0;
  std::uint64_t seed = 0;
  bool labels = false;
};

int cmd_compress(const CompressArgs& a, std::ostream& out) {
  const auto alpha = parse_min_support(a.min_sup);
  if (!a.labels && a.channel_k.empty() && (a.clusters == 0 || a.clusters > 256))
    throw InvalidArgument("--clusters must be in [1, 256]");
  const RasterImage img = load_image(a.input);

  CompressedImage ci;
  if (a.labels) {
    if (a.means.empty()) throw InvalidArgument("--labels requires --means");
    ci = compress_quantized(pinned_labels(img, parse_means(a.means)), alpha);
  } else {
    CodecParams params;
    params.k = a.clusters;
    params.alpha = alpha;
    params.mode = parse_mode(a.clustering);
    params.seed = a.seed;
    if (!a.channel_k.empty())
      for (const auto& part : split(a.channel_k, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
          v = std::stol(part, &used);
        } catch (const std::exception&) {
        }
        if (used != part.size() || v <= 0) throw InvalidArgument("--channel-clusters: bad value '" + part + "'");
        params.channel_k.push_back(static_cast<std::size_t>(v));
      }
    ci = compress(img, params);
  }
  write_container(ci, a.output);

  const auto bits = compressed_size_bits(ci);
  nlohmann::json report{{"compressed_bits", bits}, {"cr", compression_ratio(raw_bits(img), bits)}};
  out << report.dump() << '\n';
  return kOk;
}

int cmd_decompress(const std::string& input, const std::string& output, const std::string& format) {
  const auto fmt = parse_format(format);
  const RasterImage img = decompress(read_container(input));
  save_image(img, output, fmt);
  return kOk;
}

int cmd_metrics(const std::string& original, const std::string& candidate, std::ostream& out) {
  const auto report = evaluate(load_image(original), load_image(candidate));
  nlohmann::json j{{"mse", report.mse}, {"psnr_db", json_number(report.psnr_db)}, {"ssim", report.ssim}};
  out << j.dump() << '\n';
  return kOk;
}

struct BenchArgs {
  std::string input, k_range, alpha_range, out;
};

int cmd_bench(const BenchArgs& a) {
  const auto ks = parse_range<long long>("--k-range", a.k_range);
  const auto alphas = parse_range<double>("--alpha-range", a.alpha_range);
  if (ks.lo < 1 || ks.hi > 256) throw InvalidArgument("--k-range must lie in [1, 256]");
  if (alphas.lo <= 0 || alphas.hi > 1) throw InvalidArgument("--alpha-range must lie in (0, 1]");
  const std::size_t alpha_steps = static_cast<std::size_t>(std::floor((alphas.hi - alphas.lo) / alphas.step + 1e-9)) + 1;

  const RasterImage img = load_image(a.input);
  std::ofstream csv(a.out, std::ios::trunc);
  if (!csv) throw IoError("cannot create " + a.out);
  csv << "k,alpha,compressed_bits,cr,psnr_db,ssim,compress_ms,decompress_ms\n";

  const bool has_ssim = img.width() >= kSsimWindow && img.height() >= kSsimWindow;
  for (long long k = ks.lo; k <= ks.hi; k += ks.step) {
    for (std::size_t i = 0; i < alpha_steps; ++i) {
      const double alpha = alphas.lo + static_cast<double>(i) * alphas.step;
      CodecParams params;
      params.k = static_cast<std::size_t>(k);
      params.alpha = SupportThreshold::fraction(std::min(alpha, 1.0));

      const auto t0 = Clock::now();
      const auto bytes = serialize(compress(img, params));
      const auto t1 = Clock::now();
      const RasterImage back = decompress(deserialize(bytes));
      const auto t2 = Clock::now();

      const std::uint64_t bits = 8 * bytes.size();
      const double ms_c = std::chrono::duration<double, std::milli>(t1 - t0).count();
      const double ms_d = std::chrono::duration<double, std::milli>(t2 - t1).count();
      csv << k << ',' << format_double(alpha, 4) << ',' << bits << ','
          << format_double(compression_ratio(raw_bits(img), bits), 6) << ','
          << format_double(psnr(img, back), 6) << ','
          << (has_ssim ? format_double(ssim(img, back), 6) : std::string("nan")) << ','
          << format_double(ms_c, 3) << ',' << format_double(ms_d, 3) << '\n';
    }
  }
  if (!csv) throw IoError("write failed: " + a.out);
  return kOk;
}

struct MineArgs {
  std::string input, min_sup, means, patterns, out;
  std::size_t clusters = 0;
  std::size_t channel = 0;
  bool labels = false;
  bool tiling = false;
};

int cmd_mine(const MineArgs& a, std::ostream& out) {
  const RasterImage img = load_image(a.input);
  if (a.channel >= img.channels()) throw InvalidArgument("--channel out of range");
  const Channel ch = split_channels(img)[a.channel];

  LabelMatrix labels;
  if (a.labels) {
    labels = LabelMatrix(ch.width(), ch.height(), {ch.data().begin(), ch.data().end()});
  } else {
    if (a.clusters == 0 || a.clusters > 256) throw InvalidArgument("--clusters must be in [1, 256]");
    labels = quantize(ch, a.clusters).labels;
  }
  const auto db = SequenceDatabase::from_labels(labels);

  std::vector<SupportedPattern> set;
  if (!a.patterns.empty()) {
    for (const auto& text : split(a.patterns, ',')) {
      Pattern p = Pattern::parse(text);
      const std::size_t s = row_support(db, p);
      set.push_back({std::move(p), s});
    }
  } else {
    if (a.min_sup.empty()) throw InvalidArgument("--min-sup is required unless --patterns is given");
    set = mine_closed(db, parse_min_support(a.min_sup).resolve(db.row_count())).all();
  }

  // Report in tiling order either way; tiling validates coverage.
  const TilingRecord rec = modified_support(db, set);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::trunc);
    if (!file) throw IoError("cannot create " + a.out);
    sink = &file;
  }
  *sink << "pattern,length,support" << (a.tiling ? ",s_mod" : "") << '\n';
  for (const auto& e : rec.order) {
    *sink << e.pattern.to_string() << ',' << e.pattern.size() << ',' << e.support;
    if (a.tiling) *sink << ',' << e.modified;
    *sink << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lossy image codec: clustering + closed frequent sequence mining + Huffman coding", "fpic"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress_cmd = app.add_subcommand("compress", "Compress an image into a .fpic container");
  compress_cmd->add_option("--input", ca.input, "PGM/PPM/BMP image")->required();
  compress_cmd->add_option("--output", ca.output, ".fpic output path")->required();
  compress_cmd->add_option("--clusters", ca.clusters, "clusters per channel (1..256)");
  compress_cmd->add_option("--min-sup", ca.min_sup, "row fraction (<1) or absolute row count (>=1)")->required();
  compress_cmd->add_option("--clustering", ca.clustering, "dp or lloyd");
  compress_cmd->add_option("--seed", ca.seed, "seed for lloyd clustering");
  compress_cmd->add_option("--channel-clusters", ca.channel_k, "comma-separated k per channel");
  compress_cmd->add_flag("--labels", ca.labels, "treat pixel values as cluster identifiers");
  compress_cmd->add_option("--means", ca.means, "comma-separated cluster means, with --labels");

  std::string d_in, d_out, d_format;
  auto* decompress_cmd = app.add_subcommand("decompress", "Decode a .fpic container");
  decompress_cmd->add_option("--input", d_in)->required();
  decompress_cmd->add_option("--output", d_out)->required();
  decompress_cmd->add_option("--format", d_format, "pgm, ppm or bmp")->required();

  std::string m_orig, m_cand;
  auto* metrics_cmd = app.add_subcommand("metrics", "MSE / PSNR / SSIM between two images");
  metrics_cmd->add_option("--original", m_orig)->required();
  metrics_cmd->add_option("--candidate", m_cand)->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep k and alpha, write CSV");
  bench_cmd->add_option("--input", ba.input)->required();
  bench_cmd->add_option("--k-range", ba.k_range, "LO:HI:STEP")->required();
  bench_cmd->add_option("--alpha-range", ba.alpha_range, "LO:HI:STEP (fractions)")->required();
  bench_cmd->add_option("--out", ba.out, "CSV path")->required();

  MineArgs ma;
  auto* mine_cmd = app.add_subcommand("mine", "Dump mined closed sequences as CSV");
  mine_cmd->add_option("--input", ma.input)->required();
  mine_cmd->add_option("--clusters", ma.clusters);
  mine_cmd->add_option("--min-sup", ma.min_sup);
  mine_cmd->add_option("--channel", ma.channel, "channel index (default 0)");
  mine_cmd->add_option("--patterns", ma.patterns, "explicit pattern set, e.g. 4-4-4,4-4,0");
  mine_cmd->add_option("--out", ma.out, "CSV path (default stdout)");
  mine_cmd->add_flag("--labels", ma.labels, "treat pixel values as cluster identifiers");
  mine_cmd->add_flag("--tiling", ma.tiling, "add modified support column");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgs;
  }

  try {
    if (*compress_cmd) return cmd_compress(ca, out);
    if (*decompress_cmd) return cmd_decompress(d_in, d_out, d_format);
    if (*metrics_cmd) return cmd_metrics(m_orig, m_cand, out);
    if (*bench_cmd) return cmd_bench(ba);
    if (*mine_cmd) return cmd_mine(ma, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgs;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kInvalidArgs;
}

}  // namespace fpic::cli
