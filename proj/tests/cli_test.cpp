#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "fpic/container.hpp"
#include "fpic/image.hpp"
#include "json.hpp"

namespace fpic {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("fpic_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  static std::string data(const std::string& name) { return (testing::data_dir() / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, PinnedBlockMatchesGoldenAndDecodes) {
  const auto r = run({"compress", "--input", data("b_labels.pgm"), "--output", tmp("b.fpic"), "--labels", "--means",
                      "179,153,135,246,120", "--min-sup", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_bytes(tmp("b.fpic")), read_bytes(data("b_fixture.fpic")));
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["compressed_bits"].get<std::uint64_t>(), 8 * read_bytes(tmp("b.fpic")).size());

  ASSERT_EQ(run({"decompress", "--input", tmp("b.fpic"), "--output", tmp("b.pgm"), "--format", "pgm"}).code, 0);
  EXPECT_EQ(load_image(tmp("b.pgm")), load_image(data("b_decoded.pgm")));
}

TEST_F(Cli, CompressDecompressColour) {
  std::mt19937 rng(3);
  save_image(testing::random_image(rng, 12, 9, 3), tmp("in.ppm"), ImageFormat::ppm);
  ASSERT_EQ(run({"compress", "--input", tmp("in.ppm"), "--output", tmp("c.fpic"), "--clusters", "4", "--min-sup",
                 "0.46"})
                .code,
            0);
  ASSERT_EQ(run({"decompress", "--input", tmp("c.fpic"), "--output", tmp("c.bmp"), "--format", "bmp"}).code, 0);
  const auto back = load_image(tmp("c.bmp"));
  EXPECT_EQ(back.width(), 12u);
  EXPECT_EQ(back.channels(), 3u);
}

TEST_F(Cli, InvalidArgumentsExitTwo) {
  EXPECT_EQ(run({"compress", "--input", data("b_matrix.pgm"), "--output", tmp("x"), "--clusters", "0", "--min-sup",
                 "0.5"})
                .code,
            2);
  EXPECT_EQ(run({"compress", "--input", tmp("missing.pgm"), "--output", tmp("x"), "--clusters", "0", "--min-sup",
                 "0.5"})
                .code,
            2);
  EXPECT_EQ(run({"compress", "--input", data("b_matrix.pgm"), "--output", tmp("x"), "--clusters", "4", "--min-sup",
                 "-1"})
                .code,
            2);
  EXPECT_EQ(run({"compress", "--input", data("b_matrix.pgm"), "--output", tmp("x"), "--clusters", "4"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, IoAndFormatErrorsExitOne) {
  EXPECT_EQ(run({"compress", "--input", tmp("missing.pgm"), "--output", tmp("x"), "--clusters", "4", "--min-sup",
                 "0.5"})
                .code,
            1);
  { std::ofstream(tmp("bad.fpic"), std::ios::binary) << "FPIX garbage"; }
  EXPECT_EQ(run({"decompress", "--input", tmp("bad.fpic"), "--output", tmp("o.pgm"), "--format", "pgm"}).code, 1);
  auto bytes = read_bytes(data("b_fixture.fpic"));
  bytes.resize(bytes.size() - 3);
  {
    std::ofstream f(tmp("trunc.fpic"), std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  EXPECT_EQ(run({"decompress", "--input", tmp("trunc.fpic"), "--output", tmp("o.pgm"), "--format", "pgm"}).code, 1);
}

TEST_F(Cli, FormatChannelMismatchExitsTwo) {
  EXPECT_EQ(run({"decompress", "--input", data("b_fixture.fpic"), "--output", tmp("o.ppm"), "--format", "ppm"}).code,
            2);
  EXPECT_EQ(run({"decompress", "--input", data("b_fixture.fpic"), "--output", tmp("o.png"), "--format", "png"}).code,
            2);
}

TEST_F(Cli, Metrics) {
  auto r = run({"metrics", "--original", data("b_matrix.pgm"), "--candidate", data("b_matrix.pgm")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["psnr_db"], "inf");
  EXPECT_EQ(j["mse"].get<double>(), 0.0);
  EXPECT_NEAR(j["ssim"].get<double>(), 1.0, 1e-12);

  r = run({"metrics", "--original", data("b_matrix.pgm"), "--candidate", data("b_decoded.pgm")});
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["psnr_db"].get<double>(), 0.0);

  EXPECT_EQ(run({"metrics", "--original", data("b_matrix.pgm"), "--candidate", data("m_labels.pgm")}).code, 2);
}

TEST_F(Cli, BenchRowCounts) {
  const std::string in = data("astronaut_crop64.ppm");
  ASSERT_EQ(run({"bench", "--input", in, "--k-range", "8:8:1", "--alpha-range", "0.46:0.46:0.1", "--out",
                 tmp("one.csv")})
                .code,
            0);
  std::ifstream one(tmp("one.csv"));
  const auto rows1 = lines_of({std::istreambuf_iterator<char>(one), std::istreambuf_iterator<char>()});
  ASSERT_EQ(rows1.size(), 2u);
  EXPECT_EQ(rows1[0], "k,alpha,compressed_bits,cr,psnr_db,ssim,compress_ms,decompress_ms");
  EXPECT_EQ(rows1[1].rfind("8,0.4600,", 0), 0u);

  ASSERT_EQ(run({"bench", "--input", data("b_matrix.pgm"), "--k-range", "2:6:2", "--alpha-range", "0.25:0.5:0.25",
                 "--out", tmp("grid.csv")})
                .code,
            0);
  std::ifstream grid(tmp("grid.csv"));
  const auto rows = lines_of({std::istreambuf_iterator<char>(grid), std::istreambuf_iterator<char>()});
  ASSERT_EQ(rows.size(), 1u + 3 * 2);
  EXPECT_EQ(rows[1].rfind("2,0.2500,", 0), 0u);
  EXPECT_EQ(rows[2].rfind("2,0.5000,", 0), 0u);
  EXPECT_EQ(rows[6].rfind("6,0.5000,", 0), 0u);

  EXPECT_EQ(run({"bench", "--input", in, "--k-range", "9:8:1", "--alpha-range", "0.4:0.5:0.1", "--out",
                 tmp("e.csv")})
                .code,
            2);
  EXPECT_EQ(run({"bench", "--input", in, "--k-range", "8:8:1", "--alpha-range", "0.4:0.5:0", "--out", tmp("e.csv")})
                .code,
            2);
}

TEST_F(Cli, MineBlockListsClosedSet) {
  const auto r = run({"mine", "--input", data("b_labels.pgm"), "--labels", "--min-sup", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(rows[0], "pattern,length,support");
  EXPECT_EQ(rows[1], "4-4-4,3,3");
  EXPECT_EQ(rows[2], "2-0-0,3,3");
  EXPECT_NE(std::find(rows.begin(), rows.end(), "0-0,2,5"), rows.end());
  EXPECT_EQ(std::find(rows.begin(), rows.end(), "2-0,2,3"), rows.end());

  const auto high = run({"mine", "--input", data("b_labels.pgm"), "--labels", "--min-sup", "9"});
  ASSERT_EQ(high.code, 0);
  EXPECT_EQ(lines_of(high.out).size(), 6u);
}

TEST_F(Cli, MineTilingOfTwoRowExample) {
  const auto r = run({"mine", "--input", data("m_labels.pgm"), "--labels", "--tiling", "--patterns",
                      "4-4-4,4-4,2-2,0-0,0,1,2,4", "--out", tmp("m.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(tmp("m.csv"));
  const auto rows = lines_of({std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()});
  EXPECT_EQ(rows, (std::vector<std::string>{"pattern,length,support,s_mod", "4-4-4,3,2,2", "4-4,2,2,0", "2-2,2,2,2",
                                            "0-0,2,2,2", "4,1,2,1", "2,1,2,0", "0,1,2,0", "1,1,1,1"}));
}

}  // namespace
}  // namespace fpic
