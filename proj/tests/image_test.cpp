#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "fpic/error.hpp"
#include "fpic/image.hpp"

namespace fpic {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::vector<std::uint8_t> payload = {}) {
  std::vector<std::uint8_t> b(header.begin(), header.end());
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fpic_image_test_" + name);
}

TEST(Image, BinaryPgmCopiesBytes) {
  const auto img = decode_image(bytes_of("P5\n2 2\n255\n", {10, 20, 30, 40}));
  EXPECT_EQ(img.channels(), 1u);
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.height(), 2u);
  EXPECT_EQ(std::vector<Sample>(img.data().begin(), img.data().end()), (std::vector<Sample>{10, 20, 30, 40}));
}

TEST(Image, BinaryPpmSinglePixel) {
  const auto img = decode_image(bytes_of("P6 1 1 255\n", {255, 0, 0}));
  EXPECT_EQ(img.channels(), 3u);
  EXPECT_EQ(std::vector<Sample>(img.data().begin(), img.data().end()), (std::vector<Sample>{255, 0, 0}));
}

TEST(Image, AsciiWithComments) {
  const auto img = decode_image(bytes_of("P2\n# a comment\n3 1\n# another\n255\n0 128\n255\n"));
  EXPECT_EQ(std::vector<Sample>(img.data().begin(), img.data().end()), (std::vector<Sample>{0, 128, 255}));
  const auto rgb = decode_image(bytes_of("P3 1 1 255 1 2 3"));
  EXPECT_EQ(rgb.at(0, 0, 2), 3);
}

TEST(Image, TruncatedPayloadIsReported) {
  try {
    decode_image(bytes_of("P5\n2 2\n255\n", {1, 2, 3}));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "payload");
    EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
  }
  EXPECT_THROW(decode_image(bytes_of("P2 2 1 255 7")), ParseError);
}

TEST(Image, HeaderErrorsNameTheField) {
  auto field_of = [](const std::string& header) {
    try {
      decode_image(bytes_of(header, {0, 0, 0, 0}));
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of("P5\n2 2\n65535\n"), "maxval");
  EXPECT_EQ(field_of("P5\n2 2\n15\n"), "maxval");
  EXPECT_EQ(field_of("P7\n2 2\n255\n"), "magic");
  EXPECT_EQ(field_of("GIF89a"), "magic");
  EXPECT_EQ(field_of("P5\n0 2\n255\n"), "width");
  EXPECT_EQ(field_of("P5\nx 2\n255\n"), "width");
  EXPECT_EQ(field_of("P5\n2"), "height");
}

TEST(Image, AsciiSampleAboveMaxvalRejected) {
  EXPECT_THROW(decode_image(bytes_of("P2 1 1 255 256")), ParseError);
}

TEST(Image, BmpRoundTripHandlesPaddingAndRowOrder) {
  // Width 3 → 9 bytes per row, padded to 12.
  const RasterImage img(3, 2, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18});
  const auto bytes = encode_image(img, ImageFormat::bmp);
  ASSERT_EQ(bytes.size(), 14u + 40u + 2u * 12u);
  // Bottom row comes first, stored BGR.
  EXPECT_EQ(bytes[54], 12);
  EXPECT_EQ(bytes[55], 11);
  EXPECT_EQ(bytes[56], 10);
  EXPECT_EQ(bytes[63], 0);  // padding
  EXPECT_EQ(decode_image(bytes), img);
}

TEST(Image, BmpTopDownAndUnsupportedVariants) {
  const RasterImage img(1, 2, 3, {1, 2, 3, 4, 5, 6});
  auto bytes = encode_image(img, ImageFormat::bmp);
  // Negate height: rows are now stored top-down.
  const std::int32_t neg = -2;
  for (int i = 0; i < 4; ++i) bytes[22 + i] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(neg) >> (8 * i));
  const auto flipped = decode_image(bytes);
  EXPECT_EQ(flipped.at(0, 0, 0), 4);
  EXPECT_EQ(flipped.at(1, 0, 0), 1);

  auto bpp8 = encode_image(img, ImageFormat::bmp);
  bpp8[28] = 8;
  try {
    decode_image(bpp8);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "biBitCount");
  }
  auto rle = encode_image(img, ImageFormat::bmp);
  rle[30] = 1;
  EXPECT_THROW(decode_image(rle), ParseError);
  auto cut = encode_image(img, ImageFormat::bmp);
  cut.resize(cut.size() - 1);
  EXPECT_THROW(decode_image(cut), ParseError);
}

TEST(Image, SaveWritesPayloadAfterHeader) {
  const RasterImage px(1, 1, 3, {7, 8, 9});
  const auto bytes = encode_image(px, ImageFormat::ppm);
  ASSERT_GE(bytes.size(), 3u);
  EXPECT_EQ((std::vector<std::uint8_t>(bytes.end() - 3, bytes.end())), (std::vector<std::uint8_t>{7, 8, 9}));
}

TEST(Image, SaveRejectsChannelMismatch) {
  const RasterImage rgb(1, 1, 3, {7, 8, 9});
  const RasterImage g(1, 1, 1, {7});
  EXPECT_THROW(encode_image(rgb, ImageFormat::pgm), ShapeMismatch);
  EXPECT_THROW(encode_image(g, ImageFormat::ppm), ShapeMismatch);
  EXPECT_THROW(encode_image(g, ImageFormat::bmp), ShapeMismatch);
}

TEST(Image, FileRoundTripEveryFormat) {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    const std::size_t w = 1 + rng() % 13, h = 1 + rng() % 9;
    const auto g = testing::random_image(rng, w, h, 1);
    const auto c = testing::random_image(rng, w, h, 3);
    save_image(g, temp_path("a.pgm"), ImageFormat::pgm);
    save_image(c, temp_path("a.ppm"), ImageFormat::ppm);
    save_image(c, temp_path("a.bmp"), ImageFormat::bmp);
    EXPECT_EQ(load_image(temp_path("a.pgm")), g);
    EXPECT_EQ(load_image(temp_path("a.ppm")), c);
    EXPECT_EQ(load_image(temp_path("a.bmp")), c);
  }
}

TEST(Image, MissingFileIsIoError) {
  EXPECT_THROW(load_image("/nonexistent/definitely/missing.pgm"), IoError);
}

TEST(Image, BundledFixturesLoad) {
  const auto block = load_image(testing::data_dir() / "b_matrix.pgm");
  EXPECT_EQ(block, testing::gray(testing::kBlock));
  const auto crop = load_image(testing::data_dir() / "astronaut_crop64.ppm");
  EXPECT_EQ(crop.width(), 64u);
  EXPECT_EQ(crop.channels(), 3u);
}

TEST(Channels, SplitExamples) {
  const auto red = split_channels(RasterImage(1, 1, 3, {255, 0, 0}));
  ASSERT_EQ(red.size(), 3u);
  EXPECT_EQ(red[0].at(0, 0), 255);
  EXPECT_EQ(red[1].at(0, 0), 0);
  EXPECT_EQ(red[2].at(0, 0), 0);

  const auto g = split_channels(RasterImage(2, 1, 1, {5, 6}));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], Channel(2, 1, {5, 6}));

  const auto two = split_channels(RasterImage(2, 1, 3, {1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(two[0], Channel(2, 1, {1, 4}));
  EXPECT_EQ(two[1], Channel(2, 1, {2, 5}));
  EXPECT_EQ(two[2], Channel(2, 1, {3, 6}));
}

TEST(Channels, MergeInvertsSplit) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto img = testing::random_image(rng, 1 + rng() % 10, 1 + rng() % 10, (rng() % 2) ? 3 : 1);
    EXPECT_EQ(merge_channels(split_channels(img)), img);
  }
}

TEST(Channels, MergeErrors) {
  const std::vector<Channel> two{Channel(1, 1, {1}), Channel(1, 1, {2})};
  EXPECT_THROW(merge_channels(two), InvalidArgument);
  const std::vector<Channel> ragged{Channel(1, 1, {1}), Channel(2, 1, {2, 3}), Channel(1, 1, {4})};
  EXPECT_THROW(merge_channels(ragged), ShapeMismatch);
}

TEST(Image, ConstructorInvariants) {
  EXPECT_THROW(RasterImage(2, 2, 1, {1, 2, 3}), InvalidArgument);
  EXPECT_THROW(RasterImage(1, 1, 2, {1, 2}), InvalidArgument);
  EXPECT_THROW(RasterImage(0, 1, 1, {}), InvalidArgument);
}

}  // namespace
}  // namespace fpic
