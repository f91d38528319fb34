#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <png.h>

#include "mbfo/image.hpp"

using namespace mbfo;
namespace fs = std::filesystem;

namespace {

fs::path tmp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "mbfo_imagecore_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& contents) {
  std::ofstream out(p, std::ios::binary);
  out << contents;
}

void write_png(const fs::path& p, int w, int h, png_uint_32 format, const std::vector<std::uint8_t>& data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = w;
  image.height = h;
  image.format = format;
  REQUIRE(png_image_write_to_file(&image, p.string().c_str(), 0, data.data(), 0, nullptr));
}

GrayImage random_image(std::mt19937_64& rng, int max_dim = 16) {
  std::uniform_int_distribution<int> dim(1, max_dim), px(0, 255);
  GrayImage img(dim(rng), dim(rng));
  for (auto& p : img.pixels) p = std::uint8_t(px(rng));
  return img;
}

}  // namespace

TEST_CASE("P2 PGM decodes to the declared pixels") {
  auto p = tmp_file("basic.p2.pgm");
  write_file(p, "P2\n2 2\n255\n0 0 1 2\n");
  auto img = load_image(p.string());
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 0, 1, 2});
}

TEST_CASE("P5 PGM equals its P2 equivalent") {
  auto p2 = tmp_file("eq.p2.pgm");
  auto p5 = tmp_file("eq.p5.pgm");
  write_file(p2, "P2\n2 2\n255\n0 0 1 2\n");
  write_file(p5, std::string("P5\n2 2\n255\n") + std::string("\x00\x00\x01\x02", 4));
  CHECK(load_image(p2.string()) == load_image(p5.string()));
}

TEST_CASE("PGM with comments and odd whitespace parses") {
  auto p = tmp_file("comments.pgm");
  write_file(p, "P2\n# a comment\n 2 # inline\n2\n255\n10 20\n30 40\n");
  auto img = load_image(p.string());
  CHECK(img.pixels == std::vector<std::uint8_t>{10, 20, 30, 40});
}

TEST_CASE("short pixel data raises CorruptFile") {
  auto p2 = tmp_file("short.p2.pgm");
  write_file(p2, "P2\n2 2\n255\n0 0 1\n");
  CHECK_THROWS_AS(load_image(p2.string()), CorruptFile);
  auto p5 = tmp_file("short.p5.pgm");
  write_file(p5, std::string("P5\n2 2\n255\n") + std::string("\x00\x00\x01", 3));
  CHECK_THROWS_AS(load_image(p5.string()), CorruptFile);
}

TEST_CASE("missing file raises FileNotFound") {
  CHECK_THROWS_AS(load_image("/nonexistent/nowhere.pgm"), FileNotFound);
}

TEST_CASE("16-bit PGM is rejected") {
  auto p = tmp_file("deep.pgm");
  write_file(p, "P2\n1 1\n65535\n1234\n");
  CHECK_THROWS_AS(load_image(p.string()), UnsupportedFormat);
}

TEST_CASE("save to unwritable path raises IoFailure") {
  GrayImage img(2, 2);
  CHECK_THROWS_AS(save_image(img, "/nonexistent_dir/out.pgm"), IoFailure);
}

TEST_CASE("load/save round trip is bit-exact for both encodings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto img = random_image(rng);
    for (auto enc : {PgmEncoding::Binary, PgmEncoding::Ascii}) {
      auto p = tmp_file("roundtrip.pgm");
      save_image(img, p.string(), enc);
      CHECK(load_image(p.string()) == img);
    }
  }
}

TEST_CASE("grayscale PNG loads with the same pixels as PGM") {
  auto p = tmp_file("gray.png");
  write_png(p, 2, 2, PNG_FORMAT_GRAY, {0, 0, 1, 2});
  auto img = load_image(p.string());
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 0, 1, 2});
}

TEST_CASE("color PNG is rejected, not converted") {
  auto p = tmp_file("color.png");
  std::vector<std::uint8_t> rgb = {255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 10, 10};
  write_png(p, 2, 2, PNG_FORMAT_RGB, rgb);
  CHECK_THROWS_AS(load_image(p.string()), UnsupportedFormat);
}

TEST_CASE("histogram counts pixel intensities") {
  GrayImage img(2, 2);
  img.pixels = {0, 0, 1, 2};
  auto h = compute_histogram(img);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 1);
  CHECK(h.counts[2] == 1);
  CHECK(h.counts[3] == 0);
  CHECK(h.total == 4);
}

TEST_CASE("constant image histogram has a single nonzero bin") {
  GrayImage img(3, 3, 7);
  auto h = compute_histogram(img);
  CHECK(h.counts[7] == 9);
  CHECK(h.total == 9);
  for (int i = 0; i < kGrayLevels; ++i)
    if (i != 7) CHECK(h.counts[i] == 0);
}

TEST_CASE("probabilities sum to 1 and total matches pixel count") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto img = random_image(rng, 24);
    auto h = compute_histogram(img);
    CHECK(h.total == img.size());
    double sum = 0.0;
    for (int i = 0; i < kGrayLevels; ++i) sum += h.probability(i);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("histogram is invariant under pixel permutation") {
  std::mt19937_64 rng(13);
  auto img = random_image(rng, 20);
  auto shuffled = img;
  std::shuffle(shuffled.pixels.begin(), shuffled.pixels.end(), rng);
  auto h1 = compute_histogram(img);
  auto h2 = compute_histogram(shuffled);
  CHECK(h1.counts == h2.counts);
}

TEST_CASE("edge map renders as a binary-valued image") {
  EdgeMap e(2, 2);
  e.set(0, 0, true);
  e.set(1, 1, true);
  auto img = render_edges(e);
  CHECK(img.pixels == std::vector<std::uint8_t>{255, 0, 0, 255});
  auto p = tmp_file("edges.pgm");
  save_image(img, p.string());
  CHECK(load_edge_map(p.string()) == e);
}
