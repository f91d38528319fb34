#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <png.h>

#include "mbfo/errors.hpp"

namespace mbfo {

inline constexpr int kGrayLevels = 256;

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return pixels.size(); }
  bool operator==(const GrayImage&) const = default;
};

/// Binary per-pixel mask, true = edge.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;  // 0 or 1

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { mask[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto v : mask) n += (v != 0);
    return n;
  }
  bool operator==(const EdgeMap&) const = default;
};

/// 256-bin intensity histogram with total pixel count.
struct Histogram {
  std::array<std::uint64_t, kGrayLevels> counts{};
  std::uint64_t total = 0;

  double probability(int i) const {
    return total == 0 ? 0.0 : static_cast<double>(counts[i]) / static_cast<double>(total);
  }
};

inline Histogram compute_histogram(const GrayImage& img) {
  Histogram h;
  for (auto p : img.pixels) ++h.counts[p];
  h.total = img.size();
  return h;
}

namespace detail {

// Reads the next whitespace/comment-delimited token of a PNM header.
inline std::string next_pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

inline int parse_pnm_int(std::istream& in, const char* what) {
  std::string tok = next_pnm_token(in);
  if (tok.empty()) throw CorruptFile(std::string("missing ") + what);
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw CorruptFile(std::string("bad ") + what + ": " + tok);
  }
}

inline GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  const bool ascii = magic[0] == 'P' && magic[1] == '2';
  const bool binary = magic[0] == 'P' && magic[1] == '5';
  if (!ascii && !binary) throw UnsupportedFormat("not a P2/P5 PGM: " + path);

  const int width = parse_pnm_int(in, "width");
  const int height = parse_pnm_int(in, "height");
  const int maxval = parse_pnm_int(in, "maxval");
  if (width < 1 || height < 1) throw CorruptFile("non-positive dimensions");
  if (maxval > 255) throw UnsupportedFormat("maxval " + std::to_string(maxval) + " exceeds 8 bits");
  if (maxval < 1) throw CorruptFile("maxval < 1");

  GrayImage img(width, height);
  if (ascii) {
    for (auto& p : img.pixels) {
      int v = parse_pnm_int(in, "pixel");
      if (v < 0 || v > maxval) throw CorruptFile("pixel value out of range");
      p = static_cast<std::uint8_t>(v);
    }
  } else {
    // P5: exactly one whitespace byte after maxval, already consumed by the tokenizer.
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.size())
      throw CorruptFile("pixel data shorter than header declares");
  }
  return img;
}

inline GrayImage load_png_gray(const std::string& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    std::string msg = image.message;
    png_image_free(&image);
    throw CorruptFile("png: " + msg);
  }
  if (image.format != PNG_FORMAT_GRAY) {
    png_image_free(&image);
    throw UnsupportedFormat("PNG is not 8-bit grayscale: " + path);
  }
  GrayImage img(static_cast<int>(image.width), static_cast<int>(image.height));
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw CorruptFile("png: " + msg);
  }
  return img;
}

}  // namespace detail

/// Loads a P2/P5 PGM or an 8-bit grayscale PNG. Color and >8-bit inputs are rejected.
inline GrayImage load_image(const std::string& path) {
  if (!std::filesystem::exists(path)) throw FileNotFound(path);
  std::ifstream probe(path, std::ios::binary);
  char sig[8] = {};
  probe.read(sig, 8);
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (probe.gcount() == 8 && std::equal(std::begin(png_sig), std::end(png_sig),
                                        reinterpret_cast<unsigned char*>(sig)))
    return detail::load_png_gray(path);
  return detail::load_pgm(path);
}

enum class PgmEncoding { Binary, Ascii };

/// Writes a PGM with maxval 255. Binary (P5) by default.
inline void save_image(const GrayImage& img, const std::string& path,
                       PgmEncoding enc = PgmEncoding::Binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open for write: " + path);
  if (enc == PgmEncoding::Binary) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.size()));
  } else {
    out << "P2\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) out << int(img.at(x, y)) << (x + 1 < img.width ? ' ' : '\n');
    }
  }
  if (!out) throw IoFailure("write failed: " + path);
}

/// Renders an edge map as a binary-valued image, edge = 255.
inline GrayImage render_edges(const EdgeMap& edges) {
  GrayImage img(edges.width, edges.height);
  for (std::size_t i = 0; i < edges.mask.size(); ++i) img.pixels[i] = edges.mask[i] ? 255 : 0;
  return img;
}

/// Reads an EdgeMap from an image file: nonzero pixels are edges.
inline EdgeMap load_edge_map(const std::string& path) {
  GrayImage img = load_image(path);
  EdgeMap e(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) e.mask[i] = img.pixels[i] != 0;
  return e;
}

}  // namespace mbfo
