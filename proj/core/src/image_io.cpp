#include "jsmreg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

namespace jsmreg {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_header_int(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = next_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("malformed PGM header in " + path.string());
  }
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return f;
}

void write_png_rows(const std::filesystem::path& path, int width, int height,
                    int color_type, int channels, const std::uint8_t* data) {
  FilePtr f = open_file(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  volatile bool ok = false;
  if (setjmp(png_jmpbuf(png)) == 0) {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y) {
      png_write_row(png, const_cast<png_bytep>(data + y * stride));
    }
    png_write_end(png, nullptr);
    ok = true;
  }
  png_destroy_write_struct(&png, &info);
  if (!ok) throw std::runtime_error("libpng failed writing " + path.string());
}

}  // namespace

Gray8 read_pgm8(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  if (next_token(in) != "P5") {
    throw std::runtime_error(path.string() + " is not a binary PGM (P5)");
  }
  Gray8 out;
  out.width = parse_header_int(in, path);
  out.height = parse_header_int(in, path);
  const int maxval = parse_header_int(in, path);
  if (maxval < 1 || maxval > 65535) {
    throw std::runtime_error("unsupported PGM maxval in " + path.string());
  }
  // next_token consumed exactly one whitespace byte after maxval.
  const std::size_t n = static_cast<std::size_t>(out.width) * out.height;
  out.data.resize(n);
  if (maxval < 256) {
    in.read(reinterpret_cast<char*>(out.data.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
      throw std::runtime_error("truncated PGM data in " + path.string());
    }
    if (maxval != 255) {
      for (auto& b : out.data) {
        b = static_cast<std::uint8_t>(std::lround(255.0 * b / maxval));
      }
    }
  } else {
    std::vector<unsigned char> raw(2 * n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw std::runtime_error("truncated PGM data in " + path.string());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int v = (raw[2 * i] << 8) | raw[2 * i + 1];
      out.data[i] = static_cast<std::uint8_t>(std::lround(255.0 * v / maxval));
    }
  }
  return out;
}

void write_pgm8(const std::filesystem::path& path, const Gray8& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Gray8 read_png8(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }

  // Buffers live outside the setjmp scope so a libpng error only skips
  // plain C state.
  Gray8 out;
  std::vector<std::uint8_t> rows;
  std::vector<png_bytep> ptrs;
  volatile int channels = 1;
  volatile bool ok = false;
  if (setjmp(png_jmpbuf(png)) == 0) {
    png_init_io(png, f.get());
    png_read_info(png, info);
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    rows.resize(stride * out.height);
    ptrs.resize(out.height);
    for (int y = 0; y < out.height; ++y) ptrs[y] = rows.data() + y * stride;
    png_read_image(png, ptrs.data());
    ok = true;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!ok) throw std::runtime_error("libpng failed reading " + path.string());

  out.data.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const std::uint8_t* px = ptrs[y] + static_cast<std::size_t>(x) * channels;
      out.data[static_cast<std::size_t>(y) * out.width + x] =
          channels >= 3
              ? static_cast<std::uint8_t>(std::lround((px[0] + px[1] + px[2]) / 3.0))
              : px[0];
    }
  }
  return out;
}

void write_png8(const std::filesystem::path& path, const Gray8& img) {
  write_png_rows(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 1,
                 img.data.data());
}

void write_rgb(const std::filesystem::path& path, const RgbImage& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_png_rows(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 3,
                   img.data.data());
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
}

Image to_image(const Gray8& raw) {
  std::vector<double> data(raw.data.size());
  std::transform(raw.data.begin(), raw.data.end(), data.begin(),
                 [](std::uint8_t b) { return b / 255.0; });
  return Image(raw.width, raw.height, std::move(data));
}

Gray8 to_gray8(const Image& img) {
  Gray8 out;
  out.width = img.width();
  out.height = img.height();
  out.data.resize(img.size());
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    out.data[i] = static_cast<std::uint8_t>(
        std::lround(std::clamp(px[i], 0.0, 1.0) * 255.0));
  }
  return out;
}

Gray8 to_gray8_normalized(const Image& img) {
  Gray8 out;
  out.width = img.width();
  out.height = img.height();
  out.data.assign(img.size(), 128);
  const double lo = img.min();
  const double hi = img.max();
  if (hi > lo) {
    const auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
      out.data[i] =
          static_cast<std::uint8_t>(std::lround(255.0 * (px[i] - lo) / (hi - lo)));
    }
  }
  return out;
}

Image read_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return to_image(read_pgm8(path));
  if (ext == ".png") return to_image(read_png8(path));
  throw std::runtime_error("unsupported image format: " + path.string());
}

void write_image(const std::filesystem::path& path, const Image& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_png8(path, to_gray8(img));
  } else {
    write_pgm8(path, to_gray8(img));
  }
}

void write_image_normalized(const std::filesystem::path& path, const Image& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_png8(path, to_gray8_normalized(img));
  } else {
    write_pgm8(path, to_gray8_normalized(img));
  }
}

}  // namespace jsmreg
