#include "jsmreg/exports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jsmreg {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string surface_csv(const SimilaritySurface& s) {
  std::string out;
  for (int iy = 0; iy < s.size; ++iy) {
    for (int ix = 0; ix < s.size; ++ix) {
      if (ix) out += ',';
      const auto& v = s.at(ix, iy);
      out += v ? fmt(*v) : "nan";
    }
    out += '\n';
  }
  return out;
}

Gray8 surface_heatmap(const SimilaritySurface& s) {
  Gray8 g{s.size, s.size, std::vector<std::uint8_t>(s.values.size(), 0)};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : s.values) {
    if (!v) continue;
    lo = std::min(lo, *v);
    hi = std::max(hi, *v);
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const auto& v = s.values[i];
    if (!v) continue;
    g.data[i] = hi > lo ? static_cast<std::uint8_t>(std::lround(255.0 * (*v - lo) / (hi - lo)))
                        : 128;
  }
  return g;
}

Gray8 surface_missing_mask(const SimilaritySurface& s) {
  Gray8 g{s.size, s.size, std::vector<std::uint8_t>(s.values.size(), 0)};
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!s.values[i]) g.data[i] = 255;
  }
  return g;
}

void export_surface(const SimilaritySurface& s, const std::filesystem::path& prefix) {
  if (s.values.empty()) throw std::invalid_argument("export_surface: empty grid");
  write_text(prefix.string() + ".csv", surface_csv(s));
  write_pgm8(prefix.string() + ".pgm", surface_heatmap(s));
  write_pgm8(prefix.string() + "_missing.pgm", surface_missing_mask(s));
}

std::string histogram_csv(const JointHistogram& h) {
  std::string out;
  for (int r = 0; r < h.bins(); ++r) {
    for (int f = 0; f < h.bins(); ++f) {
      if (f) out += ',';
      out += fmt(h.at(r, f));
    }
    out += '\n';
  }
  return out;
}

Gray8 histogram_heatmap(const JointHistogram& h) {
  const int b = h.bins();
  Gray8 g{b, b, std::vector<std::uint8_t>(static_cast<std::size_t>(b) * b, 0)};
  double hi = 0.0;
  for (const double v : h.entries()) hi = std::max(hi, std::log1p(v));
  if (hi <= 0.0) return g;
  for (int r = 0; r < b; ++r) {
    for (int f = 0; f < b; ++f) {
      const int row = b - 1 - r;
      g.data[static_cast<std::size_t>(row) * b + f] =
          static_cast<std::uint8_t>(std::lround(255.0 * std::log1p(h.at(r, f)) / hi));
    }
  }
  return g;
}

void export_histogram(const JointHistogram& h, const std::filesystem::path& prefix) {
  write_text(prefix.string() + ".csv", histogram_csv(h));
  write_pgm8(prefix.string() + ".pgm", histogram_heatmap(h));
}

std::string rsv_table(const SaliencyMap& s, const RsvField& field) {
  std::string out;
  char buf[128];
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const auto v = field.at(x, y);
      if (!v) continue;
      std::snprintf(buf, sizeof(buf), "%d %d %.9f %.9f %.9g\n", x, y, v->x, v->y, s(x, y));
      out += buf;
    }
  }
  return out;
}

void export_saliency(const SaliencyMap& s, const std::filesystem::path& path) {
  write_image_normalized(path, s.values());
}

void export_jsm(const JointSaliencyMap& jsm, const std::filesystem::path& path) {
  write_image_normalized(path, jsm.to_image());
}

}  // namespace jsmreg
