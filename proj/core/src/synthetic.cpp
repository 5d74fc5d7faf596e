#include "jsmreg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "jsmreg/interpolate.hpp"

namespace jsmreg {

DeterministicRng::DeterministicRng(std::uint64_t seed) : engine_(seed) {}

double DeterministicRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int DeterministicRng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

double DeterministicRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

void SyntheticCase::validate() const {
  if (width < 8 || height < 8) {
    throw std::invalid_argument("SyntheticCase: image must be at least 8x8");
  }
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("SyntheticCase: noise < 0");
  if (!(gain > 0.0)) throw std::invalid_argument("SyntheticCase: gain must be > 0");
  if (outlier.enabled) {
    if (outlier.width <= 0 || outlier.height <= 0) {
      throw std::invalid_argument("SyntheticCase: empty outlier patch");
    }
    const double area = static_cast<double>(outlier.width) * outlier.height;
    if (area > 0.5 * width * height) {
      throw std::invalid_argument("SyntheticCase: outlier covers more than 50% of the image");
    }
  }
}

namespace {

enum class ShapeKind { kRect, kEllipse, kBar };

struct Shape {
  ShapeKind kind;
  double cx, cy, a, b, angle, offset;

  bool contains(double x, double y) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double u = c * (x - cx) + s * (y - cy);
    const double v = -s * (x - cx) + c * (y - cy);
    if (kind == ShapeKind::kEllipse) return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
    return std::abs(u) <= a && std::abs(v) <= b;
  }
};

struct Blob {
  double cx, cy, sigma, amplitude;
};

// Scene rendered over a canvas that extends `margin` pixels beyond the image
// on every side, so moderate transforms resample real content.
Image render_canvas(std::uint64_t seed, int width, int height, int margin) {
  DeterministicRng rng(seed);
  const int cw = width + 2 * margin;
  const int ch = height + 2 * margin;
  const double area = static_cast<double>(cw) * ch;

  const double base = rng.uniform(0.3, 0.5);
  const double gx = rng.uniform(-0.15, 0.15);
  const double gy = rng.uniform(-0.15, 0.15);

  std::vector<Blob> blobs(static_cast<std::size_t>(std::max(4.0, area / 5000.0)));
  for (Blob& b : blobs) {
    b.cx = rng.uniform(0, cw);
    b.cy = rng.uniform(0, ch);
    b.sigma = rng.uniform(4.0, 16.0);
    b.amplitude = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.1, 0.3);
  }
  std::vector<Shape> shapes(static_cast<std::size_t>(std::max(6.0, area / 2500.0)));
  for (Shape& s : shapes) {
    const double pick = rng.uniform();
    s.kind = pick < 0.45 ? ShapeKind::kRect
                         : (pick < 0.8 ? ShapeKind::kEllipse : ShapeKind::kBar);
    s.cx = rng.uniform(0, cw);
    s.cy = rng.uniform(0, ch);
    if (s.kind == ShapeKind::kBar) {
      s.a = rng.uniform(10.0, 40.0);
      s.b = rng.uniform(1.0, 2.5);
    } else {
      s.a = rng.uniform(4.0, 22.0);
      s.b = rng.uniform(4.0, 22.0);
    }
    s.angle = rng.uniform(0.0, std::numbers::pi);
    s.offset = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.12, 0.3);
  }

  Image canvas(cw, ch);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      double v = base + gx * x / cw + gy * y / ch;
      for (const Blob& b : blobs) {
        const double dx = x - b.cx;
        const double dy = y - b.cy;
        const double r2 = dx * dx + dy * dy;
        if (r2 < 16.0 * b.sigma * b.sigma) {
          v += b.amplitude * std::exp(-r2 / (2.0 * b.sigma * b.sigma));
        }
      }
      for (const Shape& s : shapes) {
        if (s.contains(x, y)) v += s.offset;
      }
      canvas(x, y) = v;
    }
  }
  // Stretch into [0.05, 0.85], leaving headroom for illumination gain.
  const double lo = canvas.min();
  const double hi = canvas.max();
  for (double& v : canvas.pixels()) {
    v = hi > lo ? 0.05 + 0.8 * (v - lo) / (hi - lo) : 0.45;
  }
  return canvas;
}

int canvas_margin(int width, int height) { return std::max(width, height) / 4 + 16; }

Image crop(const Image& canvas, int margin, int width, int height) {
  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out(x, y) = canvas(x + margin, y + margin);
  }
  return out;
}

void paint_outlier(Image& img, const OutlierSpec& o) {
  for (int y = std::max(o.y, 0); y < std::min(o.y + o.height, img.height()); ++y) {
    for (int x = std::max(o.x, 0); x < std::min(o.x + o.width, img.width()); ++x) {
      double v = o.intensity;
      if (o.style == OutlierStyle::kStripes && ((x - o.x) / 6) % 2 == 1) v *= 0.5;
      img(x, y) = v;
    }
  }
}

void add_noise(Image& img, DeterministicRng& rng, double sigma) {
  if (sigma <= 0.0) return;
  for (double& v : img.pixels()) v += sigma * rng.normal();
}

void clamp_unit(Image& img) {
  for (double& v : img.pixels()) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

Image render_texture(std::uint64_t seed, int width, int height) {
  const int margin = canvas_margin(width, height);
  return crop(render_canvas(seed, width, height, margin), margin, width, height);
}

SyntheticPair generate_case(const SyntheticCase& spec) {
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  const int margin = canvas_margin(w, h);
  const Image canvas = render_canvas(spec.seed, w, h, margin);

  SyntheticPair pair;
  pair.truth = spec.truth;
  pair.reference = crop(canvas, margin, w, h);

  // flt(q) = ref(truth^-1(q)), so flt(truth(p)) = ref(p).
  const PointMapper back(spec.truth.inverse(), image_center(w, h));
  Image flt(w, h);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 1);
  bool any_invalid = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 p = back({double(x), double(y)});
      const auto v = sample_bilinear(canvas, {p.x + margin, p.y + margin});
      if (v) {
        flt(x, y) = *v;
      } else {
        mask[static_cast<std::size_t>(y) * w + x] = 0;
        any_invalid = true;
      }
    }
  }

  Image& lit = spec.illumination_target == ImageRole::kReference ? pair.reference : flt;
  if (spec.outlier.enabled) {
    paint_outlier(spec.outlier.target == ImageRole::kReference ? pair.reference : flt,
                  spec.outlier);
  }
  if (spec.gain != 1.0 || spec.bias != 0.0) {
    for (double& v : lit.pixels()) v = spec.gain * v + spec.bias;
  }
  DeterministicRng noise(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  add_noise(pair.reference, noise, spec.noise_sigma);
  add_noise(flt, noise, spec.noise_sigma);
  clamp_unit(pair.reference);
  clamp_unit(flt);
  if (any_invalid) {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) flt.pixels()[i] = 0.0;
    }
    flt.set_mask(std::move(mask));
  }
  pair.floating = std::move(flt);
  return pair;
}

std::vector<SyntheticCase> make_suite(SuiteKind kind, int count, std::uint64_t seed,
                                      int size) {
  DeterministicRng rng(seed);
  std::vector<SyntheticCase> suite;
  for (int i = 0; i < count; ++i) {
    SyntheticCase c;
    c.id = (kind == SuiteKind::kClean ? "clean" : "outlier") + std::to_string(i + 1);
    c.seed = seed * 1000 + static_cast<std::uint64_t>(i) + 1;
    c.width = size;
    c.height = size;
    c.truth = {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0), rng.uniform(-8.0, 8.0)};
    c.noise_sigma = 0.01;
    if (kind == SuiteKind::kOutlier) {
      const double fraction = rng.uniform(0.09, 0.16);
      const double aspect = rng.uniform(0.8, 1.25);
      const double side = std::sqrt(fraction * size * size);
      c.outlier.enabled = true;
      c.outlier.width = std::clamp(static_cast<int>(std::lround(side * std::sqrt(aspect))), 1, size);
      c.outlier.height = std::clamp(static_cast<int>(std::lround(side / std::sqrt(aspect))), 1, size);
      const double total = static_cast<double>(size) * size;
      while (c.outlier.height > 1 && c.outlier.width * c.outlier.height > 0.16 * total)
        --c.outlier.height;
      while (c.outlier.height < size && c.outlier.width * c.outlier.height < 0.09 * total)
        ++c.outlier.height;
      c.outlier.x = rng.uniform_int(0, size - c.outlier.width);
      c.outlier.y = rng.uniform_int(0, size - c.outlier.height);
      c.outlier.intensity = 0.95;
      c.outlier.style = OutlierStyle::kSolid;
      c.outlier.target = ImageRole::kFloating;
      c.gain = 1.2;
      c.illumination_target = ImageRole::kFloating;
    }
    suite.push_back(c);
  }
  return suite;
}

namespace {

std::string role_name(ImageRole r) { return r == ImageRole::kReference ? "ref" : "flt"; }

ImageRole parse_role(const std::string& s) {
  if (s == "ref") return ImageRole::kReference;
  if (s == "flt") return ImageRole::kFloating;
  throw std::invalid_argument("suite: expected ref or flt, got " + s);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("suite: bad value for " + key + ": " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d)) throw std::invalid_argument("suite: " + key + " must be an integer");
  return static_cast<int>(d);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<SyntheticCase> parse_suite(const std::string& text) {
  std::vector<SyntheticCase> suite;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string tok;
    SyntheticCase c;
    c.id = "case" + std::to_string(suite.size() + 1);
    bool any = false;
    while (tokens >> tok) {
      any = true;
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("suite line " + std::to_string(lineno) +
                                    ": expected key=value, got " + tok);
      }
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "id") c.id = val;
      else if (key == "seed") c.seed = std::stoull(val);
      else if (key == "width") c.width = parse_int(key, val);
      else if (key == "height") c.height = parse_int(key, val);
      else if (key == "size") c.width = c.height = parse_int(key, val);
      else if (key == "tx") c.truth.tx = parse_double(key, val);
      else if (key == "ty") c.truth.ty = parse_double(key, val);
      else if (key == "beta") c.truth.beta = parse_double(key, val);
      else if (key == "noise") c.noise_sigma = parse_double(key, val);
      else if (key == "gain") c.gain = parse_double(key, val);
      else if (key == "bias") c.bias = parse_double(key, val);
      else if (key == "gain_in") c.illumination_target = parse_role(val);
      else if (key == "outlier") {
        int w = 0, h = 0, x = 0, y = 0;
        if (std::sscanf(val.c_str(), "%dx%d@%d,%d", &w, &h, &x, &y) != 4) {
          throw std::invalid_argument("suite: outlier must be WxH@X,Y, got " + val);
        }
        c.outlier.enabled = true;
        c.outlier.width = w;
        c.outlier.height = h;
        c.outlier.x = x;
        c.outlier.y = y;
      } else if (key == "outlier_value") c.outlier.intensity = parse_double(key, val);
      else if (key == "outlier_style") {
        if (val == "solid") c.outlier.style = OutlierStyle::kSolid;
        else if (val == "stripes") c.outlier.style = OutlierStyle::kStripes;
        else throw std::invalid_argument("suite: unknown outlier_style " + val);
      } else if (key == "outlier_in") c.outlier.target = parse_role(val);
      else {
        throw std::invalid_argument("suite line " + std::to_string(lineno) +
                                    ": unknown key " + key);
      }
    }
    if (any) {
      c.validate();
      suite.push_back(c);
    }
  }
  return suite;
}

std::string format_case(const SyntheticCase& c) {
  std::string s = "id=" + c.id + " seed=" + std::to_string(c.seed) +
                  " width=" + std::to_string(c.width) +
                  " height=" + std::to_string(c.height) + " tx=" + fmt_double(c.truth.tx) +
                  " ty=" + fmt_double(c.truth.ty) + " beta=" + fmt_double(c.truth.beta) +
                  " noise=" + fmt_double(c.noise_sigma) + " gain=" + fmt_double(c.gain) +
                  " bias=" + fmt_double(c.bias) +
                  " gain_in=" + role_name(c.illumination_target);
  if (c.outlier.enabled) {
    s += " outlier=" + std::to_string(c.outlier.width) + "x" +
         std::to_string(c.outlier.height) + "@" + std::to_string(c.outlier.x) + "," +
         std::to_string(c.outlier.y) + " outlier_value=" + fmt_double(c.outlier.intensity) +
         " outlier_style=" +
         (c.outlier.style == OutlierStyle::kSolid ? "solid" : "stripes") +
         " outlier_in=" + role_name(c.outlier.target);
  }
  return s;
}

std::string format_suite(const std::vector<SyntheticCase>& suite) {
  std::string out;
  for (const auto& c : suite) out += format_case(c) + "\n";
  return out;
}

}  // namespace jsmreg
