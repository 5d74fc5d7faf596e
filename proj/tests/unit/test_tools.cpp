#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "jsmreg/benchmark_suite.hpp"
#include "jsmreg/canny.hpp"
#include "jsmreg/config.hpp"
#include "jsmreg/exports.hpp"
#include "jsmreg/image_io.hpp"
#include "jsmreg/saliency.hpp"
#include "jsmreg/synthetic.hpp"

using namespace jsmreg;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / ("jsmreg_tools_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

bool same_pixels(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.pixels()[i] != b.pixels()[i]) return false;
  return true;
}

SimilaritySurface grid(int size, double range, double step) {
  SimilaritySurface s;
  s.size = size;
  s.range = range;
  s.step = step;
  s.values.assign(static_cast<std::size_t>(size) * size, 0.0);
  return s;
}

}  // namespace

TEST(RngTest, Reproducible) {
  DeterministicRng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int k = a.uniform_int(-3, 3);
    EXPECT_EQ(k, b.uniform_int(-3, 3));
    EXPECT_GE(k, -3);
    EXPECT_LE(k, 3);
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(SyntheticTest, IdentityCaseIsExactCopy) {
  SyntheticCase c;
  c.width = 80;
  c.height = 60;
  const SyntheticPair p = generate_case(c);
  EXPECT_TRUE(same_pixels(p.reference, p.floating));
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 80; ++x) EXPECT_TRUE(p.floating.valid(x, y));
}

TEST(SyntheticTest, SameSeedSamePair) {
  SyntheticCase c;
  c.seed = 99;
  c.truth = {3.2, -1.5, 6};
  c.noise_sigma = 0.02;
  c.gain = 1.2;
  c.outlier = {true, 10, 20, 30, 40, 0.9, OutlierStyle::kStripes, ImageRole::kFloating};
  const SyntheticPair a = generate_case(c);
  const SyntheticPair b = generate_case(c);
  EXPECT_TRUE(same_pixels(a.reference, b.reference));
  EXPECT_TRUE(same_pixels(a.floating, b.floating));
  c.seed = 100;
  EXPECT_FALSE(same_pixels(a.reference, generate_case(c).reference));
}

TEST(SyntheticTest, OutlierArea) {
  SyntheticCase c;
  c.width = c.height = 200;
  c.outlier = {true, 50, 70, 60, 60, 0.95, OutlierStyle::kSolid, ImageRole::kFloating};
  const SyntheticPair p = generate_case(c);
  int changed = 0;
  for (int y = 0; y < 200; ++y)
    for (int x = 0; x < 200; ++x) changed += p.reference(x, y) != p.floating(x, y);
  EXPECT_EQ(changed, 3600);
  EXPECT_DOUBLE_EQ(changed / (200.0 * 200.0), 0.09);
  EXPECT_EQ(p.floating(60, 80), 0.95);
}

TEST(SyntheticTest, RejectsLargeOutlier) {
  SyntheticCase c;
  c.width = c.height = 100;
  c.outlier = {true, 0, 0, 80, 70, 0.9, OutlierStyle::kSolid, ImageRole::kFloating};
  EXPECT_THROW(generate_case(c), std::invalid_argument);
  c.outlier.height = 62;
  EXPECT_NO_THROW(generate_case(c));
}

TEST(SyntheticTest, FloatingIsResampledReference) {
  SyntheticCase c;
  c.width = c.height = 96;
  c.truth = {2.0, -3.0, 0.0};
  const SyntheticPair p = generate_case(c);
  // Whole-pixel translation: flt(x + 2, y - 3) = ref(x, y).
  for (int y = 3; y < 96; ++y)
    for (int x = 0; x < 94; ++x) EXPECT_DOUBLE_EQ(p.floating(x + 2, y - 3), p.reference(x, y));
}

TEST(SyntheticTest, IlluminationGain) {
  SyntheticCase c;
  c.width = c.height = 64;
  c.gain = 1.2;
  const SyntheticPair p = generate_case(c);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      EXPECT_NEAR(p.floating(x, y), std::min(1.0, 1.2 * p.reference(x, y)), 1e-12);
}

TEST(SyntheticTest, SuitesRespectRanges) {
  const auto clean = make_suite(SuiteKind::kClean, 10, 7);
  const auto outl = make_suite(SuiteKind::kOutlier, 10, 7);
  ASSERT_EQ(clean.size(), 10u);
  for (const auto& c : clean) {
    EXPECT_LE(std::abs(c.truth.tx), 10.0);
    EXPECT_LE(std::abs(c.truth.ty), 10.0);
    EXPECT_LE(std::abs(c.truth.beta), 8.0);
    EXPECT_FALSE(c.outlier.enabled);
    EXPECT_EQ(c.width, 256);
  }
  for (const auto& c : outl) {
    const double frac = double(c.outlier.width) * c.outlier.height / (c.width * c.height);
    EXPECT_GE(frac, 0.09);
    EXPECT_LE(frac, 0.16);
    EXPECT_DOUBLE_EQ(c.gain, 1.2);
    EXPECT_TRUE(c.outlier.enabled);
  }
}

TEST(SuiteFormatTest, RoundTrip) {
  const auto suite = make_suite(SuiteKind::kOutlier, 4, 3, 128);
  const auto back = parse_suite(format_suite(suite));
  ASSERT_EQ(back.size(), suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i) {
    EXPECT_EQ(format_case(back[i]), format_case(suite[i]));
    EXPECT_TRUE(same_pixels(generate_case(back[i]).floating, generate_case(suite[i]).floating));
  }
}

TEST(SuiteFormatTest, ParsesCommentsAndRejectsGarbage) {
  const auto s = parse_suite("# header\n\nid=a seed=4 size=64 tx=1.5 outlier=10x12@3,4 # tail\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].id, "a");
  EXPECT_EQ(s[0].width, 64);
  EXPECT_DOUBLE_EQ(s[0].truth.tx, 1.5);
  EXPECT_TRUE(s[0].outlier.enabled);
  EXPECT_EQ(s[0].outlier.height, 12);
  EXPECT_THROW(parse_suite("id=a colour=red"), std::invalid_argument);
  EXPECT_THROW(parse_suite("outlier=10by12"), std::invalid_argument);
  EXPECT_THROW(parse_suite("tx=abc"), std::invalid_argument);
}

TEST(BenchmarkTest, TrivialCase) {
  SyntheticCase c;
  c.id = "trivial";
  c.width = c.height = 96;
  const auto records = run_benchmark({c}, {RegistrationMeasure::kJMI}, {});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].ok);
  for (double e : records[0].error) EXPECT_LT(e, 0.1);
  EXPECT_GT(records[0].evaluations, 0);
}

TEST(BenchmarkTest, FailuresAreRecorded) {
  SyntheticCase bad;
  bad.id = "bad";
  bad.width = 4;
  SyntheticCase good;
  good.id = "good";
  good.width = good.height = 64;
  const auto records = run_benchmark({bad, good}, {RegistrationMeasure::kJMI}, {});
  ASSERT_EQ(records.size(), 2u);
  EXPECT_FALSE(records[0].ok);
  EXPECT_FALSE(records[0].message.empty());
  EXPECT_TRUE(records[1].ok);
  EXPECT_NE(bench_csv(records).find("bad,jmi"), std::string::npos);
  EXPECT_NE(bench_table(records).find("failed"), std::string::npos);
  EXPECT_THROW(run_benchmark({}, {RegistrationMeasure::kJMI}, {}), std::invalid_argument);
}

TEST(BenchmarkTest, ParallelMatchesSerial) {
  const auto suite = make_suite(SuiteKind::kClean, 3, 5, 64);
  const std::vector<RegistrationMeasure> m{RegistrationMeasure::kJMI,
                                           RegistrationMeasure::kNmiBaseline};
  const std::string a = bench_csv(run_benchmark(suite, m, {}, 1));
  const std::string b = bench_csv(run_benchmark(suite, m, {}, 3));
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 7);
}

TEST(ConfigTest, ParsesAndApplies) {
  const RegistrationConfig cfg = config_from_text(
      "# comment\n[registration]\nmeasure = nmi\ninterpolation = \"bilinear\"\n"
      "bins = 32\nlevels=3\njsm_recompute = 10\ncosine = clamp\nstep_beta = 2.5\n"
      "rsv_lookup = bilinear\nmin_bins = 8\n");
  EXPECT_EQ(cfg.measure, RegistrationMeasure::kNmiBaseline);
  EXPECT_EQ(cfg.interpolation, Interpolation::kBilinear);
  EXPECT_EQ(cfg.bins, 32);
  EXPECT_EQ(cfg.pyramid_levels, 3);
  EXPECT_EQ(cfg.jsm_recompute_interval, 10);
  EXPECT_EQ(cfg.cosine_policy, CosinePolicy::kClampNegative);
  EXPECT_EQ(cfg.optimizer.initial_step[2], 2.5);
  EXPECT_EQ(cfg.rsv_lookup, RsvLookup::kBilinearWeight);
  EXPECT_EQ(cfg.min_bins, 8);
}

TEST(ConfigTest, RejectsBadInput) {
  EXPECT_THROW(config_from_text("no equals sign\n"), std::invalid_argument);
  EXPECT_THROW(config_from_text("unknown = 3\n"), std::invalid_argument);
  EXPECT_THROW(config_from_text("bins = many\n"), std::invalid_argument);
  EXPECT_THROW(config_from_text("cosine = raw\n"), std::invalid_argument);
}

TEST(SurfaceExportTest, CsvShapeAndConsistency) {
  SimilaritySurface s = grid(21, 10, 1);
  for (int i = 0; i < 441; ++i) s.values[i] = std::sin(i * 0.37);
  s.values[5] = std::nullopt;
  s.values[200] = 5.0;
  const std::string csv = surface_csv(s);
  std::istringstream in(csv);
  std::string line;
  int rows = 0, cols = 0;
  while (std::getline(in, line)) {
    ++rows;
    cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
    EXPECT_EQ(cols, 21);
  }
  EXPECT_EQ(rows, 21);
  EXPECT_NE(csv.find("nan"), std::string::npos);

  const Gray8 heat = surface_heatmap(s);
  ASSERT_EQ(heat.width, 21);
  const auto brightest = std::max_element(heat.data.begin(), heat.data.end()) - heat.data.begin();
  EXPECT_EQ(brightest, 200);
  EXPECT_EQ(heat.data[5], 0);
  const Gray8 mask = surface_missing_mask(s);
  EXPECT_EQ(mask.data[5], 255);
  EXPECT_EQ(mask.data[6], 0);
}

TEST(SurfaceExportTest, ConstantIsMidGray) {
  SimilaritySurface s = grid(5, 2, 1);
  for (auto& v : s.values) v = 1.7;
  for (auto v : surface_heatmap(s).data) EXPECT_EQ(v, 128);
}

TEST(SurfaceExportTest, WritesFiles) {
  SimilaritySurface s = grid(3, 1, 1);
  const fs::path prefix = temp_dir() / "surf";
  export_surface(s, prefix);
  EXPECT_TRUE(fs::exists(prefix.string() + ".csv"));
  EXPECT_EQ(read_pgm8(prefix.string() + ".pgm").width, 3);
  EXPECT_TRUE(fs::exists(prefix.string() + "_missing.pgm"));
}

TEST(HistogramExportTest, CsvAndHeatmap) {
  const JointHistogram h = JointHistogram::from_entries(2, {4, 0, 0, 1});
  EXPECT_EQ(histogram_csv(h), "4,0\n0,1\n");
  const Gray8 g = histogram_heatmap(h);
  // Reference bin 0 is drawn on the bottom row.
  EXPECT_EQ(g.data[2], 255);
  EXPECT_EQ(g.data[0], 0);
  EXPECT_GT(g.data[1], 0);
}

TEST(RsvExportTest, Table) {
  Image img(32, 32, 0.0);
  for (int y = 0; y < 32; ++y)
    for (int x = 16; x < 32; ++x) img(x, y) = 1.0;
  const RsvResult r = build_rsv_field(img, 1);
  const std::string t = rsv_table(r.saliency, r.field);
  EXPECT_EQ(static_cast<std::size_t>(std::count(t.begin(), t.end(), '\n')),
            r.field.valid_count());
}

TEST(CannyTest, BlankImageHasNoEdges) {
  EXPECT_EQ(canny(Image(40, 30, 0.5)).count(), 0u);
}

TEST(CannyTest, StepEdge) {
  Image img(40, 40, 0.0);
  for (int y = 0; y < 40; ++y)
    for (int x = 20; x < 40; ++x) img(x, y) = 1.0;
  const EdgeMap e = canny(img);
  EXPECT_GT(e.count(), 30u);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x)
      if (e.at(x, y)) {
        EXPECT_TRUE(x == 19 || x == 20) << x;
      }
}

TEST(OverlayTest, IdenticalImagesCoincide) {
  SyntheticCase c;
  c.width = c.height = 64;
  const Image img = generate_case(c).reference;
  const Overlay o = export_overlay(img, img, {});
  ASSERT_EQ(o.reference_edges.edges, o.floating_edges.edges);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (o.reference_edges.at(x, y)) {
        const std::uint8_t* px = o.image.at(x, y);
        EXPECT_EQ(px[0], 255);
        EXPECT_EQ(px[1], 255);
        EXPECT_EQ(px[2], 0);
      }
}

TEST(OverlayTest, TranslationOffsetsGreenEdges) {
  SyntheticCase c;
  c.width = c.height = 96;
  c.truth = {5, 0, 0};
  const SyntheticPair p = generate_case(c);
  // Identity misregisters by 5 px: green edges sit 5 px from the red ones.
  const Overlay o = export_overlay(p.reference, p.floating, {});
  int matched = 0, total = 0;
  for (int y = 0; y < 96; ++y)
    for (int x = 10; x < 86; ++x)
      if (o.reference_edges.at(x, y)) {
        ++total;
        matched += o.floating_edges.at(x + 5, y);
      }
  EXPECT_GT(matched, 0.9 * total);
}

TEST(OverlayTest, AgreementDropsWhenMisregistered) {
  SyntheticCase c;
  c.width = c.height = 128;
  c.truth = {3.3, -2.1, 4};
  const SyntheticPair p = generate_case(c);
  const Overlay good = export_overlay(p.reference, p.floating, p.truth);
  const Overlay bad = export_overlay(p.reference, p.floating, {p.truth.tx + 5, p.truth.ty, p.truth.beta});
  EXPECT_GT(edge_agreement(good.reference_edges, good.floating_edges, 1),
            edge_agreement(bad.reference_edges, bad.floating_edges, 1));
}

TEST(OverlayTest, WritesPngAndPpm) {
  const fs::path dir = temp_dir();
  RgbImage img(4, 3);
  img.at(1, 1)[0] = 200;
  EXPECT_NO_THROW(write_rgb(dir / "o.png", img));
  EXPECT_NO_THROW(write_rgb(dir / "o.ppm", img));
  EXPECT_GT(fs::file_size(dir / "o.ppm"), 36u);
}
