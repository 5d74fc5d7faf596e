#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jsmreg/jsmreg.hpp"

namespace fs = std::filesystem;
using namespace jsmreg;

namespace {

struct ConfigOptions {
  std::string file;
  std::vector<std::string> settings;  // key=value
  std::string measure;
  std::string interpolation;
  int bins = 0;
};

void add_config_options(CLI::App* app, ConfigOptions& o) {
  app->add_option("-c,--config", o.file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app->add_option("-s,--set", o.settings, "Override a setting, key=value (repeatable)");
  app->add_option("-m,--measure", o.measure, "jmi | nmi");
  app->add_option("-i,--interpolation", o.interpolation, "nearest | bilinear | pv");
  app->add_option("-b,--bins", o.bins, "Histogram bins");
}

// File first, then --set, then the dedicated flags.
RegistrationConfig build_config(const ConfigOptions& o) {
  RegistrationConfig cfg;
  if (!o.file.empty()) cfg = config_from_text(read_text(o.file));
  for (const std::string& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value: " + kv);
    apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.measure.empty()) apply_setting(cfg, "measure", o.measure);
  if (!o.interpolation.empty()) apply_setting(cfg, "interpolation", o.interpolation);
  if (o.bins != 0) apply_setting(cfg, "bins", std::to_string(o.bins));
  cfg.validate();
  return cfg;
}

RigidTransform to_transform(const std::vector<double>& v) {
  if (v.empty()) return RigidTransform::identity();
  if (v.size() != 3) throw std::invalid_argument("transform needs tx,ty,beta");
  return {v[0], v[1], v[2]};
}

RigidTransform read_truth(const fs::path& path) {
  std::istringstream in(read_text(path));
  RigidTransform t;
  if (!(in >> t.tx >> t.ty >> t.beta)) {
    throw std::runtime_error("malformed truth file: " + path.string());
  }
  return t;
}

std::string format_transform(const RigidTransform& t) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f", t.tx, t.ty, t.beta);
  return buf;
}

Gray8 mask_image(const Image& img) {
  Gray8 g{img.width(), img.height(), {}};
  g.data.resize(static_cast<std::size_t>(img.width()) * img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      g.data[static_cast<std::size_t>(y) * img.width() + x] = img.valid(x, y) ? 255 : 0;
    }
  }
  return g;
}

std::vector<RegistrationMeasure> parse_measures(const std::string& list) {
  std::vector<RegistrationMeasure> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_measure(item));
  }
  if (out.empty()) throw std::invalid_argument("no measures given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigid 2D registration with joint-saliency-weighted mutual information"};
  app.require_subcommand(1);

  // register
  ConfigOptions reg_cfg;
  std::string reg_ref, reg_flt, reg_json, reg_overlay, reg_truth;
  std::vector<double> reg_start;
  auto* reg = app.add_subcommand("register", "Register a floating image onto a reference");
  reg->add_option("reference", reg_ref)->required()->check(CLI::ExistingFile);
  reg->add_option("floating", reg_flt)->required()->check(CLI::ExistingFile);
  reg->add_option("--start", reg_start, "Start transform tx ty beta")->expected(3);
  reg->add_option("--json", reg_json, "Write a JSON report");
  reg->add_option("--overlay", reg_overlay, "Write an edge overlay (.png or .ppm)");
  reg->add_option("--truth", reg_truth, "Truth file (tx ty beta); prints the error")
      ->check(CLI::ExistingFile);
  add_config_options(reg, reg_cfg);

  // surface
  ConfigOptions surf_cfg;
  std::string surf_ref, surf_flt, surf_out;
  std::vector<double> surf_center;
  double surf_range = 10.0, surf_step = 1.0;
  auto* surf = app.add_subcommand("surface", "Export a translation similarity surface");
  surf->add_option("reference", surf_ref)->required()->check(CLI::ExistingFile);
  surf->add_option("floating", surf_flt)->required()->check(CLI::ExistingFile);
  surf->add_option("-o,--out", surf_out, "Output prefix")->required();
  surf->add_option("--center", surf_center, "Grid center tx ty beta")->expected(3);
  surf->add_option("--range", surf_range, "Half-width in pixels");
  surf->add_option("--step", surf_step, "Grid step in pixels");
  add_config_options(surf, surf_cfg);

  // synth
  std::string synth_out;
  std::vector<std::string> synth_keys;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic test pair");
  synth->add_option("prefix", synth_out, "Output prefix")->required();
  synth->add_option("spec", synth_keys,
                    "Case tokens, e.g. seed=3 tx=4 ty=-2 beta=5 outlier=80x80@40,60");

  // bench
  ConfigOptions bench_cfg;
  std::string bench_suite, bench_generate, bench_csv_path, bench_table_path;
  std::string bench_measures = "jmi,nmi";
  int bench_count = 10, bench_size = 256, bench_threads = 1;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  auto* suite_opt = bench->add_option("--suite", bench_suite, "Suite file")
                        ->check(CLI::ExistingFile);
  bench->add_option("--generate", bench_generate, "clean | outlier")
      ->excludes(suite_opt)
      ->check(CLI::IsMember({"clean", "outlier"}));
  bench->add_option("--count", bench_count, "Generated cases");
  bench->add_option("--seed", bench_seed, "Generated suite seed");
  bench->add_option("--size", bench_size, "Generated image size");
  bench->add_option("--measures", bench_measures, "Comma-separated measures");
  bench->add_option("--csv", bench_csv_path, "CSV output (default stdout)");
  bench->add_option("--table", bench_table_path, "Text table output");
  bench->add_option("-j,--threads", bench_threads, "Parallel cases");
  add_config_options(bench, bench_cfg);

  // saliency
  std::string sal_image, sal_out, sal_rsv;
  int sal_levels = 0;
  double sal_threshold = RegistrationConfig{}.saliency_threshold;
  auto* sal = app.add_subcommand("saliency", "Export the multiscale saliency map and RSVs");
  sal->add_option("image", sal_image)->required()->check(CLI::ExistingFile);
  sal->add_option("-o,--out", sal_out, "Saliency image")->required();
  sal->add_option("--rsv", sal_rsv, "RSV table output");
  sal->add_option("--levels", sal_levels, "Pyramid levels (0 = auto)");
  sal->add_option("--threshold", sal_threshold, "Fraction of the maximum");

  // jsm
  ConfigOptions jsm_cfg;
  std::string jsm_ref, jsm_flt, jsm_out, jsm_hist;
  std::vector<double> jsm_t;
  auto* jsm = app.add_subcommand("jsm", "Export the joint saliency map at a transform");
  jsm->add_option("reference", jsm_ref)->required()->check(CLI::ExistingFile);
  jsm->add_option("floating", jsm_flt)->required()->check(CLI::ExistingFile);
  jsm->add_option("-o,--out", jsm_out, "JSM image")->required();
  jsm->add_option("--transform", jsm_t, "tx ty beta")->expected(3);
  jsm->add_option("--histogram", jsm_hist, "Weighted histogram prefix (.csv, .pgm)");
  add_config_options(jsm, jsm_cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reg) {
      const RegistrationConfig cfg = build_config(reg_cfg);
      const Image ref = read_image(reg_ref);
      const Image flt = read_image(reg_flt);
      const RegistrationResult r = register_images(ref, flt, to_transform(reg_start), cfg);
      std::cout << result_record(r) << "\n";
      if (!reg_json.empty()) write_text(reg_json, result_json(r, cfg));
      if (!reg_overlay.empty()) write_rgb(reg_overlay, export_overlay(ref, flt, r.transform).image);
      if (!reg_truth.empty()) {
        const RigidTransform truth = read_truth(reg_truth);
        std::cout << "error " << std::abs(r.transform.tx - truth.tx) << " "
                  << std::abs(r.transform.ty - truth.ty) << " "
                  << std::abs(r.transform.beta - truth.beta) << "\n";
      }
    } else if (*surf) {
      const RegistrationConfig cfg = build_config(surf_cfg);
      const SimilaritySurface s =
          similarity_surface(read_image(surf_ref), read_image(surf_flt),
                             to_transform(surf_center), cfg, surf_range, surf_step);
      export_surface(s, surf_out);
      if (const auto best = surface_argmax(s)) {
        std::cout << "argmax " << s.offset((*best)[0]) << " " << s.offset((*best)[1])
                  << " local_maxima " << count_strict_local_maxima(s) << "\n";
      } else {
        std::cerr << "surface has no valid samples\n";
        return 1;
      }
    } else if (*synth) {
      std::string line;
      for (const std::string& k : synth_keys) line += k + " ";
      const auto cases = parse_suite(line.empty() ? "id=case" : line);
      if (cases.size() != 1) throw std::invalid_argument("synth expects one case");
      const SyntheticPair pair = generate_case(cases.front());
      write_image(synth_out + "_ref.pgm", pair.reference);
      write_image(synth_out + "_flt.pgm", pair.floating);
      write_pgm8(synth_out + "_flt_mask.pgm", mask_image(pair.floating));
      write_text(synth_out + "_truth.txt", format_transform(pair.truth) + "\n");
    } else if (*bench) {
      const RegistrationConfig cfg = build_config(bench_cfg);
      std::vector<SyntheticCase> suite;
      if (!bench_suite.empty()) {
        suite = parse_suite(read_text(bench_suite));
      } else {
        const SuiteKind kind = bench_generate == "outlier" ? SuiteKind::kOutlier : SuiteKind::kClean;
        suite = make_suite(kind, bench_count, bench_seed, bench_size);
      }
      const auto records = run_benchmark(suite, parse_measures(bench_measures), cfg, bench_threads);
      const std::string csv = bench_csv(records);
      if (bench_csv_path.empty()) {
        std::cout << csv;
      } else {
        write_text(bench_csv_path, csv);
      }
      if (!bench_table_path.empty()) write_text(bench_table_path, bench_table(records));
      for (const BenchRecord& r : records) {
        if (!r.ok) {
          std::cerr << r.case_id << ": " << r.message << "\n";
          return 1;
        }
      }
    } else if (*sal) {
      const Image img = read_image(sal_image);
      const int levels = sal_levels > 0 ? sal_levels : default_pyramid_levels(img.width(), img.height());
      const RsvResult res = build_rsv_field(img, levels, sal_threshold);
      export_saliency(res.saliency, sal_out);
      if (!sal_rsv.empty()) write_text(sal_rsv, rsv_table(res.saliency, res.field));
      std::cout << "valid_rsv " << res.field.valid_count() << "\n";
    } else if (*jsm) {
      const RegistrationConfig cfg = build_config(jsm_cfg);
      const Image ref = read_image(jsm_ref);
      const Image flt = read_image(jsm_flt);
      const RigidTransform t = to_transform(jsm_t);
      const int levels = default_pyramid_levels(ref.width(), ref.height());
      const RsvResult r = build_rsv_field(ref, levels, cfg.saliency_threshold);
      const RsvResult f = build_rsv_field(flt, levels, cfg.saliency_threshold);
      const JointSaliencyMap map =
          compute_jsm(r.field, f.field, t, cfg.cosine_policy, cfg.rsv_lookup);
      export_jsm(map, jsm_out);
      if (!jsm_hist.empty()) {
        export_histogram(build_weighted_histogram(ref, flt, t, map, cfg.interpolation, cfg.bins),
                         jsm_hist);
      }
      std::cout << "total_weight " << map.total_weight() << " overlap " << map.overlap_count()
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
