#pragma once

#include <filesystem>
#include <string>

#include "jsmreg/histogram.hpp"
#include "jsmreg/image.hpp"
#include "jsmreg/image_io.hpp"
#include "jsmreg/jsm.hpp"
#include "jsmreg/registration.hpp"
#include "jsmreg/saliency.hpp"

namespace jsmreg {

/// Surface as CSV text: one row per dy, columns per dx, "nan" for missing.
std::string surface_csv(const SimilaritySurface& s);

/// Heatmap: present values stretched to [0, 255], a constant surface maps to
/// 128, missing samples are 0.
Gray8 surface_heatmap(const SimilaritySurface& s);

/// 255 where a sample is missing, 0 elsewhere.
Gray8 surface_missing_mask(const SimilaritySurface& s);

/// Writes <prefix>.csv, <prefix>.pgm and <prefix>_missing.pgm.
void export_surface(const SimilaritySurface& s, const std::filesystem::path& prefix);

/// B rows x B columns of raw entries.
std::string histogram_csv(const JointHistogram& h);
/// log(1 + entry) stretched to [0, 255]; rows are reference bins, drawn
/// bottom-up so that the diagonal runs from lower-left to upper-right.
Gray8 histogram_heatmap(const JointHistogram& h);
void export_histogram(const JointHistogram& h, const std::filesystem::path& prefix);

/// "x y vx vy saliency" per valid pixel, row-major.
std::string rsv_table(const SaliencyMap& s, const RsvField& field);

void export_saliency(const SaliencyMap& s, const std::filesystem::path& path);
void export_jsm(const JointSaliencyMap& jsm, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace jsmreg
