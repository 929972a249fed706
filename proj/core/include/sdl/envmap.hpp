/******************************************************************************
 * Copyright 2026 The sdl-drive Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdl/fuzzy.hpp"
#include "sdl/leap.hpp"
#include "sdl/random.hpp"
#include "sdl/self_organizing.hpp"

// Image pipeline: expand a grayscale image into several mapped views, reduce
// each region of each view to one self-organized eigenvalue, learn the
// distribution of those eigenvalues per class and recognize new images by
// leap distance.

namespace sdl {

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major

  Image() = default;
  Image(std::size_t w, std::size_t h, double fill = 0.0);

  double& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
  double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }

  /// Throws std::invalid_argument on zero size, a pixel count mismatch or a
  /// value outside [0,1].
  void validate() const;

  bool operator==(const Image&) const = default;
};

struct Rect {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// rows x cols equal rectangles; the last row and column absorb remainders.
struct RegionGrid {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t count() const { return rows * cols; }
  /// Region `index` in row-major order for an image of the given size.
  Rect region(std::size_t index, std::size_t width, std::size_t height) const;
  void validate(std::size_t width, std::size_t height) const;

  bool operator==(const RegionGrid&) const = default;
};

/// identity, gradient_magnitude, row_profile, col_profile, binary_threshold.
const std::vector<std::string>& known_mappings();
MappingSpecSet all_mappings();

/// One mapped view per name, in the order given. Throws
/// std::invalid_argument on an unknown name.
std::vector<std::pair<std::string, Image>> map_image(const Image& image,
                                                     const MappingSpecSet& specs);

/// Converged self_organize center of the region's pixels, started at their
/// median.
double region_eigenvalue(const Image& mapped, const Rect& region, const SOConfig& config);

/// Eigenvalues for every (mapping, region) pair, mapping-major.
std::vector<double> region_features(const Image& image, const MappingSpecSet& specs,
                                    const RegionGrid& grid, const SOConfig& config);

struct RegionDB {
  static constexpr int kFormatVersion = 1;

  std::vector<std::string> mappings;
  RegionGrid grid;
  /// Per label, one summary per (mapping, region), mapping-major.
  std::map<std::string, std::vector<DistributionSummary>> classes;

  bool operator==(const RegionDB&) const = default;
};

struct RegionLearnConfig {
  SOConfig so{.window_halfwidth = 0.05};
  std::size_t segment_count = 4;
  double coverage = kDefaultCoverage;
};

/// Pools every label's region eigenvalues and fits one summary per cell.
/// Throws std::invalid_argument for a label with fewer than two images.
RegionDB learn_region_db(std::span<const std::pair<std::string, Image>> labeled,
                         const MappingSpecSet& specs, const RegionGrid& grid,
                         const RegionLearnConfig& config = {});

struct Recognition {
  std::string label;
  double score = 0.0;
};

/// Class with the smallest leap distance; ties go to the smaller label.
Recognition recognize(const Image& image, const RegionDB& db, const SOConfig& config);

std::string region_db_to_json(const RegionDB& db);
RegionDB region_db_from_json(std::string_view text);
void save_region_db(const RegionDB& db, const std::filesystem::path& path);
RegionDB load_region_db(const std::filesystem::path& path);

/// Plain PGM (P2). Writing quantizes to maxval 255; reading accepts any
/// maxval up to 65535 and comments.
std::string image_to_pgm(const Image& image);
Image image_from_pgm(std::string_view text);
void save_pgm(const Image& image, const std::filesystem::path& path);
Image load_pgm(const std::filesystem::path& path);

enum class Texture { kStripes, kChecker };
std::string_view to_string(Texture t);

/// Stripes (random orientation and phase) or a checkerboard (random phase)
/// with cells `cell` pixels wide, plus U(-noise, noise) clipped to [0,1].
Image make_texture(Texture texture, std::size_t size, std::size_t cell, double noise, Rng& rng);

/// `count` labeled images alternating between the two textures.
std::vector<std::pair<std::string, Image>> make_texture_corpus(std::size_t count,
                                                               std::size_t size,
                                                               double noise,
                                                               std::uint64_t seed,
                                                               std::size_t cell = 2);

}  // namespace sdl
