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
#include "sdl/envmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sdl/error.hpp"
#include "sdl/io.hpp"

namespace sdl {

namespace {

using nlohmann::json;

const double kGradientMax = std::sqrt(0.5);

Image gradient_magnitude(const Image& in) {
  Image out(in.width, in.height);
  const auto clampi = [](std::size_t i, int d, std::size_t n) {
    const auto j = static_cast<long long>(i) + d;
    return static_cast<std::size_t>(std::clamp<long long>(j, 0, static_cast<long long>(n) - 1));
  };
  for (std::size_t r = 0; r < in.height; ++r) {
    for (std::size_t c = 0; c < in.width; ++c) {
      const double dx = (in.at(r, clampi(c, 1, in.width)) - in.at(r, clampi(c, -1, in.width))) / 2;
      const double dy =
          (in.at(clampi(r, 1, in.height), c) - in.at(clampi(r, -1, in.height), c)) / 2;
      out.at(r, c) = std::min(1.0, std::sqrt(dx * dx + dy * dy) / kGradientMax);
    }
  }
  return out;
}

Image row_profile(const Image& in) {
  Image out(in.width, in.height);
  for (std::size_t r = 0; r < in.height; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < in.width; ++c) sum += in.at(r, c);
    const double mean = sum / static_cast<double>(in.width);
    for (std::size_t c = 0; c < in.width; ++c) out.at(r, c) = mean;
  }
  return out;
}

Image col_profile(const Image& in) {
  Image out(in.width, in.height);
  for (std::size_t c = 0; c < in.width; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < in.height; ++r) sum += in.at(r, c);
    const double mean = sum / static_cast<double>(in.height);
    for (std::size_t r = 0; r < in.height; ++r) out.at(r, c) = mean;
  }
  return out;
}

Image binary_threshold(const Image& in) {
  Image out = in;
  for (auto& p : out.pixels) p = p >= 0.5 ? 1.0 : 0.0;
  return out;
}

Image apply_mapping(const Image& image, std::string_view name) {
  if (name == "identity") return image;
  if (name == "gradient_magnitude") return gradient_magnitude(image);
  if (name == "row_profile") return row_profile(image);
  if (name == "col_profile") return col_profile(image);
  if (name == "binary_threshold") return binary_threshold(image);
  throw std::invalid_argument("unknown mapping '" + std::string(name) + "'");
}

json summary_to_json(const DistributionSummary& s) {
  return json{{"center", s.center},
              {"dispersion", s.dispersion},
              {"sample_count", s.sample_count},
              {"above", {{"boundaries", s.profile.above.boundaries},
                         {"masses", s.profile.above.masses}}},
              {"below", {{"boundaries", s.profile.below.boundaries},
                         {"masses", s.profile.below.masses}}}};
}

DistributionSummary summary_from_json(const json& j) {
  DistributionSummary s;
  s.center = j.at("center").get<double>();
  s.dispersion = j.at("dispersion").get<double>();
  s.sample_count = j.at("sample_count").get<std::size_t>();
  s.profile.above = {j.at("above").at("boundaries").get<std::vector<double>>(),
                     j.at("above").at("masses").get<std::vector<double>>()};
  s.profile.below = {j.at("below").at("boundaries").get<std::vector<double>>(),
                     j.at("below").at("masses").get<std::vector<double>>()};
  s.profile.above.validate();
  s.profile.below.validate();
  return s;
}

}  // namespace

Image::Image(std::size_t w, std::size_t h, double fill) : width(w), height(h), pixels(w * h, fill) {}

void Image::validate() const {
  if (width == 0 || height == 0) throw std::invalid_argument("image must be nonempty");
  if (pixels.size() != width * height) throw std::invalid_argument("pixel count mismatch");
  for (double p : pixels) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pixel values must lie in [0,1]");
  }
}

Rect RegionGrid::region(std::size_t index, std::size_t width, std::size_t height) const {
  validate(width, height);
  if (index >= count()) throw std::invalid_argument("region index out of range");
  const std::size_t r = index / cols, c = index % cols;
  const std::size_t rh = height / rows, cw = width / cols;
  Rect out{r * rh, c * cw, rh, cw};
  if (r == rows - 1) out.rows = height - out.row;
  if (c == cols - 1) out.cols = width - out.col;
  return out;
}

void RegionGrid::validate(std::size_t width, std::size_t height) const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid must have rows and cols >= 1");
  if (rows > height || cols > width) throw std::invalid_argument("grid is finer than the image");
}

const std::vector<std::string>& known_mappings() {
  static const std::vector<std::string> names = {"identity", "gradient_magnitude", "row_profile",
                                                 "col_profile", "binary_threshold"};
  return names;
}

MappingSpecSet all_mappings() { return MappingSpecSet(known_mappings()); }

std::vector<std::pair<std::string, Image>> map_image(const Image& image,
                                                     const MappingSpecSet& specs) {
  image.validate();
  std::vector<std::pair<std::string, Image>> out;
  out.reserve(specs.size());
  for (const auto& name : specs.names()) out.emplace_back(name, apply_mapping(image, name));
  return out;
}

double region_eigenvalue(const Image& mapped, const Rect& region, const SOConfig& config) {
  if (region.rows == 0 || region.cols == 0) throw std::invalid_argument("empty region");
  if (region.row + region.rows > mapped.height || region.col + region.cols > mapped.width) {
    throw std::invalid_argument("region exceeds image bounds");
  }
  std::vector<double> values;
  values.reserve(region.rows * region.cols);
  for (std::size_t r = region.row; r < region.row + region.rows; ++r) {
    for (std::size_t c = region.col; c < region.col + region.cols; ++c) {
      values.push_back(mapped.at(r, c));
    }
  }
  return self_organize(values, median(values), config).center;
}

std::vector<double> region_features(const Image& image, const MappingSpecSet& specs,
                                    const RegionGrid& grid, const SOConfig& config) {
  grid.validate(image.width, image.height);
  std::vector<double> out;
  out.reserve(specs.size() * grid.count());
  for (const auto& [name, mapped] : map_image(image, specs)) {
    for (std::size_t i = 0; i < grid.count(); ++i) {
      out.push_back(region_eigenvalue(mapped, grid.region(i, image.width, image.height), config));
    }
  }
  return out;
}

RegionDB learn_region_db(std::span<const std::pair<std::string, Image>> labeled,
                         const MappingSpecSet& specs, const RegionGrid& grid,
                         const RegionLearnConfig& config) {
  std::map<std::string, std::vector<std::vector<double>>> pooled;
  for (const auto& [label, image] : labeled) {
    const auto features = region_features(image, specs, grid, config.so);
    auto& cells = pooled[label];
    cells.resize(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) cells[i].push_back(features[i]);
  }
  RegionDB db;
  db.mappings = specs.names();
  db.grid = grid;
  for (auto& [label, cells] : pooled) {
    if (cells.front().size() < 2) {
      throw std::invalid_argument("label '" + label + "' needs at least two images");
    }
    auto& summaries = db.classes[label];
    for (auto& values : cells) {
      std::sort(values.begin(), values.end());
      summaries.push_back(fit_summary(values, config.so, config.segment_count, config.coverage));
    }
  }
  return db;
}

Recognition recognize(const Image& image, const RegionDB& db, const SOConfig& config) {
  if (db.classes.empty()) throw std::invalid_argument("region database is empty");
  const auto w = region_features(image, MappingSpecSet(db.mappings), db.grid, config);
  Recognition best;
  bool first = true;
  for (const auto& [label, summaries] : db.classes) {
    if (summaries.size() != w.size()) {
      throw std::invalid_argument("class '" + label + "' does not match the database layout");
    }
    const double d = leap_distance(w, summaries);
    if (first || d < best.score) {
      best = {label, d};
      first = false;
    }
  }
  return best;
}

std::string region_db_to_json(const RegionDB& db) {
  json classes = json::object();
  for (const auto& [label, summaries] : db.classes) {
    json arr = json::array();
    for (const auto& s : summaries) arr.push_back(summary_to_json(s));
    classes[label] = std::move(arr);
  }
  json doc{{"format_version", RegionDB::kFormatVersion},
           {"mappings", db.mappings},
           {"grid", {{"rows", db.grid.rows}, {"cols", db.grid.cols}}},
           {"classes", std::move(classes)}};
  return doc.dump(2) + "\n";
}

RegionDB region_db_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != RegionDB::kFormatVersion) {
      throw VersionMismatch("unsupported region database format_version " +
                            doc.at("format_version").dump());
    }
    RegionDB db;
    db.mappings = doc.at("mappings").get<std::vector<std::string>>();
    db.grid.rows = doc.at("grid").at("rows").get<std::size_t>();
    db.grid.cols = doc.at("grid").at("cols").get<std::size_t>();
    const std::size_t cells = db.mappings.size() * db.grid.count();
    for (const auto& [label, arr] : doc.at("classes").items()) {
      auto& summaries = db.classes[label];
      for (const auto& s : arr) summaries.push_back(summary_from_json(s));
      if (summaries.size() != cells) {
        throw SchemaViolation("class '" + label + "' has the wrong number of cells");
      }
    }
    MappingSpecSet check(db.mappings);
    for (const auto& name : db.mappings) apply_mapping(Image(1, 1), name);
    return db;
  } catch (const json::exception& e) {
    throw SchemaViolation(std::string("malformed region database: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(std::string("invalid region database: ") + e.what());
  }
}

void save_region_db(const RegionDB& db, const std::filesystem::path& path) {
  io::write_file_atomic(path, region_db_to_json(db));
}

RegionDB load_region_db(const std::filesystem::path& path) {
  return region_db_from_json(io::read_file(path));
}

std::string image_to_pgm(const Image& image) {
  image.validate();
  std::string out = "P2\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  for (std::size_t r = 0; r < image.height; ++r) {
    for (std::size_t c = 0; c < image.width; ++c) {
      if (c > 0) out += ' ';
      out += std::to_string(std::lround(image.at(r, c) * 255.0));
    }
    out += '\n';
  }
  return out;
}

Image image_from_pgm(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  bool comment = false;
  for (char ch : text) {
    if (ch == '#') comment = true;
    if (ch == '\n') comment = false;
    cleaned += comment ? ' ' : ch;
  }
  std::istringstream in(cleaned);
  std::string magic;
  in >> magic;
  if (magic != "P2") throw SchemaViolation("not a plain PGM (P2) image");
  std::string tok;
  const auto next_int = [&](const char* what) {
    if (!(in >> tok)) throw SchemaViolation(std::string("PGM truncated at ") + what);
    return io::parse_int(tok);
  };
  const auto w = next_int("width"), h = next_int("height"), maxval = next_int("maxval");
  if (w <= 0 || h <= 0) throw SchemaViolation("PGM dimensions must be positive");
  if (maxval <= 0 || maxval > 65535) throw SchemaViolation("PGM maxval out of range");
  Image image(static_cast<std::size_t>(w), static_cast<std::size_t>(h));
  for (auto& p : image.pixels) {
    const auto v = next_int("pixel data");
    if (v < 0 || v > maxval) throw SchemaViolation("PGM pixel exceeds maxval");
    p = static_cast<double>(v) / static_cast<double>(maxval);
  }
  if (in >> tok) throw SchemaViolation("trailing data after PGM pixels");
  return image;
}

void save_pgm(const Image& image, const std::filesystem::path& path) {
  io::write_file_atomic(path, image_to_pgm(image));
}

Image load_pgm(const std::filesystem::path& path) { return image_from_pgm(io::read_file(path)); }

std::string_view to_string(Texture t) {
  return t == Texture::kStripes ? "stripes" : "checker";
}

Image make_texture(Texture texture, std::size_t size, std::size_t cell, double noise, Rng& rng) {
  if (size == 0 || cell == 0) throw std::invalid_argument("texture size and cell must be >= 1");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be >= 0");
  const bool vertical = rng.uniform() < 0.5;
  const auto period = static_cast<std::int64_t>(2 * cell);
  const auto phase_r = static_cast<std::size_t>(rng.uniform_int(0, period - 1));
  const auto phase_c = static_cast<std::size_t>(rng.uniform_int(0, period - 1));
  Image image(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const std::size_t br = ((r + phase_r) / cell) % 2, bc = ((c + phase_c) / cell) % 2;
      std::size_t bit = 0;
      if (texture == Texture::kChecker) bit = br ^ bc;
      else bit = vertical ? bc : br;
      const double v = static_cast<double>(bit) + rng.uniform(-noise, noise);
      image.at(r, c) = std::clamp(v, 0.0, 1.0);
    }
  }
  return image;
}

std::vector<std::pair<std::string, Image>> make_texture_corpus(std::size_t count,
                                                               std::size_t size, double noise,
                                                               std::uint64_t seed,
                                                               std::size_t cell) {
  Rng rng(seed);
  std::vector<std::pair<std::string, Image>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = i % 2 == 0 ? Texture::kStripes : Texture::kChecker;
    out.emplace_back(std::string(to_string(t)), make_texture(t, size, cell, noise, rng));
  }
  return out;
}

}  // namespace sdl
