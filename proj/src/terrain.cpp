#include "spsodpp/terrain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spsodpp/rng.hpp"

namespace spsodpp {

TerrainGrid::TerrainGrid(std::size_t n_cols, std::size_t n_rows,
                         double cell_size, double origin_x, double origin_y,
                         std::vector<double> heights)
    : n_cols_(n_cols),
      n_rows_(n_rows),
      cell_size_(cell_size),
      origin_x_(origin_x),
      origin_y_(origin_y),
      heights_(std::move(heights)) {
  if (n_cols_ < 2 || n_rows_ < 2)
    throw std::invalid_argument("terrain grid needs at least 2x2 nodes");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_))
    throw std::invalid_argument("terrain cell size must be positive");
  if (!std::isfinite(origin_x_) || !std::isfinite(origin_y_))
    throw std::invalid_argument("terrain origin must be finite");
  if (heights_.size() != n_cols_ * n_rows_)
    throw std::invalid_argument("terrain height count does not match dimensions");
  if (!std::all_of(heights_.begin(), heights_.end(),
                   [](double h) { return std::isfinite(h); }))
    throw std::invalid_argument("terrain heights must be finite");
}

double TerrainGrid::node(std::size_t col, std::size_t row_from_south) const {
  const std::size_t row = n_rows_ - 1 - row_from_south;
  return heights_[row * n_cols_ + col];
}

bool TerrainGrid::contains(double x, double y) const {
  return x >= origin_x_ && x <= max_x() && y >= origin_y_ && y <= max_y();
}

std::optional<double> TerrainGrid::try_height(double x, double y) const {
  if (!contains(x, y)) return std::nullopt;
  const double gx = (x - origin_x_) / cell_size_;
  const double gy = (y - origin_y_) / cell_size_;
  auto c0 = std::min(static_cast<std::size_t>(gx), n_cols_ - 2);
  auto r0 = std::min(static_cast<std::size_t>(gy), n_rows_ - 2);
  const double tx = gx - double(c0);
  const double ty = gy - double(r0);
  const double h00 = node(c0, r0);
  const double h10 = node(c0 + 1, r0);
  const double h01 = node(c0, r0 + 1);
  const double h11 = node(c0 + 1, r0 + 1);
  // Exact node hits must return the stored value bit-for-bit.
  if (tx == 0.0 && ty == 0.0) return h00;
  if (tx == 1.0 && ty == 0.0) return h10;
  if (tx == 0.0 && ty == 1.0) return h01;
  if (tx == 1.0 && ty == 1.0) return h11;
  const double south = h00 + (h10 - h00) * tx;
  const double north = h01 + (h11 - h01) * tx;
  return south + (north - south) * ty;
}

double TerrainGrid::height(double x, double y) const {
  auto h = try_height(x, y);
  if (!h) {
    std::ostringstream os;
    os << "terrain query (" << x << ", " << y << ") outside extent ["
       << origin_x_ << ", " << max_x() << "] x [" << origin_y_ << ", "
       << max_y() << "]";
    throw std::out_of_range(os.str());
  }
  return *h;
}

double TerrainGrid::max_height() const {
  return *std::max_element(heights_.begin(), heights_.end());
}

double ground_height(const TerrainGrid& grid, double x, double y) {
  return grid.height(x, y);
}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      out.push_back({text.substr(start, i - start), line});
    }
  }
  return out;
}

double parse_double(const Token& t) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw DemParseError("line " + std::to_string(t.line) +
                            ": expected a number, got '" + std::string(t.text) + "'",
                        t.line);
  return v;
}

std::size_t parse_count(const Token& t) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 0)
    throw DemParseError("line " + std::to_string(t.line) +
                            ": expected a non-negative integer, got '" +
                            std::string(t.text) + "'",
                        t.line);
  return static_cast<std::size_t>(v);
}

bool key_matches(std::string_view got, std::string_view want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(got[i])) != want[i]) return false;
  return true;
}

}  // namespace

TerrainGrid load_dem(std::string_view text) {
  const auto tokens = tokenize(text);
  static constexpr std::string_view keys[] = {"ncols", "nrows", "cellsize",
                                              "xll", "yll"};
  std::size_t pos = 0;
  double header[5] = {};
  for (std::size_t k = 0; k < 5; ++k) {
    if (pos + 1 >= tokens.size())
      throw DemParseError("unexpected end of file in header, missing '" +
                              std::string(keys[k]) + "'",
                          tokens.empty() ? 1 : tokens.back().line);
    const Token& key = tokens[pos];
    if (!key_matches(key.text, keys[k]))
      throw DemParseError("line " + std::to_string(key.line) + ": expected '" +
                              std::string(keys[k]) + "', got '" +
                              std::string(key.text) + "'",
                          key.line);
    const Token& value = tokens[pos + 1];
    header[k] = k < 2 ? double(parse_count(value)) : parse_double(value);
    pos += 2;
  }
  const auto n_cols = static_cast<std::size_t>(header[0]);
  const auto n_rows = static_cast<std::size_t>(header[1]);
  const std::size_t expected = n_cols * n_rows;
  const std::size_t found = tokens.size() - pos;
  if (found != expected)
    throw DemParseError("dimension mismatch: header declares " +
                            std::to_string(n_cols) + "x" + std::to_string(n_rows) +
                            " = " + std::to_string(expected) + " values, file has " +
                            std::to_string(found),
                        found > expected ? tokens[pos + expected].line : 0);
  std::vector<double> heights;
  heights.reserve(expected);
  for (; pos < tokens.size(); ++pos) {
    const double h = parse_double(tokens[pos]);
    if (!std::isfinite(h))
      throw DemParseError("line " + std::to_string(tokens[pos].line) +
                              ": non-finite height",
                          tokens[pos].line);
    heights.push_back(h);
  }
  try {
    return TerrainGrid(n_cols, n_rows, header[2], header[3], header[4],
                       std::move(heights));
  } catch (const std::invalid_argument& e) {
    throw DemParseError(std::string("invalid grid: ") + e.what(), 0);
  }
}

TerrainGrid load_dem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open DEM file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_dem(ss.str());
}

std::string save_dem(const TerrainGrid& grid) {
  std::ostringstream os;
  os.precision(17);
  os << "ncols " << grid.n_cols() << "\nnrows " << grid.n_rows()
     << "\ncellsize " << grid.cell_size() << "\nxll " << grid.origin_x()
     << "\nyll " << grid.origin_y() << "\n";
  for (std::size_t r = 0; r < grid.n_rows(); ++r) {
    for (std::size_t c = 0; c < grid.n_cols(); ++c) {
      if (c) os << ' ';
      os << grid.heights()[r * grid.n_cols() + c];
    }
    os << '\n';
  }
  return os.str();
}

std::vector<GaussianHill> synth_hills(std::uint64_t seed, double extent,
                                      std::size_t n_hills, double max_height) {
  if (!(extent > 0.0)) throw std::invalid_argument("synth extent must be positive");
  if (!(max_height >= 0.0))
    throw std::invalid_argument("synth max_height must be non-negative");
  Rng rng(seed);
  std::vector<GaussianHill> hills;
  hills.reserve(n_hills);
  for (std::size_t i = 0; i < n_hills; ++i) {
    GaussianHill h{};
    h.center_x = rng.uniform(0.0, extent);
    h.center_y = rng.uniform(0.0, extent);
    h.sigma = rng.uniform(0.05, 0.2) * extent;
    h.amplitude = rng.uniform(0.3, 1.0) * max_height;
    hills.push_back(h);
  }
  return hills;
}

TerrainGrid synth_terrain(std::uint64_t seed, double extent,
                          std::size_t n_hills, double max_height,
                          std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("synth resolution must be >= 2");
  const auto hills = synth_hills(seed, extent, n_hills, max_height);
  const double cell = extent / double(resolution - 1);
  std::vector<double> heights(resolution * resolution, 0.0);
  for (std::size_t r = 0; r < resolution; ++r) {
    const double y = cell * double(resolution - 1 - r);
    for (std::size_t c = 0; c < resolution; ++c) {
      const double x = cell * double(c);
      double h = 0.0;
      for (const auto& hill : hills) {
        const double dx = x - hill.center_x;
        const double dy = y - hill.center_y;
        h += hill.amplitude *
             std::exp(-(dx * dx + dy * dy) / (2.0 * hill.sigma * hill.sigma));
      }
      heights[r * resolution + c] = h;
    }
  }
  return TerrainGrid(resolution, resolution, cell, 0.0, 0.0, std::move(heights));
}

}  // namespace spsodpp
