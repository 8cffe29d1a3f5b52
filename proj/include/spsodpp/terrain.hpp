#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spsodpp {

/// Ground-elevation raster. Nodes sit on a regular lattice whose lower-left
/// node is (origin_x, origin_y); `heights` is row-major with the north row
/// (largest y) first, matching the ASCII grid file layout.
class TerrainGrid {
 public:
  TerrainGrid(std::size_t n_cols, std::size_t n_rows, double cell_size,
              double origin_x, double origin_y, std::vector<double> heights);

  std::size_t n_cols() const { return n_cols_; }
  std::size_t n_rows() const { return n_rows_; }
  double cell_size() const { return cell_size_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  double max_x() const { return origin_x_ + cell_size_ * double(n_cols_ - 1); }
  double max_y() const { return origin_y_ + cell_size_ * double(n_rows_ - 1); }
  const std::vector<double>& heights() const { return heights_; }

  /// Stored height of the node in column `col` counted from the west edge and
  /// row `row` counted from the south edge.
  double node(std::size_t col, std::size_t row_from_south) const;

  bool contains(double x, double y) const;

  /// Bilinear height, std::nullopt outside the horizontal extent.
  std::optional<double> try_height(double x, double y) const;

  /// Bilinear height; throws std::out_of_range outside the extent.
  double height(double x, double y) const;

  double max_height() const;

  bool operator==(const TerrainGrid&) const = default;

 private:
  std::size_t n_cols_;
  std::size_t n_rows_;
  double cell_size_;
  double origin_x_;
  double origin_y_;
  std::vector<double> heights_;
};

/// Parse failure in a DEM file. `line()` is 1-based, 0 when not tied to a line.
class DemParseError : public std::runtime_error {
 public:
  DemParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the ASCII grid format:
///   ncols <int> / nrows <int> / cellsize <float> / xll <float> / yll <float>
/// followed by ncols*nrows heights, row-major, north row first.
TerrainGrid load_dem(std::string_view text);
TerrainGrid load_dem_file(const std::string& path);

/// Writes a grid in the format `load_dem` reads, with round-trip precision.
std::string save_dem(const TerrainGrid& grid);

double ground_height(const TerrainGrid& grid, double x, double y);

struct GaussianHill {
  double center_x;
  double center_y;
  double sigma;
  double amplitude;
};

/// Hill parameters drawn by `synth_terrain` for the same arguments.
std::vector<GaussianHill> synth_hills(std::uint64_t seed, double extent,
                                      std::size_t n_hills, double max_height);

/// Sum of `n_hills` Gaussian bumps on a square raster covering
/// [0, extent]^2 with `resolution` nodes per side.
TerrainGrid synth_terrain(std::uint64_t seed, double extent,
                          std::size_t n_hills, double max_height,
                          std::size_t resolution = 101);

}  // namespace spsodpp
