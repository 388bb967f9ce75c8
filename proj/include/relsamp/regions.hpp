#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relsamp/tfcore.hpp"

namespace relsamp {

// Subset of the L x L time-frequency grid. The mask is stored row-major with
// index m * L + n.
class TFRegion {
 public:
  TFRegion(int L, std::vector<std::uint8_t> mask);

  static TFRegion full(int L);
  static TFRegion empty(int L);

  int dim() const { return L_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  bool contains(TFPoint p) const;
  // Position of p within points(), or -1 if p is outside the region.
  int index_of(TFPoint p) const;

  const std::vector<TFPoint>& points() const { return points_; }
  std::size_t point_count() const { return points_.size(); }
  // #Omega / L.
  double measure() const;

  // FNV-1a hash of (L, mask); identifies the region a SampleSet was drawn from.
  std::uint64_t fingerprint() const { return fingerprint_; }

  // "L:r0,r1,..." with alternating run lengths of the row-major mask,
  // starting with a (possibly empty) run of outside points.
  std::string to_rle() const;
  static TFRegion from_rle(std::string_view text);

 private:
  int L_;
  std::vector<std::uint8_t> mask_;
  std::vector<int> index_;
  std::vector<TFPoint> points_;
  std::uint64_t fingerprint_;
};

// Closed disk under the wrap-around pixel distance. Requires 0 < radius and
// 2 * radius < L so the disk does not overlap itself on the torus.
TFRegion disk_region(int L, TFPoint center, double radius_px);

double region_measure(const TFRegion& region);

TFRegion region_union(const TFRegion& a, const TFRegion& b);

struct SampleSet {
  int L = 0;
  std::vector<TFPoint> points;
  std::uint64_t seed = 0;
  std::uint64_t region_id = 0;
  bool distinct = false;

  std::size_t size() const { return points.size(); }
};

// Uniform draws from the grid points of the region: i.i.d. with replacement
// when distinct is false, rejection of repeats when it is true.
SampleSet uniform_sample(const TFRegion& region, std::size_t r, std::uint64_t seed,
                         bool distinct);

struct CoveringReport {
  int cell_size = 0;
  int cells_per_side = 0;
  std::vector<std::size_t> counts;  // row-major over cells
  std::size_t N0 = 0;
};

// Partition of the grid into aligned cell_px x cell_px cells (the last row and
// column of cells may be narrower) and the maximal occupancy.
CoveringReport covering_index(const SampleSet& samples, int cell_px);

// Pixel side of the discrete unit cell: round(sqrt(L)).
int default_cell_size(int L);

std::size_t covering_cell_count(const TFRegion& region, int cell_px);
// Number of covering cells meeting the region minus its measure.
double covering_excess(const TFRegion& region, int cell_px);

}  // namespace relsamp
