#include "relsamp/regions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "relsamp/error.hpp"
#include "relsamp/seed.hpp"

namespace relsamp {
namespace {

std::uint64_t fnv1a(int L, const std::vector<std::uint8_t>& mask) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (int shift = 0; shift < 32; shift += 8) feed(static_cast<std::uint8_t>(L >> shift));
  for (auto v : mask) feed(v ? 1 : 0);
  return h;
}

int cyclic_distance(int a, int b, int L) {
  const int d = std::abs(a - b) % L;
  return std::min(d, L - d);
}

}  // namespace

TFRegion::TFRegion(int L, std::vector<std::uint8_t> mask)
    : L_(L), mask_(std::move(mask)), index_(), points_(), fingerprint_(0) {
  if (L <= 0) {
    throw Error(ErrorKind::InvalidDimension, "TFRegion: L must be positive");
  }
  const auto cells = static_cast<std::size_t>(L) * static_cast<std::size_t>(L);
  if (mask_.size() != cells) {
    throw Error(ErrorKind::InvalidDimension, "TFRegion: mask size is not L*L");
  }
  index_.assign(cells, -1);
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      const auto k = static_cast<std::size_t>(m) * L + n;
      mask_[k] = mask_[k] ? 1 : 0;
      if (mask_[k]) {
        index_[k] = static_cast<int>(points_.size());
        points_.push_back({m, n});
      }
    }
  }
  fingerprint_ = fnv1a(L_, mask_);
}

TFRegion TFRegion::full(int L) {
  return TFRegion(L, std::vector<std::uint8_t>(static_cast<std::size_t>(L) * L, 1));
}

TFRegion TFRegion::empty(int L) {
  return TFRegion(L, std::vector<std::uint8_t>(static_cast<std::size_t>(L) * L, 0));
}

bool TFRegion::contains(TFPoint p) const { return index_of(p) >= 0; }

int TFRegion::index_of(TFPoint p) const {
  if (p.m < 0 || p.m >= L_ || p.n < 0 || p.n >= L_) return -1;
  return index_[static_cast<std::size_t>(p.m) * L_ + p.n];
}

double TFRegion::measure() const {
  return static_cast<double>(points_.size()) / static_cast<double>(L_);
}

std::string TFRegion::to_rle() const {
  std::string out = std::to_string(L_) + ":";
  std::uint8_t current = 0;
  std::size_t run = 0;
  bool first = true;
  auto flush = [&] {
    if (!first) out += ',';
    out += std::to_string(run);
    first = false;
  };
  for (auto v : mask_) {
    if (v != current) {
      flush();
      current = v;
      run = 0;
    }
    ++run;
  }
  flush();
  return out;
}

TFRegion TFRegion::from_rle(std::string_view text) {
  auto fail = [](const std::string& why) -> TFRegion {
    throw Error(ErrorKind::InvalidRegion, "TFRegion::from_rle: " + why);
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return fail("missing ':' after L");
  int L = 0;
  {
    const auto head = text.substr(0, colon);
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), L);
    if (ec != std::errc() || ptr != head.data() + head.size() || L <= 0) {
      return fail("bad grid size");
    }
  }
  const auto cells = static_cast<std::size_t>(L) * L;
  std::vector<std::uint8_t> mask;
  mask.reserve(cells);
  std::uint8_t value = 0;
  auto rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    std::size_t run = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), run);
    if (ec != std::errc() || ptr != token.data() + token.size()) return fail("bad run length");
    if (mask.size() + run > cells) return fail("runs exceed L*L");
    mask.insert(mask.end(), run, value);
    value ^= 1;
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (mask.size() != cells) return fail("runs do not cover L*L");
  return TFRegion(L, std::move(mask));
}

TFRegion disk_region(int L, TFPoint center, double radius_px) {
  if (!(radius_px > 0.0)) {
    throw Error(ErrorKind::InvalidRegion, "disk_region: radius must be positive");
  }
  if (!(2.0 * radius_px < L)) {
    throw Error(ErrorKind::InvalidRegion, "disk_region: disk of radius " +
                                              std::to_string(radius_px) +
                                              " does not fit the grid");
  }
  if (center.m < 0 || center.m >= L || center.n < 0 || center.n >= L) {
    throw Error(ErrorKind::InvalidRegion, "disk_region: center outside the grid");
  }
  const double r2 = radius_px * radius_px;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(L) * L, 0);
  for (int m = 0; m < L; ++m) {
    const double dm = cyclic_distance(m, center.m, L);
    for (int n = 0; n < L; ++n) {
      const double dn = cyclic_distance(n, center.n, L);
      if (dm * dm + dn * dn <= r2) mask[static_cast<std::size_t>(m) * L + n] = 1;
    }
  }
  return TFRegion(L, std::move(mask));
}

double region_measure(const TFRegion& region) { return region.measure(); }

TFRegion region_union(const TFRegion& a, const TFRegion& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::InvalidDimension, "region_union: dimension mismatch");
  }
  std::vector<std::uint8_t> mask(a.mask());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] |= b.mask()[k];
  return TFRegion(a.dim(), std::move(mask));
}

SampleSet uniform_sample(const TFRegion& region, std::size_t r, std::uint64_t seed,
                         bool distinct) {
  const std::size_t count = region.point_count();
  if (r == 0) {
    throw Error(ErrorKind::InvalidParameter, "uniform_sample: r must be at least 1");
  }
  if (count == 0) {
    throw Error(ErrorKind::Infeasible, "uniform_sample: region is empty");
  }
  if (distinct && r > count) {
    throw Error(ErrorKind::Infeasible, "uniform_sample: " + std::to_string(r) +
                                           " distinct points requested from a region of " +
                                           std::to_string(count));
  }
  SampleSet out;
  out.L = region.dim();
  out.seed = seed;
  out.region_id = region.fingerprint();
  out.distinct = distinct;
  out.points.reserve(r);

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  const auto& pts = region.points();
  if (!distinct) {
    for (std::size_t j = 0; j < r; ++j) out.points.push_back(pts[pick(rng)]);
    return out;
  }
  std::vector<bool> taken(count, false);
  while (out.points.size() < r) {
    const auto k = pick(rng);
    if (taken[k]) continue;
    taken[k] = true;
    out.points.push_back(pts[k]);
  }
  return out;
}

CoveringReport covering_index(const SampleSet& samples, int cell_px) {
  if (cell_px < 1) {
    throw Error(ErrorKind::InvalidParameter, "covering_index: cell size must be >= 1");
  }
  if (samples.L <= 0) {
    throw Error(ErrorKind::InvalidDimension, "covering_index: sample set has no grid size");
  }
  CoveringReport report;
  report.cell_size = cell_px;
  report.cells_per_side = (samples.L + cell_px - 1) / cell_px;
  report.counts.assign(static_cast<std::size_t>(report.cells_per_side) * report.cells_per_side,
                       0);
  for (const auto& p : samples.points) {
    const auto cell = static_cast<std::size_t>(p.m / cell_px) * report.cells_per_side +
                      static_cast<std::size_t>(p.n / cell_px);
    ++report.counts[cell];
  }
  report.N0 = report.counts.empty()
                  ? 0
                  : *std::max_element(report.counts.begin(), report.counts.end());
  return report;
}

int default_cell_size(int L) {
  return std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(L)))));
}

std::size_t covering_cell_count(const TFRegion& region, int cell_px) {
  if (cell_px < 1) {
    throw Error(ErrorKind::InvalidParameter, "covering_cell_count: cell size must be >= 1");
  }
  const int side = (region.dim() + cell_px - 1) / cell_px;
  std::vector<bool> hit(static_cast<std::size_t>(side) * side, false);
  for (const auto& p : region.points()) {
    hit[static_cast<std::size_t>(p.m / cell_px) * side + p.n / cell_px] = true;
  }
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
}

double covering_excess(const TFRegion& region, int cell_px) {
  return static_cast<double>(covering_cell_count(region, cell_px)) - region.measure();
}

}  // namespace relsamp
