#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "kgdelta/app/regions.hpp"

namespace kgdelta::app {

/// Inclusive uniform axis lo, ..., hi with n >= 1 points.  Values are computed
/// as (lo (n-1-i) + hi i) / (n-1), so symmetric ranges give exactly symmetric
/// nodes and the midpoint of a symmetric range is exactly zero.
struct Axis {
  double lo;
  double hi;
  std::size_t n;

  double at(std::size_t i) const;
  /// Number of points for a step size; the last point may fall short of hi by less than a step.
  static Axis from_step(double lo, double hi, double step);
};

struct ScanConfig {
  double m = 1.0;
  Axis omega{-0.96, 0.96, 97};
  Axis kappa{-2.0, 2.0, 81};
  RegionOptions region;
  /// 0 selects std::thread::hardware_concurrency().  KGDELTA_THREADS caps it.
  unsigned threads = 0;
};

/// Worker count actually used for the scan.
unsigned effective_threads(unsigned requested);

/// Row-major in omega then kappa.
std::vector<CellResult> scan_cells(const ScanConfig& cfg);

void write_scan_csv(const std::vector<CellResult>& cells, std::ostream& out);

/// Writes to `<path>.tmp` and renames on success.
void write_scan_file(const std::vector<CellResult>& cells, const std::filesystem::path& path);

}  // namespace kgdelta::app
