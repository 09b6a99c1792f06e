#pragma once

#include <optional>
#include <vector>

#include "udn/config.hpp"
#include "udn/rng.hpp"

namespace udn {

struct Site {
  int id = 0;
  double x_m = 0;
  double y_m = 0;
  double height_m = 0;
  bool in_guard_tier = false;
};

struct Ue {
  int id = 0;
  double x_m = 0;
  double y_m = 0;
  std::optional<int> hotspot_id;
};

struct Hotspot {
  double center_x_m = 0;
  double center_y_m = 0;
  double radius_m = 40.0;
};

// Hexagonal lattice geometry: rows parallel to the x-axis, every other row
// shifted by half a pitch, lattice anchored on the region center.
class HexLattice {
 public:
  HexLattice(double isd_m, double center_x_m, double center_y_m);

  double isd() const { return isd_; }
  double row_pitch() const { return row_pitch_; }
  // Exact position of lattice point (col, row).
  void position(long col, long row, double& x, double& y) const;
  // Distance from (x, y) to the nearest lattice point.
  double nearest_distance(double x, double y) const;

 private:
  double isd_;
  double row_pitch_;
  double cx_;
  double cy_;
};

struct Deployment {
  double region_side_m = 0;
  double isd_m = 0;
  std::vector<Site> sites;
  std::vector<Ue> ues;
  std::vector<Hotspot> hotspots;

  std::size_t interior_site_count() const;
};

// Analytic hexagonal site density, 2 / (sqrt(3) isd^2), per km^2.
double site_density_per_km2(double isd_m);
// Density as quoted in the literature tables: rounded up to a whole site.
long reported_site_density_per_km2(double isd_m);

// Downtilt-preserving site height: 6 m * isd / 50 m, clamped to [3, 24] m.
double antenna_height_m(double isd_m);

// Lattice sites covering the region plus `cfg.guard_tiers` rings of guard
// sites beyond each edge. Guard sites lie outside [0, side]^2.
Deployment build_hex_grid(const ScenarioConfig& cfg);

// Number of UEs dropped in the region: round(density * area).
int ue_count(const ScenarioConfig& cfg);

// Splits n UEs into (uniform, clustered). Clustered half is floor(n/2).
struct UeSplit {
  int uniform = 0;
  int clustered = 0;
  std::vector<int> hotspot_sizes;  // full hotspots first, remainder last
};
UeSplit split_ues(const ScenarioConfig& cfg, int n_ues);

// Fills dep.ues (and dep.hotspots in nonuniform mode). Requires sites.
void drop_ues(const ScenarioConfig& cfg, Deployment& dep, Rng& rng);

}  // namespace udn
