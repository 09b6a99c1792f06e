#include "udn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace udn {

HexLattice::HexLattice(double isd_m, double center_x_m, double center_y_m)
    : isd_(isd_m), row_pitch_(isd_m * std::numbers::sqrt3 / 2.0), cx_(center_x_m), cy_(center_y_m) {}

void HexLattice::position(long col, long row, double& x, double& y) const {
  const double shift = (row % 2 != 0) ? 0.5 : 0.0;
  x = cx_ + (static_cast<double>(col) + shift) * isd_;
  y = cy_ + static_cast<double>(row) * row_pitch_;
}

double HexLattice::nearest_distance(double x, double y) const {
  const long r0 = std::lround((y - cy_) / row_pitch_);
  double best = std::numeric_limits<double>::infinity();
  for (long row = r0 - 1; row <= r0 + 1; ++row) {
    const double shift = (row % 2 != 0) ? 0.5 : 0.0;
    const long c0 = std::lround((x - cx_) / isd_ - shift);
    for (long col = c0 - 1; col <= c0 + 1; ++col) {
      double sx, sy;
      position(col, row, sx, sy);
      best = std::min(best, std::hypot(x - sx, y - sy));
    }
  }
  return best;
}

std::size_t Deployment::interior_site_count() const {
  return static_cast<std::size_t>(
      std::count_if(sites.begin(), sites.end(), [](const Site& s) { return !s.in_guard_tier; }));
}

double site_density_per_km2(double isd_m) { return 2.0e6 / (std::numbers::sqrt3 * isd_m * isd_m); }

long reported_site_density_per_km2(double isd_m) {
  return static_cast<long>(std::ceil(site_density_per_km2(isd_m)));
}

double antenna_height_m(double isd_m) { return std::clamp(6.0 * isd_m / 50.0, 3.0, 24.0); }

Deployment build_hex_grid(const ScenarioConfig& cfg) {
  const double side = cfg.region_side_m;
  const double isd = cfg.isd_m;
  if (side * side < std::numbers::sqrt3 / 2.0 * isd * isd) throw std::invalid_argument("degenerate region");

  Deployment dep;
  dep.region_side_m = side;
  dep.isd_m = isd;
  const double c = side / 2.0;
  HexLattice lattice(isd, c, c);
  const double margin = cfg.guard_tiers * isd;
  const double lo = -margin - 1e-9;
  const double hi = side + margin + 1e-9;
  const long max_row = static_cast<long>(std::ceil((c + margin) / lattice.row_pitch())) + 1;
  const long max_col = static_cast<long>(std::ceil((c + margin) / isd)) + 1;
  const double h = antenna_height_m(isd);

  int next_id = 0;
  for (long row = -max_row; row <= max_row; ++row) {
    for (long col = -max_col; col <= max_col; ++col) {
      double x, y;
      lattice.position(col, row, x, y);
      if (x < lo || x > hi || y < lo || y > hi) continue;
      const bool inside = x >= 0.0 && x <= side && y >= 0.0 && y <= side;
      dep.sites.push_back(Site{next_id++, x, y, h, !inside});
    }
  }
  return dep;
}

int ue_count(const ScenarioConfig& cfg) {
  return static_cast<int>(std::lround(cfg.ue_density_per_km2 * cfg.region_area_km2()));
}

UeSplit split_ues(const ScenarioConfig& cfg, int n_ues) {
  UeSplit s;
  if (cfg.ue_distribution == UeDistribution::uniform) {
    s.uniform = n_ues;
    return s;
  }
  s.clustered = n_ues / 2;
  s.uniform = n_ues - s.clustered;
  int left = s.clustered;
  while (left > 0) {
    int take = std::min(left, cfg.hotspot_size);
    s.hotspot_sizes.push_back(take);
    left -= take;
  }
  return s;
}

namespace {

constexpr int kMaxCenterAttempts = 10000;
constexpr int kMaxPackingRestarts = 100;
constexpr int kMaxUeResamples = 100000;

std::vector<Hotspot> place_hotspots(const ScenarioConfig& cfg, std::size_t count, Rng& rng) {
  const double r = cfg.hotspot_radius_m;
  const double side = cfg.region_side_m;
  const double lo = std::min(r, side / 2.0);
  const double hi = std::max(side - r, side / 2.0);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int restart = 0; restart < kMaxPackingRestarts; ++restart) {
    std::vector<Hotspot> hs;
    bool ok = true;
    while (hs.size() < count && ok) {
      ok = false;
      for (int attempt = 0; attempt < kMaxCenterAttempts; ++attempt) {
        Hotspot cand{u(rng), u(rng), r};
        bool clear = std::all_of(hs.begin(), hs.end(), [&](const Hotspot& o) {
          return std::hypot(o.center_x_m - cand.center_x_m, o.center_y_m - cand.center_y_m) >=
                 cfg.hotspot_min_separation_m;
        });
        if (clear) {
          hs.push_back(cand);
          ok = true;
          break;
        }
      }
    }
    if (ok) return hs;
  }
  throw std::runtime_error("hotspot packing failed");
}

}  // namespace

void drop_ues(const ScenarioConfig& cfg, Deployment& dep, Rng& rng) {
  if (dep.sites.empty()) throw std::logic_error("drop_ues requires a built grid");
  const double side = cfg.region_side_m;
  HexLattice lattice(dep.isd_m, side / 2.0, side / 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto excluded = [&](double x, double y) {
    return lattice.nearest_distance(x, y) < cfg.ue_exclusion_radius_m || x < 0 || x > side || y < 0 ||
           y > side;
  };

  const UeSplit split = split_ues(cfg, ue_count(cfg));
  dep.ues.clear();
  dep.hotspots.clear();
  dep.ues.reserve(static_cast<std::size_t>(split.uniform + split.clustered));

  int next_id = 0;
  for (int i = 0; i < split.uniform; ++i) {
    for (int tries = 0;; ++tries) {
      if (tries > kMaxUeResamples) throw std::runtime_error("UE placement failed");
      double x = unit(rng) * side;
      double y = unit(rng) * side;
      if (excluded(x, y)) continue;
      dep.ues.push_back(Ue{next_id++, x, y, std::nullopt});
      break;
    }
  }

  if (split.hotspot_sizes.empty()) return;
  dep.hotspots = place_hotspots(cfg, split.hotspot_sizes.size(), rng);
  for (std::size_t h = 0; h < dep.hotspots.size(); ++h) {
    const Hotspot& hs = dep.hotspots[h];
    for (int k = 0; k < split.hotspot_sizes[h]; ++k) {
      for (int tries = 0;; ++tries) {
        if (tries > kMaxUeResamples) throw std::runtime_error("UE placement failed");
        const double rad = hs.radius_m * std::sqrt(unit(rng));
        const double ang = 2.0 * std::numbers::pi * unit(rng);
        double x = hs.center_x_m + rad * std::cos(ang);
        double y = hs.center_y_m + rad * std::sin(ang);
        if (excluded(x, y)) continue;
        dep.ues.push_back(Ue{next_id++, x, y, static_cast<int>(h)});
        break;
      }
    }
  }
}

}  // namespace udn
