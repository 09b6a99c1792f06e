#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace udn {

using cplx = std::complex<double>;

// Pattern values below this are clamped (dipole nulls would otherwise be -inf).
inline constexpr double kPatternFloorDb = -40.0;

// Vertical half-wave dipole column; the horizontal beamforming array is made
// of `n_horizontal` such columns spaced `horizontal_spacing_wavelengths` apart.
struct DipoleArrayConfig {
  int n_elements_vertical = 4;
  double max_element_gain_dbi = 2.15;
  double spacing_wavelengths = 0.6;
  std::vector<double> excitation{0.97, 1.077, 1.077, 0.86};
  double phase_increment_rad = 1.658;
  int n_horizontal = 1;
  double horizontal_spacing_wavelengths = 0.6;

  void validate() const;
};

// Angles: phi is azimuth off the array broadside, theta is elevation
// measured downward from the horizon (theta > 0 points below the site).

// Half-wave dipole elevation offset, floored at kPatternFloorDb.
double dipole_vertical_offset_db(double theta_rad);

// max gain + horizontal offset (0 dB, omni) + dipole elevation offset.
double element_gain_db(double phi_rad, double theta_rad, const DipoleArrayConfig& cfg = {});

// 20 log10 |sum_n a(n) exp(j (n-1) (2 pi d (-sin theta) + delta))|, floored.
double vertical_array_factor_db(double theta_rad, const DipoleArrayConfig& cfg = {});

// Element gain plus vertical array factor: the per-column antenna gain.
double column_gain_db(double phi_rad, double theta_rad, const DipoleArrayConfig& cfg = {});

// Per-column phases of a plane wave leaving at azimuth phi (relative to the
// array axis) across a uniform linear array.
std::vector<cplx> steering_phases(double azimuth_from_axis_rad, int n_antennas, double spacing_wavelengths);

struct BeamWeights {
  int codebook_index = 0;
  std::vector<cplx> weights;  // unit magnitude per antenna
};

// Rank-1 codebook entries scaled to unit magnitude per antenna.
// n = 1: {[1]}; n = 2: 4 entries; n = 4: 16 Householder entries.
const std::vector<std::vector<cplx>>& rank1_codebook(int n_antennas);

// |sum_i w_i h_i|^2
double combining_power(std::span<const cplx> w, std::span<const cplx> h);

// Quantised MRT: codebook entry maximizing |w . h|^2 (lowest index on ties).
BeamWeights select_beam(std::span<const cplx> channel, int n_antennas);

// Array gain relative to one antenna at the same per-antenna power split,
// 10 log10(|w.h|^2 / N). Co-phased two-antenna channel gives 3.01 dB.
double array_gain_db(std::span<const cplx> w, std::span<const cplx> h);

// Beamformed gain of one link when every antenna radiates the single-antenna
// power: base + 10 log10(|w.h|^2). With one antenna this is `base_gain_db`.
double beamformed_link_gain_db(double base_gain_db, std::span<const cplx> w, std::span<const cplx> h);

// Interference gain from a site that time-shares its beams across its served
// UEs: base + 10 log10(mean_k |w_k . h|^2). An empty beam list stands for a
// site without data traffic, which radiates the codebook-average pattern.
double interference_link_gain_db(double base_gain_db, std::span<const BeamWeights> beams, std::span<const cplx> h);

}  // namespace udn
