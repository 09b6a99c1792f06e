#pragma once

#include <span>
#include <vector>

#include "udn/antenna.hpp"
#include "udn/link.hpp"
#include "udn/propagation.hpp"
#include "udn/scenario.hpp"

// Data-parallel inner loops of a run. Each kernel has a serial reference and
// an OpenMP variant; both produce bit-identical results because every output
// element is computed by exactly one thread with the same operation order.
namespace udn::kernels {

// Non-beamformed link gain in dB, row-major [site][ue]:
// column antenna gain + path gain + shadow gain.
struct GainMatrix {
  std::size_t n_sites = 0;
  std::size_t n_ues = 0;
  std::vector<double> db;

  double at(std::size_t site, std::size_t ue) const { return db[site * n_ues + ue]; }
};

struct GainInputs {
  std::span<const Site> sites;
  std::span<const Ue> ues;
  double ue_height_m = 1.5;
  const PathGainModel* path = nullptr;
  const DipoleArrayConfig* antenna = nullptr;
  const ShadowField* shadow = nullptr;  // may be null (no shadowing)
};

GainMatrix gain_matrix_serial(const GainInputs& in);
GainMatrix gain_matrix_parallel(const GainInputs& in);

// Received pilot power, mW: P_tx[site] (dBm) + gain.
RxPowerMatrix rx_power_serial(const GainMatrix& g, std::span<const double> tx_dbm);
RxPowerMatrix rx_power_parallel(const GainMatrix& g, std::span<const double> tx_dbm);

struct BeamInputs {
  std::span<const Site> sites;
  std::span<const Ue> ues;
  int n_antennas = 1;
  double spacing_wavelengths = 0.6;
};

// Azimuth from a site to a UE; the horizontal array axis is the x-axis.
double azimuth_rad(const Site& s, const Ue& u);

// Beam chosen by each served UE from its serving site; empty for unserved.
std::vector<BeamWeights> select_beams(const BeamInputs& in, const AssociationState& st);

// Data SINR (dB) of every served UE; NaN for unserved UEs. Interfering sites
// radiate the average of their served UEs' beams toward the victim.
std::vector<double> data_sinr_serial(const RxPowerMatrix& rx, const AssociationState& st,
                                     const std::vector<BeamWeights>& beams, const BeamInputs& in, double noise_mw);
std::vector<double> data_sinr_parallel(const RxPowerMatrix& rx, const AssociationState& st,
                                       const std::vector<BeamWeights>& beams, const BeamInputs& in, double noise_mw);

}  // namespace udn::kernels
