#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vao/signal.hpp"

namespace vao {

/// The Gray-mapped 16-QAM alphabet at unit average energy.
const std::array<cplx, 16>& qam16_constellation();

/// i.i.d. uniform draws from the 16-QAM alphabet for num_channels channels,
/// two polarizations each. Deterministic per (seed, channel, polarization).
SymbolFrame generate_symbols(std::size_t n, int num_channels, std::uint64_t seed,
                             double symbol_rate = 32e9);

/// sqrt(raised cosine) spectral mask sampled on an n-point DFT grid at
/// sample_rate; peak value `gain`.
std::vector<double> rrc_mask(std::size_t n, double sample_rate, double symbol_rate,
                             double rolloff, double gain = 1.0);

/// Root-raised-cosine pulse shaping of one channel at sps samples/symbol,
/// realized as a circular spectral filter on the periodic grid. Output power
/// equals the average symbol energy (the RRC shifts are orthonormal on the
/// grid).
DualPolSignal rrc_shape(const std::vector<cplx>& symbols_x, const std::vector<cplx>& symbols_y,
                        double symbol_rate, double rolloff, int sps);

/// Shape every channel of a frame.
std::vector<DualPolSignal> shape_channels(const SymbolFrame& frame, double rolloff, int sps);

/// Frequency-shift channels to offsets k*spacing (k centered on 0) and sum.
/// Shifts that land on integer grid bins are exact spectral rotations,
/// otherwise a time-domain phase ramp is used. occupied_halfwidth (Hz) is the
/// per-channel half-bandwidth used for the grid-overflow check.
DualPolSignal wdm_mux(const std::vector<DualPolSignal>& channels, double spacing,
                      double occupied_halfwidth = 0.0);

/// Rescale so total power equals num_channels * 10^((p_dbm-30)/10) W.
DualPolSignal set_power(const DualPolSignal& signal, double p_dbm_per_channel,
                        int num_channels);

/// Full transmitter: symbols -> RRC shaping -> WDM mux -> launch power.
struct TxOutput {
  DualPolSignal signal;
  SymbolFrame symbols;
};
TxOutput transmit(const TxConfig& cfg, std::size_t frame_symbols, std::uint64_t seed);

}  // namespace vao
