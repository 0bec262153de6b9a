#pragma once

#include <cstddef>
#include <vector>

#include "vao/constants.hpp"

namespace vao {

struct SnrEstimate {
  double snr_db = 0.0;
  std::size_t num_symbols = 0;
  double confidence_halfwidth_db = 0.0;
};

/// Moment accumulator behind the data-aided SNR estimate. Fits one complex
/// scalar c minimizing sum |rx - c tx|^2 over everything added (both
/// polarizations pooled), then SNR = |c|^2 E|tx|^2 / E|rx - c tx|^2.
/// Merging accumulators is associative, so partial results from parallel
/// workers combine exactly.
struct SnrAccumulator {
  double sum_tt = 0.0;
  double sum_rr = 0.0;
  cplx sum_rt{0.0, 0.0};
  std::size_t n = 0;

  void add(const std::vector<cplx>& rx, const std::vector<cplx>& tx);
  void merge(const SnrAccumulator& other);

  double signal_power() const;
  /// Residual power E|rx - c tx|^2 (uncapped; used by the slope tests).
  double noise_power() const;
  SnrEstimate estimate() const;
};

/// Data-aided SNR over both polarizations. rx == tx returns the +80 dB
/// sentinel (the estimator never reports the floating-point floor as signal
/// quality). Throws on zero-energy tx.
SnrEstimate snr_data_aided(const std::vector<cplx>& rx_x, const std::vector<cplx>& rx_y,
                           const std::vector<cplx>& tx_x, const std::vector<cplx>& tx_y);

struct ZetaRecord {
  double snr_nlc_db = 0.0;
  double snr_edc_db = 0.0;
  double zeta_db = 0.0;
};

/// Nonlinearity suppression factor: SNR with NLC over SNR with EDC, both from
/// ASE-off runs of the same realization.
ZetaRecord zeta(const SnrEstimate& snr_nlc, const SnrEstimate& snr_edc);

/// Rough channel-memory estimate M = |beta2| R_s B L in symbols, with B and
/// R_s in plain Hz (no 2*pi). This is the windowing heuristic; the hard
/// group-delay spread across B is 2*pi times larger, see
/// dispersion_delay_spread_symbols.
double channel_memory_estimate(double beta2, double symbol_rate, double total_bandwidth,
                               double distance);

/// Full group-delay spread across a bandwidth B after distance L, in symbols:
/// |beta2| * 2*pi*B * L * R_s. Boundary discards beyond this absorb all
/// linear memory.
double dispersion_delay_spread_symbols(double beta2, double symbol_rate,
                                       double total_bandwidth, double distance);

inline constexpr double kSnrSentinelDb = 80.0;

}  // namespace vao
