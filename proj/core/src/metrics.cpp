#include "vao/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace vao {

void SnrAccumulator::add(const std::vector<cplx>& rx, const std::vector<cplx>& tx) {
  if (rx.size() != tx.size()) throw std::invalid_argument("SnrAccumulator: length mismatch");
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sum_tt += std::norm(tx[i]);
    sum_rr += std::norm(rx[i]);
    sum_rt += rx[i] * std::conj(tx[i]);
  }
  n += rx.size();
}

void SnrAccumulator::merge(const SnrAccumulator& other) {
  sum_tt += other.sum_tt;
  sum_rr += other.sum_rr;
  sum_rt += other.sum_rt;
  n += other.n;
}

double SnrAccumulator::signal_power() const {
  if (n == 0 || !(sum_tt > 0.0)) throw std::invalid_argument("SnrAccumulator: zero-energy tx");
  const cplx c = sum_rt / sum_tt;
  return std::norm(c) * sum_tt / static_cast<double>(n);
}

double SnrAccumulator::noise_power() const {
  if (n == 0 || !(sum_tt > 0.0)) throw std::invalid_argument("SnrAccumulator: zero-energy tx");
  const double err = sum_rr - std::norm(sum_rt) / sum_tt;
  return std::max(err, 0.0) / static_cast<double>(n);
}

SnrEstimate SnrAccumulator::estimate() const {
  const double sig = signal_power();
  const double err = noise_power();
  SnrEstimate est;
  est.num_symbols = n;
  // Gaussian-error approximation: the dB estimate scatters with standard
  // error ~ (10/ln10) sqrt(2/n).
  est.confidence_halfwidth_db = 1.96 * (10.0 / std::log(10.0)) * std::sqrt(2.0 / n);
  if (err <= sig * 1e-24) {
    est.snr_db = kSnrSentinelDb;  // error at the floating-point floor
    return est;
  }
  est.snr_db = 10.0 * std::log10(sig / err);
  return est;
}

SnrEstimate snr_data_aided(const std::vector<cplx>& rx_x, const std::vector<cplx>& rx_y,
                           const std::vector<cplx>& tx_x, const std::vector<cplx>& tx_y) {
  SnrAccumulator acc;
  acc.add(rx_x, tx_x);
  acc.add(rx_y, tx_y);
  return acc.estimate();
}

ZetaRecord zeta(const SnrEstimate& snr_nlc, const SnrEstimate& snr_edc) {
  return {snr_nlc.snr_db, snr_edc.snr_db, snr_nlc.snr_db - snr_edc.snr_db};
}

double channel_memory_estimate(double beta2, double symbol_rate, double total_bandwidth,
                               double distance) {
  if (symbol_rate < 0.0 || total_bandwidth < 0.0 || distance < 0.0)
    throw std::invalid_argument("channel_memory_estimate: arguments must be >= 0");
  return std::abs(beta2) * symbol_rate * total_bandwidth * distance;
}

double dispersion_delay_spread_symbols(double beta2, double symbol_rate,
                                       double total_bandwidth, double distance) {
  return 2.0 * kPi * channel_memory_estimate(beta2, symbol_rate, total_bandwidth, distance);
}

}  // namespace vao
