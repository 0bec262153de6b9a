#include "vao/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace vao {

double DualPolSignal::power() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i]) + std::norm(y[i]);
  return acc / static_cast<double>(x.size());
}

void DualPolSignal::validate() const {
  if (x.empty() || x.size() != y.size())
    throw std::invalid_argument("DualPolSignal: polarizations must be non-empty and equal length");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("DualPolSignal: sample_rate must be > 0");
  const double p = power();
  if (!std::isfinite(p) || p < 0.0)
    throw std::invalid_argument("DualPolSignal: total power must be finite and >= 0");
}

void SymbolFrame::validate() const {
  if (channels.empty()) throw std::invalid_argument("SymbolFrame: no channels");
  const std::size_t n = channels[0][0].size();
  if (n == 0) throw std::invalid_argument("SymbolFrame: empty symbol sequences");
  for (const auto& ch : channels)
    for (const auto& pol : ch)
      if (pol.size() != n)
        throw std::invalid_argument("SymbolFrame: all sequences must have equal length");
  if (!(symbol_rate > 0.0)) throw std::invalid_argument("SymbolFrame: symbol_rate must be > 0");
}

void TxConfig::validate() const {
  if (num_channels <= 0) throw std::invalid_argument("TxConfig: num_channels must be > 0");
  if (!(symbol_rate > 0.0)) throw std::invalid_argument("TxConfig: symbol_rate must be > 0");
  if (!(rolloff > 0.0 && rolloff <= 1.0))
    throw std::invalid_argument("TxConfig: rolloff must be in (0, 1]");
  if (samples_per_symbol < 2) throw std::invalid_argument("TxConfig: samples_per_symbol < 2");
  if (num_channels > 1 && channel_spacing < symbol_rate * (1.0 + rolloff))
    throw std::invalid_argument("TxConfig: channel spacing below occupied bandwidth");
  if (sample_rate() < num_channels * channel_spacing)
    throw std::invalid_argument("TxConfig: sample grid does not cover the multiplex");
}

}  // namespace vao
