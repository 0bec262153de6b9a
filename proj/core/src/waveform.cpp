#include "vao/waveform.hpp"

#include <cmath>
#include <stdexcept>

#include "vao/fft.hpp"
#include "vao/rng.hpp"

namespace vao {

const std::array<cplx, 16>& qam16_constellation() {
  // Per-axis 2-bit Gray code: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
  static const std::array<cplx, 16> points = [] {
    const double gray_level[4] = {-3.0, -1.0, 3.0, 1.0};  // indexed by the 2-bit word
    std::array<cplx, 16> c{};
    const double scale = 1.0 / std::sqrt(10.0);
    for (int bits = 0; bits < 16; ++bits)
      c[bits] = scale * cplx(gray_level[(bits >> 2) & 3], gray_level[bits & 3]);
    return c;
  }();
  return points;
}

SymbolFrame generate_symbols(std::size_t n, int num_channels, std::uint64_t seed,
                             double symbol_rate) {
  if (n == 0 || num_channels <= 0)
    throw std::invalid_argument("generate_symbols: need n > 0 and num_channels > 0");
  const auto& alphabet = qam16_constellation();
  SymbolFrame frame;
  frame.symbol_rate = symbol_rate;
  frame.channels.resize(num_channels);
  for (int ch = 0; ch < num_channels; ++ch) {
    for (int pol = 0; pol < 2; ++pol) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(ch), pol));
      auto& seq = frame.channels[ch][pol];
      seq.resize(n);
      for (std::size_t i = 0; i < n; ++i) seq[i] = alphabet[(rng() >> 33) & 0xF];
    }
  }
  return frame;
}

std::vector<double> rrc_mask(std::size_t n, double sample_rate, double symbol_rate,
                             double rolloff, double gain) {
  std::vector<double> mask(n, 0.0);
  const double df = sample_rate / static_cast<double>(n);
  const double f1 = (1.0 - rolloff) * symbol_rate / 2.0;
  const double f2 = (1.0 + rolloff) * symbol_rate / 2.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double f = std::abs(centered_bin(static_cast<int>(j), static_cast<int>(n)) * df);
    double rc = 0.0;
    if (f <= f1)
      rc = 1.0;
    else if (f < f2)
      rc = 0.5 * (1.0 + std::cos(kPi / (rolloff * symbol_rate) * (f - f1)));
    mask[j] = gain * std::sqrt(rc);
  }
  return mask;
}

DualPolSignal rrc_shape(const std::vector<cplx>& symbols_x, const std::vector<cplx>& symbols_y,
                        double symbol_rate, double rolloff, int sps) {
  if (sps < 2) throw std::invalid_argument("rrc_shape: sps < 2 would alias the pulse");
  if (!(rolloff > 0.0 && rolloff <= 1.0))
    throw std::invalid_argument("rrc_shape: rolloff must be in (0, 1]");
  if (symbols_x.empty() || symbols_x.size() != symbols_y.size())
    throw std::invalid_argument("rrc_shape: empty or mismatched symbol sequences");

  const std::size_t n_sym = symbols_x.size();
  const std::size_t n = n_sym * static_cast<std::size_t>(sps);
  const double fs = symbol_rate * sps;
  // Peak gain sps makes the shifted pulses orthonormal on the circular grid,
  // so output power equals the symbol power for every sequence.
  const auto mask = rrc_mask(n, fs, symbol_rate, rolloff, static_cast<double>(sps));

  DualPolSignal out;
  out.sample_rate = fs;
  auto shape_pol = [&](const std::vector<cplx>& sym) {
    std::vector<cplx> buf(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n_sym; ++k) buf[k * sps] = sym[k];
    fft::forward(buf);
    for (std::size_t j = 0; j < n; ++j) buf[j] *= mask[j];
    fft::inverse(buf);
    return buf;
  };
  out.x = shape_pol(symbols_x);
  out.y = shape_pol(symbols_y);
  return out;
}

std::vector<DualPolSignal> shape_channels(const SymbolFrame& frame, double rolloff, int sps) {
  frame.validate();
  std::vector<DualPolSignal> out;
  out.reserve(frame.num_channels());
  for (const auto& ch : frame.channels)
    out.push_back(rrc_shape(ch[0], ch[1], frame.symbol_rate, rolloff, sps));
  return out;
}

DualPolSignal wdm_mux(const std::vector<DualPolSignal>& channels, double spacing,
                      double occupied_halfwidth) {
  if (channels.empty()) throw std::invalid_argument("wdm_mux: no channels");
  const std::size_t n = channels[0].size();
  const double fs = channels[0].sample_rate;
  for (const auto& ch : channels)
    if (ch.size() != n || ch.sample_rate != fs)
      throw std::invalid_argument("wdm_mux: channels must share grid and sample rate");

  const int count = static_cast<int>(channels.size());
  DualPolSignal out;
  out.sample_rate = fs;
  out.x.assign(n, cplx(0.0, 0.0));
  out.y.assign(n, cplx(0.0, 0.0));

  const double df = fs / static_cast<double>(n);
  for (int idx = 0; idx < count; ++idx) {
    const int k = idx - (count - 1) / 2;
    const double offset = k * spacing;
    if (std::abs(offset) + occupied_halfwidth > fs / 2.0 + 1e-6)
      throw std::invalid_argument("wdm_mux: channel offset overflows the sample grid");
    const double bins = offset / df;
    const long rounded = std::lround(bins);
    if (std::abs(bins - rounded) < 1e-9) {
      // Exact spectral index rotation.
      auto shift_pol = [&](const std::vector<cplx>& in, std::vector<cplx>& acc) {
        std::vector<cplx> spec(in);
        fft::forward(spec);
        std::vector<cplx> shifted(n);
        for (std::size_t j = 0; j < n; ++j) {
          const long src = (static_cast<long>(j) - rounded % static_cast<long>(n) +
                            static_cast<long>(n)) %
                           static_cast<long>(n);
          shifted[j] = spec[src];
        }
        fft::inverse(shifted);
        for (std::size_t j = 0; j < n; ++j) acc[j] += shifted[j];
      };
      shift_pol(channels[idx].x, out.x);
      shift_pol(channels[idx].y, out.y);
    } else {
      const double dt = 1.0 / fs;
      for (std::size_t j = 0; j < n; ++j) {
        const cplx ramp = phasor(2.0 * kPi * offset * dt * static_cast<double>(j));
        out.x[j] += channels[idx].x[j] * ramp;
        out.y[j] += channels[idx].y[j] * ramp;
      }
    }
  }
  return out;
}

DualPolSignal set_power(const DualPolSignal& signal, double p_dbm_per_channel,
                        int num_channels) {
  const double current = signal.power();
  if (!(current > 0.0)) throw std::invalid_argument("set_power: zero-power input");
  const double target = num_channels * dbm_to_watt(p_dbm_per_channel);
  const double scale = std::sqrt(target / current);
  DualPolSignal out(signal);
  for (auto& v : out.x) v *= scale;
  for (auto& v : out.y) v *= scale;
  return out;
}

TxOutput transmit(const TxConfig& cfg, std::size_t frame_symbols, std::uint64_t seed) {
  cfg.validate();
  TxOutput out;
  out.symbols = generate_symbols(frame_symbols, cfg.num_channels, seed, cfg.symbol_rate);
  const auto shaped = shape_channels(out.symbols, cfg.rolloff, cfg.samples_per_symbol);
  const double halfwidth = cfg.symbol_rate * (1.0 + cfg.rolloff) / 2.0;
  DualPolSignal mux =
      cfg.num_channels == 1 ? shaped[0] : wdm_mux(shaped, cfg.channel_spacing, halfwidth);
  mux.sample_rate = cfg.sample_rate();
  out.signal = set_power(mux, cfg.power_dbm_per_channel, cfg.num_channels);
  return out;
}

}  // namespace vao
