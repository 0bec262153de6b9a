#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vao/constants.hpp"

namespace vao {

/// Sampled complex baseband field on two polarizations. |x|^2 + |y|^2 is the
/// instantaneous power in W. center_offset is the frequency of the grid
/// center relative to the multiplex center.
struct DualPolSignal {
  std::vector<cplx> x;
  std::vector<cplx> y;
  double sample_rate = 0.0;    // Hz
  double center_offset = 0.0;  // Hz

  std::size_t size() const { return x.size(); }
  double duration() const { return static_cast<double>(x.size()) / sample_rate; }

  /// Mean of |x|^2 + |y|^2 over the frame, in W.
  double power() const;

  /// Throws std::invalid_argument if the basic invariants are violated.
  void validate() const;
};

/// Per-channel, per-polarization symbol sequences (pol 0 = X, 1 = Y),
/// normalized to unit average symbol energy.
struct SymbolFrame {
  std::vector<std::array<std::vector<cplx>, 2>> channels;
  double symbol_rate = 0.0;  // Hz

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_symbols() const { return channels.empty() ? 0 : channels[0][0].size(); }
  void validate() const;
};

struct TxConfig {
  int num_channels = 5;
  double symbol_rate = 32e9;        // Hz
  double channel_spacing = 32.5e9;  // Hz
  double rolloff = 0.01;
  int samples_per_symbol = 6;
  double power_dbm_per_channel = 0.0;
  std::uint64_t seed = 1;

  double sample_rate() const { return symbol_rate * samples_per_symbol; }
  /// Channel center offset in Hz for channel index k (k = 0 is the center,
  /// negative k below it). For odd channel counts the offsets are integer
  /// multiples of the spacing.
  double channel_offset(int k) const { return k * channel_spacing; }
  /// Signed index of list position idx (0-based) within the multiplex.
  int signed_index(int idx) const { return idx - (num_channels - 1) / 2; }

  void validate() const;
};

}  // namespace vao
