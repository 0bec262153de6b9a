#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "vao/kernels.hpp"
#include "vao/signal.hpp"

namespace vao {

struct FiberSpan {
  double alpha = 0.0;   // power attenuation, Np/m (power profile e^{-alpha z})
  double beta2 = 0.0;   // s^2/m, signed
  double gamma = 0.0;   // 1/(W*m)
  double length = 0.0;  // m

  void validate() const;
};

struct Amplifier {
  double gain_db = 0.0;
  double noise_figure_db = 5.0;
  bool ase_enabled = false;
  double reference_frequency = kSpeedOfLight / kRefWavelength;  // Hz

  void validate() const;
};

/// Span/amplifier sequence with an optional ideal mid-link phase conjugator.
struct Link {
  std::vector<std::pair<FiberSpan, Amplifier>> spans;
  std::optional<std::size_t> opc_after_span;  // mid-link: spans.size()/2
  int steps_per_span = 100;

  std::size_t num_spans() const { return spans.size(); }
  double total_length() const;
  /// The common span of a uniform link (throws if spans differ).
  const FiberSpan& uniform_span() const;
  KernelParams kernel_params() const;
  void validate() const;
};

/// Uniform EDFA-amplified link with gain equal to span loss.
Link make_edfa_link(int num_spans, const FiberSpan& span, double noise_figure_db,
                    bool ase_enabled, bool mid_link_opc, int steps_per_span = 100);

/// Symmetrized split-step solution of the Manakov equation over one span.
/// Linear operator: dispersion + loss in the frequency domain; nonlinear
/// operator: (8/9) gamma (|x|^2 + |y|^2) phase rotation on both polarizations.
DualPolSignal ssfm_propagate(const DualPolSignal& signal, const FiberSpan& span, int steps);

/// Field gain 10^{gain/20}; when ASE is on, adds circular complex white
/// Gaussian noise with PSD (G - 1) n_sp h nu per polarization,
/// n_sp = 10^{NF/10} / 2.
DualPolSignal amplify(const DualPolSignal& signal, const Amplifier& amp, std::mt19937_64& rng);

/// Ideal optical phase conjugation: samplewise conjugate, spectrum mirrored.
DualPolSignal opc_conjugate(const DualPolSignal& signal);

/// Sequential span propagation + amplification with the OPC inserted after
/// opc_after_span spans when configured.
DualPolSignal propagate_link(const DualPolSignal& signal, const Link& link,
                             std::mt19937_64& rng);

namespace detail {
/// Symmetrized split-step with explicitly signed parameters; virtual spans
/// for backpropagation may carry negative alpha/beta2/gamma.
DualPolSignal ssfm_signed(const DualPolSignal& signal, double alpha, double beta2,
                          double gamma, double length, int steps);
}  // namespace detail

}  // namespace vao
