#pragma once

#include <functional>
#include <vector>

#include "vao/channel.hpp"
#include "vao/kernels.hpp"
#include "vao/signal.hpp"

namespace vao {

enum class EqVariant { edc, vsfe_single, vsfe_recursive, vao, dbp_ideal };

struct EqualizerConfig {
  int window_symbols = 512;
  int samples_per_symbol = 6;
  int discard_per_side = 128;  // symbols
  EqVariant variant = EqVariant::vsfe_single;
  int dbp_steps_per_span = 100;
  /// Cyclic wrap of the mixing-product index on the periodic window grid;
  /// false clamps (drops) products falling outside the grid.
  bool cyclic_indexing = true;

  int window_samples() const { return window_symbols * samples_per_symbol; }
  void validate() const;
};

/// Per-bin complex correction over a window grid, centered bin order.
struct NonlinearCorrection {
  std::vector<cplx> ax;
  std::vector<cplx> ay;
};

/// Electronic dispersion compensation: per-bin all-pass
/// exp(-j beta2 w^2 L / 2) on the whole frame grid.
DualPolSignal edc(const DualPolSignal& signal, double beta2, double length);

/// Third-order correction of the window spectra (centered order, plain DFT
/// scaling):
///
///   a_k = -j (8/9) gamma / N^2 * sum_{i,l} H[(k-l)(i-l)]
///         [ conj(s_{X,i}) s_{X,l} s_{X,k+i-l} + conj(s_{Y,i}) s_{Y,l} s_{X,k+i-l} ]
///
/// (a_Y by X<->Y swap; the bracket is polarization-symmetric). H is the
/// tensor's channel kernel; the third index wraps cyclically (or clamps).
/// The sum is the exact discretization of the continuous third-order
/// integral on the window grid; the 1/N^2 absorbs the DFT scaling so no
/// other normalization constant appears.
///
/// Evaluated exactly in O(N^2 log N): for each index offset p = i - l the
/// inner sum over l is a linear convolution of q_p(l) = conj(s_{l+p}) s_l
/// with the kernel row H[d p], done by FFT; negative offsets reuse positive
/// ones through C_{-p}(k) = conj(C_p(k-p)) (kernel Hermitian in dOmega).
NonlinearCorrection volterra_correction(const std::vector<cplx>& sx,
                                        const std::vector<cplx>& sy,
                                        const KernelTensor& tensor, double gamma,
                                        bool cyclic = true);

/// volterra_correction with a VSFE-backward tensor.
NonlinearCorrection vsfe_correction(const std::vector<cplx>& sx, const std::vector<cplx>& sy,
                                    const KernelTensor& tensor, double gamma,
                                    bool cyclic = true);

/// volterra_correction with a VAO-backward tensor. On the conjugated-channel
/// output, the mirrored-and-conjugated transmit-side signal kernel reduces to
/// the plain triple product of the received spectra, so the engine is shared;
/// the OPC undo (time-domain conjugation) is a separate chain stage.
NonlinearCorrection vao_correction(const std::vector<cplx>& sx, const std::vector<cplx>& sy,
                                   const KernelTensor& tensor, double gamma,
                                   bool cyclic = true);

/// Overlap-save block driver: applies the transform to cyclic windows
/// advancing by (window - 2 discard) symbols and keeps each window's central
/// region. The transform mutates the time-domain window in place.
using WindowFn = std::function<void(std::vector<cplx>& wx, std::vector<cplx>& wy)>;
DualPolSignal windowed_process(const DualPolSignal& signal, const WindowFn& fn,
                               const EqualizerConfig& cfg);

/// Single-step VSFE over the whole link: per window, spectra + correction,
/// then accumulated-dispersion removal.
DualPolSignal vsfe_equalize(const DualPolSignal& rx, const Link& link,
                            const EqualizerConfig& cfg);

/// VAO equalizer: per window, spectra + correction with the OPC-channel
/// residual kernel over N_s/2 spans. No dispersion stage (the mid-link OPC
/// already cancelled it); the receiver chain conjugates afterwards.
DualPolSignal vao_equalize(const DualPolSignal& rx, const Link& link,
                           const EqualizerConfig& cfg);

/// Recursive per-span VSFE: N_s iterations of single-span correction plus
/// one span of dispersion removal; after each iteration the window is
/// rescaled to its pre-correction energy (energy-divergence control).
DualPolSignal vsfe_recursive(const DualPolSignal& rx, const Link& link,
                             const EqualizerConfig& cfg);

/// Full-field split-step backpropagation of the virtual reversed link. For a
/// link with mid-link OPC the receiver-side conjugation is applied first and
/// the already-conjugated half backpropagates with unflipped dispersion and
/// nonlinearity signs.
DualPolSignal dbp_ideal(const DualPolSignal& rx, const Link& link, int steps_per_span = 100);

struct DiscardCalibration {
  int discard_symbols = 0;
  bool converged = false;
  double metric_db = 0.0;
};

/// Smallest per-side discard for which the metric moves by less than
/// tolerance_db when the discard grows by one step. Non-convergence before
/// window/2 is reported, not thrown.
DiscardCalibration discard_calibration(
    const DualPolSignal& rx,
    const std::function<DualPolSignal(const DualPolSignal&, const EqualizerConfig&)>& equalize,
    EqualizerConfig cfg, const std::function<double(const DualPolSignal&)>& metric_db,
    double tolerance_db = 0.05, int step_symbols = 8);

}  // namespace vao
