#pragma once

#include <memory>
#include <vector>

#include "vao/constants.hpp"

namespace vao {

/// Uniform-span link parameters entering the analytical kernels.
struct KernelParams {
  double alpha = 0.0;        // power attenuation, Np/m
  double beta2 = 0.0;        // s^2/m (signed)
  double span_length = 0.0;  // m
  int num_spans = 1;

  void validate() const;
};

/// Frequency grid of a processing window: n even bins at delta_omega rad/s,
/// centered indices -n/2 .. n/2-1.
struct FrequencyGrid {
  int n = 0;
  double delta_omega = 0.0;  // rad/s

  void validate() const;
};

/// Single-span four-wave-mixing efficiency as a function of the phase-match
/// product dOmega = (w - w2)(w1 - w2):
///
///   F(dOmega) = (1 - e^{-alpha*L} e^{j*beta2*dOmega*L}) / (alpha - j*beta2*dOmega)
///             = integral_0^L e^{-alpha z} e^{j beta2 dOmega z} dz
///
/// Evaluated by series expansion near the removable singularity so the
/// lossless / phase-matched limits stay finite. F(0) is the span effective
/// length (1 - e^{-alpha*L})/alpha.
cplx fwm_efficiency(double dOmega, const KernelParams& p);

/// Coherent per-span accumulation factor over num_spans spans:
///   Xi(N, dOmega) = sum_{n=1..N} e^{+j*beta2*dOmega*(n-1)*L}.
/// Direct summation; exact at phase-matched revivals.
cplx phased_array(int num_spans, double dOmega, const KernelParams& p);

/// Residual nonlinear kernel of a mid-link conjugated span pair:
///   G(dOmega) = F(dOmega) e^{-j*beta2*dOmega*L} - conj(F(dOmega)).
/// Identically zero at dOmega = 0 and Hermitian in dOmega. The expanded
/// rational form
///   [(e^{-j t}e^{-aL}-1)(aL' - j t') + (e^{-j t}-e^{-aL})(aL' + j t')] / (a^2 + (b2 dOmega)^2)
/// is algebraically the same; the F-based form avoids the cancellation.
cplx opc_kernel_g(double dOmega, const KernelParams& p);

enum class BackwardKernel { f_prime, g_prime };

/// Backward-direction kernels with sign-flipped loss/dispersion exponents:
///   F'(dOmega) = (1 - e^{+alpha L} e^{-j beta2 dOmega L}) / (j beta2 dOmega - alpha)
///   G'(dOmega) = [(e^{+j t}e^{+aL}-1)(alpha - j b) + (e^{+j t}-e^{+aL})(alpha + j b)] / (alpha^2 + b^2)
/// with t = beta2*dOmega*L, b = beta2*dOmega. These are referenced to the
/// pre-amplifier plane; the receiver-side correction kernel used by the
/// equalizers is e^{-alpha L} * F' (see KernelTensor).
cplx backward_kernel(double dOmega, const KernelParams& p, BackwardKernel which);

/// Which channel kernel a tensor evaluates, as f*xi or g*xi products.
enum class KernelMode {
  vsfe_forward,   // F(dOmega) * Xi(N_s)                   : forward channel kernel
  vsfe_backward,  // F(dOmega) e^{-j beta2 dOmega L} * conj(Xi(N_s)) : receiver correction
  vao_forward,    // G(dOmega) * conj(Xi(N_s/2))           : OPC-channel residual kernel
  vao_backward,   // same values as vao_forward (self-inverse to first order
                  // in received-field coordinates)
  per_span,       // F(dOmega) e^{-j beta2 dOmega L}       : single-span correction, Xi = 1
};

/// Discretized channel kernel over a window grid. Entries depend on the
/// centered indices (k, i, l) only through the integer product
/// m = (k - l)(i - l); values are memoized once per distinct m, which
/// collapses storage from O(N^3) to O(N^2) with exact equality between
/// triples sharing the same m.
class KernelTensor {
 public:
  KernelTensor(FrequencyGrid grid, KernelParams params, KernelMode mode);

  /// Kernel value at centered indices k, i, l in [-n/2, n/2-1].
  cplx value(int k, int i, int l) const;

  /// Kernel value for the integer product m, i.e. at dOmega = m * delta_omega^2.
  cplx at_product(long long m) const;

  const FrequencyGrid& grid() const { return grid_; }
  const KernelParams& params() const { return params_; }
  KernelMode mode() const { return mode_; }

 private:
  cplx eval(long long m) const;

  FrequencyGrid grid_;
  KernelParams params_;
  KernelMode mode_;
  long long max_m_ = 0;
  std::vector<cplx> memo_;  // index m >= 0; negative m via conjugation
};

/// Process-wide tensor cache: kernels are immutable and expensive to build at
/// production window sizes, so experiments share them.
std::shared_ptr<const KernelTensor> shared_kernel_tensor(const FrequencyGrid& grid,
                                                         const KernelParams& params,
                                                         KernelMode mode);

enum class SurfaceMode { no_opc, opc };

/// |kernel(omega_fixed, w1, w2)| over a square grid of angular frequencies,
/// normalized by the maximum of the no-OPC kernel on the same grid.
struct KernelSurface {
  std::vector<double> omega1;  // rad/s, rows
  std::vector<double> omega2;  // rad/s, columns
  std::vector<std::vector<double>> values;
  double no_opc_peak = 0.0;  // pre-normalization peak of |F*Xi(N_s)|
};

KernelSurface render_kernel_surface(const KernelParams& params, int points,
                                    double omega_half_range, SurfaceMode mode,
                                    double omega_fixed = 0.0);

}  // namespace vao
