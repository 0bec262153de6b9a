#include "vao/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace vao {

void KernelParams::validate() const {
  if (num_spans < 1) throw std::invalid_argument("KernelParams: num_spans must be >= 1");
  if (!(span_length > 0.0)) throw std::invalid_argument("KernelParams: span_length must be > 0");
  if (alpha < 0.0) throw std::invalid_argument("KernelParams: alpha must be >= 0");
}

void FrequencyGrid::validate() const {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("FrequencyGrid: n must be positive and even");
  if (!(delta_omega > 0.0)) throw std::invalid_argument("FrequencyGrid: delta_omega must be > 0");
}

namespace {

// (1 - e^{-w L}) / w with w = alpha - j*beta2*dOmega. Series below |wL|~1e-3
// where the direct form loses digits to cancellation.
cplx span_integral(double alpha, double beta2_dOmega, double length) {
  const cplx w(alpha, -beta2_dOmega);
  const cplx wl = w * length;
  if (std::abs(wl) < 1e-3) {
    const cplx wl2 = wl * wl;
    return length * (1.0 - wl / 2.0 + wl2 / 6.0 - wl2 * wl / 24.0 + wl2 * wl2 / 120.0);
  }
  const cplx decay = std::exp(-alpha * length) * phasor(beta2_dOmega * length);
  return (1.0 - decay) / w;
}

}  // namespace

cplx fwm_efficiency(double dOmega, const KernelParams& p) {
  return span_integral(p.alpha, p.beta2 * dOmega, p.span_length);
}

cplx phased_array(int num_spans, double dOmega, const KernelParams& p) {
  if (num_spans < 1) throw std::invalid_argument("phased_array: num_spans must be >= 1");
  const double theta = p.beta2 * dOmega * p.span_length;
  cplx acc(0.0, 0.0);
  for (int n = 0; n < num_spans; ++n) acc += phasor(theta * n);
  return acc;
}

namespace {

// Geometric closed form of the phased array; falls back to the direct sum
// near sin(theta/2) = 0 (includes the phase-matched revivals).
cplx phased_array_closed(int num_spans, double theta) {
  const double s = std::sin(theta / 2.0);
  if (std::abs(s) < 1e-9) {
    cplx acc(0.0, 0.0);
    for (int n = 0; n < num_spans; ++n) acc += phasor(theta * n);
    return acc;
  }
  const double ratio = std::sin(num_spans * theta / 2.0) / s;
  return ratio * phasor((num_spans - 1) * theta / 2.0);
}

}  // namespace

cplx opc_kernel_g(double dOmega, const KernelParams& p) {
  const cplx f = fwm_efficiency(dOmega, p);
  return f * phasor(-p.beta2 * dOmega * p.span_length) - std::conj(f);
}

cplx backward_kernel(double dOmega, const KernelParams& p, BackwardKernel which) {
  const double b = p.beta2 * dOmega;
  const double t = b * p.span_length;
  const double gl = p.alpha * p.span_length;  // span gain exponent
  if (which == BackwardKernel::f_prime) {
    // Reuses the stable span integral: F' = e^{alpha L} * F * e^{-j t}.
    return std::exp(gl) * span_integral(p.alpha, b, p.span_length) * phasor(-t);
  }
  const double denom = p.alpha * p.alpha + b * b;
  const cplx num = (phasor(t) * std::exp(gl) - 1.0) * cplx(p.alpha, -b) +
                   (phasor(t) - std::exp(gl)) * cplx(p.alpha, b);
  if (denom < 1e-30) {
    // alpha = 0, dOmega = 0: both brackets vanish identically.
    return cplx(0.0, 0.0);
  }
  return num / denom;
}

KernelTensor::KernelTensor(FrequencyGrid grid, KernelParams params, KernelMode mode)
    : grid_(grid), params_(params), mode_(mode) {
  grid_.validate();
  params_.validate();
  if ((mode == KernelMode::vao_forward || mode == KernelMode::vao_backward) &&
      params_.num_spans % 2 != 0)
    throw std::invalid_argument("KernelTensor: VAO modes need an even span count");
  max_m_ = static_cast<long long>(grid_.n - 1) * static_cast<long long>(grid_.n - 1);
  memo_.resize(static_cast<std::size_t>(max_m_) + 1);
  for (long long m = 0; m <= max_m_; ++m) memo_[static_cast<std::size_t>(m)] = eval(m);
}

cplx KernelTensor::eval(long long m) const {
  const double dOmega = static_cast<double>(m) * grid_.delta_omega * grid_.delta_omega;
  const double theta = params_.beta2 * dOmega * params_.span_length;
  switch (mode_) {
    case KernelMode::vsfe_forward:
      return fwm_efficiency(dOmega, params_) * phased_array_closed(params_.num_spans, theta);
    case KernelMode::vsfe_backward:
      return fwm_efficiency(dOmega, params_) * phasor(-theta) *
             std::conj(phased_array_closed(params_.num_spans, theta));
    case KernelMode::vao_forward:
    case KernelMode::vao_backward:
      return opc_kernel_g(dOmega, params_) *
             std::conj(phased_array_closed(params_.num_spans / 2, theta));
    case KernelMode::per_span:
      return fwm_efficiency(dOmega, params_) * phasor(-theta);
  }
  throw std::logic_error("KernelTensor: unknown mode");
}

cplx KernelTensor::at_product(long long m) const {
  if (m >= 0) {
    if (m > max_m_) throw std::out_of_range("KernelTensor: product index beyond grid");
    return memo_[static_cast<std::size_t>(m)];
  }
  if (-m > max_m_) throw std::out_of_range("KernelTensor: product index beyond grid");
  return std::conj(memo_[static_cast<std::size_t>(-m)]);
}

cplx KernelTensor::value(int k, int i, int l) const {
  const int half = grid_.n / 2;
  if (k < -half || k >= half || i < -half || i >= half || l < -half || l >= half)
    throw std::out_of_range("KernelTensor: centered index out of range");
  return at_product(static_cast<long long>(k - l) * static_cast<long long>(i - l));
}

std::shared_ptr<const KernelTensor> shared_kernel_tensor(const FrequencyGrid& grid,
                                                         const KernelParams& params,
                                                         KernelMode mode) {
  using Key = std::tuple<int, double, double, double, double, int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const KernelTensor>> cache;
  const Key key{grid.n,          grid.delta_omega, params.alpha, params.beta2,
                params.span_length, params.num_spans, static_cast<int>(mode)};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto tensor = std::make_shared<const KernelTensor>(grid, params, mode);
  cache.emplace(key, tensor);
  return tensor;
}

KernelSurface render_kernel_surface(const KernelParams& params, int points,
                                    double omega_half_range, SurfaceMode mode,
                                    double omega_fixed) {
  params.validate();
  if (points < 2) throw std::invalid_argument("render_kernel_surface: need at least 2 points");
  if (!(omega_half_range > 0.0))
    throw std::invalid_argument("render_kernel_surface: range must be > 0");
  if (mode == SurfaceMode::opc && params.num_spans % 2 != 0)
    throw std::invalid_argument("render_kernel_surface: OPC surface needs an even span count");

  KernelSurface out;
  out.omega1.resize(points);
  out.omega2.resize(points);
  const double step = 2.0 * omega_half_range / (points - 1);
  for (int i = 0; i < points; ++i) out.omega1[i] = -omega_half_range + i * step;
  out.omega2 = out.omega1;

  auto no_opc_mag = [&](double dOmega) {
    const double theta = params.beta2 * dOmega * params.span_length;
    return std::abs(fwm_efficiency(dOmega, params) *
                    phased_array_closed(params.num_spans, theta));
  };
  auto opc_mag = [&](double dOmega) {
    const double theta = params.beta2 * dOmega * params.span_length;
    return std::abs(opc_kernel_g(dOmega, params) *
                    phased_array_closed(params.num_spans / 2, theta));
  };

  double peak = 0.0;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      const double dOmega = (omega_fixed - out.omega2[j]) * (out.omega1[i] - out.omega2[j]);
      peak = std::max(peak, no_opc_mag(dOmega));
    }
  out.no_opc_peak = peak;

  out.values.assign(points, std::vector<double>(points, 0.0));
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      const double dOmega = (omega_fixed - out.omega2[j]) * (out.omega1[i] - out.omega2[j]);
      const double mag = mode == SurfaceMode::no_opc ? no_opc_mag(dOmega) : opc_mag(dOmega);
      out.values[i][j] = mag / peak;
    }
  return out;
}

}  // namespace vao
