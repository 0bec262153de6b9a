#include "vao/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vao {
namespace {

// (1 - e^{-(alpha - j x) L}) / (alpha - j x), series near the singularity;
// same primitive as the FWM efficiency.
cplx decay_integral(double alpha, double x, double length) {
  const cplx w(alpha, -x);
  const cplx wl = w * length;
  if (std::abs(wl) < 1e-3) {
    const cplx wl2 = wl * wl;
    return length * (1.0 - wl / 2.0 + wl2 / 6.0 - wl2 * wl / 24.0 + wl2 * wl2 / 120.0);
  }
  return (1.0 - std::exp(-alpha * length) * phasor(x * length)) / w;
}

}  // namespace

PowerProfile::PowerProfile(std::vector<ProfileSegment> segments, int num_spans,
                           double span_length)
    : segments_(std::move(segments)), num_spans_(num_spans), span_length_(span_length) {
  if (num_spans_ < 1 || !(span_length_ > 0.0))
    throw std::invalid_argument("PowerProfile: invalid span geometry");
  if (segments_.empty()) throw std::invalid_argument("PowerProfile: no segments");
  double z = 0.0;
  for (const auto& s : segments_) {
    if (std::abs(s.z0 - z) > 1e-6 || !(s.length > 0.0))
      throw std::invalid_argument("PowerProfile: segments must tile [0, L] contiguously");
    if (!(s.p_start > 0.0)) throw std::invalid_argument("PowerProfile: power must stay > 0");
    if (!(s.p_start * std::exp(-s.alpha * s.length) > 0.0))
      throw std::invalid_argument("PowerProfile: power must stay > 0");
    z = s.z0 + s.length;
  }
  if (std::abs(z - total_length()) > 1e-6)
    throw std::invalid_argument("PowerProfile: segments do not cover num_spans * span_length");
}

PowerProfile PowerProfile::edfa_link(int num_spans, double span_length, double alpha) {
  std::vector<ProfileSegment> segs;
  segs.reserve(num_spans);
  for (int n = 0; n < num_spans; ++n)
    segs.push_back({n * span_length, span_length, alpha, 1.0});
  return PowerProfile(std::move(segs), num_spans, span_length);
}

PowerProfile PowerProfile::lossless(int num_spans, double span_length) {
  return edfa_link(num_spans, span_length, 0.0);
}

PowerProfile PowerProfile::mirrored_gain_loss(int num_spans, double span_length, double alpha) {
  if (num_spans % 2 != 0)
    throw std::invalid_argument("mirrored_gain_loss: span count must be even");
  const double half = num_spans * span_length / 2.0;
  std::vector<ProfileSegment> segs;
  segs.push_back({0.0, half, -alpha, 1.0});
  segs.push_back({half, half, alpha, std::exp(alpha * half)});
  return PowerProfile(std::move(segs), num_spans, span_length);
}

const ProfileSegment& PowerProfile::segment_left_of(double z) const {
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    if (z > it->z0 + 1e-9) return *it;
  return segments_.front();
}

const ProfileSegment& PowerProfile::segment_right_of(double z) const {
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    if (z >= it->z0 - 1e-9) return *it;
  return segments_.front();
}

double PowerProfile::at_left(double z) const {
  const auto& s = segment_left_of(z);
  return s.p_start * std::exp(-s.alpha * (z - s.z0));
}

double PowerProfile::at_right(double z) const {
  const auto& s = segment_right_of(z);
  return s.p_start * std::exp(-s.alpha * (z - s.z0));
}

double PowerProfile::alpha_at_left(double z) const { return segment_left_of(z).alpha; }
double PowerProfile::alpha_at_right(double z) const { return segment_right_of(z).alpha; }

cplx PowerProfile::weighted_integral(double z_from, double z_to, double x) const {
  if (z_from < -1e-6 || z_to > total_length() + 1e-6 || z_from > z_to)
    throw std::invalid_argument("PowerProfile: integral bounds outside profile");
  cplx acc(0.0, 0.0);
  for (const auto& s : segments_) {
    const double a = std::max(z_from, s.z0);
    const double b = std::min(z_to, s.z0 + s.length);
    if (b <= a + 1e-12) continue;
    // P(z) e^{jxz} on [a,b]: pull out the value and phase at a.
    const double p_a = s.p_start * std::exp(-s.alpha * (a - s.z0));
    acc += p_a * phasor(x * a) * decay_integral(s.alpha, x, b - a);
  }
  return acc;
}

cplx lambda_sum(const PowerProfile& profile, int half_spans, double beta2, double dOmega) {
  if (half_spans < 1 || half_spans > profile.num_spans())
    throw std::invalid_argument("lambda_sum: half_spans outside profile");
  const double tau = half_spans * profile.span_length();
  return profile.weighted_integral(0.0, tau, beta2 * dOmega);
}

cplx psi_sum(const PowerProfile& profile, int half_spans, double beta2, double dOmega) {
  if (2 * half_spans != profile.num_spans())
    throw std::invalid_argument("psi_sum: profile must cover exactly 2 * half_spans spans");
  const double tau = half_spans * profile.span_length();
  const double x = beta2 * dOmega;
  return phasor(-x * 2.0 * tau) * profile.weighted_integral(tau, 2.0 * tau, x);
}

cplx residual_kernel_gamma(const PowerProfile& profile, int num_spans, double beta2,
                           double dOmega) {
  if (num_spans != profile.num_spans() || num_spans % 2 != 0)
    throw std::invalid_argument(
        "residual_kernel_gamma: profile/num_spans mismatch or odd span count");
  const int half = num_spans / 2;
  return psi_sum(profile, half, beta2, dOmega) -
         std::conj(lambda_sum(profile, half, beta2, dOmega));
}

SymmetryReport symmetry_predicates(const PowerProfile& profile, double rel_tol) {
  const int ns = profile.num_spans();
  const double ls = profile.span_length();
  SymmetryReport rep;
  if (ns % 2 != 0) return rep;  // conditions are defined for mid-link operation

  auto close = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
  };
  auto close_abs = [rel_tol, ls](double a, double b) {
    // alpha comparisons: scale by 1/L_s so "zero vs zero" passes cleanly
    return std::abs(a - b) * ls <= rel_tol * std::max(std::abs(a * ls) + std::abs(b * ls), 1.0);
  };

  rep.power_mirror_minus = rep.power_mirror_plus = true;
  rep.alpha_mirror_minus = rep.alpha_mirror_plus = true;
  for (int n = 1; n <= ns / 2; ++n) {
    rep.power_mirror_minus &=
        close(profile.at_left((ns - n) * ls), profile.at_right((n - 1) * ls));
    rep.power_mirror_plus &= close(profile.at_right((ns - n - 1) * ls), profile.at_left(n * ls));
    rep.alpha_mirror_minus &=
        close_abs(profile.alpha_at_left((ns - n) * ls), -profile.alpha_at_right((n - 1) * ls));
    rep.alpha_mirror_plus &=
        close_abs(profile.alpha_at_right((ns - n - 1) * ls), -profile.alpha_at_left(n * ls));
  }

  // Scalar asymmetry: midpoint-sampled L1 distance between P(u) and the
  // mirrored P(2 tau - u), normalized by the profile mass.
  const double tau = profile.total_length() / 2.0;
  const int samples = 4096;
  const double du = tau / samples;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double u = (i + 0.5) * du;
    const double pu = profile.at_right(u);
    const double pm = profile.at_left(2.0 * tau - u);
    num += std::abs(pm - pu) * du;
    den += (pu + pm) * du;
  }
  rep.asymmetry_norm = den > 0.0 ? num / (den / 2.0) : 0.0;
  return rep;
}

}  // namespace vao
