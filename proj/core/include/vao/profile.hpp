#pragma once

#include <vector>

#include "vao/constants.hpp"
#include "vao/kernels.hpp"

namespace vao {

/// One piecewise-exponential segment of a link power profile:
/// P(z) = p_start * e^{-alpha (z - z0)} on [z0, z0 + length). Lumped gains
/// are jumps of p_start between consecutive segments.
struct ProfileSegment {
  double z0 = 0.0;
  double length = 0.0;
  double alpha = 0.0;    // Np/m, may be negative (gain segment)
  double p_start = 1.0;  // normalized power entering the segment
};

/// Normalized link power profile P(z) over num_spans spans of span_length.
class PowerProfile {
 public:
  PowerProfile(std::vector<ProfileSegment> segments, int num_spans, double span_length);

  /// Uniform-loss spans with power restored to 1 at every span start.
  static PowerProfile edfa_link(int num_spans, double span_length, double alpha);
  /// Flat lossless profile.
  static PowerProfile lossless(int num_spans, double span_length);
  /// Two-segment profile, gain (rate -alpha) over the first half then the
  /// mirrored loss over the second half; satisfies the OPC symmetry
  /// conditions by construction.
  static PowerProfile mirrored_gain_loss(int num_spans, double span_length, double alpha);

  int num_spans() const { return num_spans_; }
  double span_length() const { return span_length_; }
  double total_length() const { return num_spans_ * span_length_; }
  const std::vector<ProfileSegment>& segments() const { return segments_; }

  /// One-sided power samples. at_left(z) evaluates in the segment ending at
  /// z, at_right(z) in the segment starting at z.
  double at_left(double z) const;
  double at_right(double z) const;
  double alpha_at_left(double z) const;
  double alpha_at_right(double z) const;

  /// integral_{z_from}^{z_to} P(z) e^{j x z} dz, segmentwise closed form.
  cplx weighted_integral(double z_from, double z_to, double x) const;

 private:
  const ProfileSegment& segment_left_of(double z) const;
  const ProfileSegment& segment_right_of(double z) const;

  std::vector<ProfileSegment> segments_;
  int num_spans_ = 0;
  double span_length_ = 0.0;
};

/// First-half kernel sum: Lambda = integral_0^{half*L_s} P(z) e^{j beta2 dOmega z} dz.
cplx lambda_sum(const PowerProfile& profile, int half_spans, double beta2, double dOmega);

/// Second-half kernel sum with the end-of-link phase reference:
/// Psi = e^{-j beta2 dOmega 2*half*L_s} integral_{half*L_s}^{2*half*L_s} P(z) e^{j beta2 dOmega z} dz.
cplx psi_sum(const PowerProfile& profile, int half_spans, double beta2, double dOmega);

/// Residual kernel of a mid-link conjugated link over an arbitrary profile:
/// Gamma = Psi(N_s/2) - conj(Lambda(N_s/2)). For an EDFA profile this factors
/// as conj(Xi(N_s/2)) * G; for a mirror-symmetric profile it vanishes.
cplx residual_kernel_gamma(const PowerProfile& profile, int num_spans, double beta2,
                           double dOmega);

/// Mirror conditions under which Gamma vanishes for all dOmega.
struct SymmetryReport {
  bool power_mirror_minus = false;  // P((N-n)L^-) == P((n-1)L^+)
  bool power_mirror_plus = false;   // P((N-n-1)L^+) == P(nL^-)
  bool alpha_mirror_minus = false;  // alpha((N-n)L^-) == -alpha((n-1)L^+)
  bool alpha_mirror_plus = false;   // alpha((N-n-1)L^+) == -alpha(nL^-)
  double asymmetry_norm = 0.0;      // integral |P(2tau-u)-P(u)| du / integral P du

  bool all_pass() const {
    return power_mirror_minus && power_mirror_plus && alpha_mirror_minus && alpha_mirror_plus;
  }
};

SymmetryReport symmetry_predicates(const PowerProfile& profile, double rel_tol = 1e-9);

}  // namespace vao
