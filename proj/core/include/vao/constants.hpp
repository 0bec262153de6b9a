#pragma once

#include <cmath>
#include <complex>

namespace vao {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kPlanck = 6.62607015e-34;          // J*s
inline constexpr double kRefWavelength = 1550e-9;          // m, C-band reference
inline constexpr cplx kJ{0.0, 1.0};

/// Power attenuation in Np/m from the usual dB/km figure.
inline double alpha_np_per_m(double alpha_db_per_km) {
  return alpha_db_per_km * std::log(10.0) / 10.0 / 1e3;
}

/// Group-velocity dispersion beta2 [s^2/m] from the dispersion parameter D
/// [ps/(nm*km)] at the given wavelength. Positive D gives negative beta2.
inline double beta2_from_dispersion(double d_ps_nm_km, double wavelength_m = kRefWavelength) {
  const double d_si = d_ps_nm_km * 1e-6;  // s/m^2
  return -d_si * wavelength_m * wavelength_m / (2.0 * kPi * kSpeedOfLight);
}

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Centered frequency index of DFT bin j on an N-point grid (DC-first order):
/// j < N/2 maps to j, the upper half maps to j - N.
inline int centered_bin(int j, int n) { return j < n / 2 ? j : j - n; }

/// Unit-magnitude phasor e^{j*phi}; cos/sin keep conjugation exact for -phi.
inline cplx phasor(double phi) { return cplx(std::cos(phi), std::sin(phi)); }

}  // namespace vao
