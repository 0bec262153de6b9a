#include "vao/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "vao/fft.hpp"
#include "vao/rng.hpp"

namespace vao {

void FiberSpan::validate() const {
  if (!(length > 0.0)) throw std::invalid_argument("FiberSpan: length must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("FiberSpan: gamma must be >= 0");
  if (alpha < 0.0) throw std::invalid_argument("FiberSpan: alpha must be >= 0");
}

void Amplifier::validate() const {
  if (gain_db < 0.0) throw std::invalid_argument("Amplifier: gain must be >= 0 dB");
  if (ase_enabled && noise_figure_db < 3.0)
    throw std::invalid_argument("Amplifier: noise figure must be >= 3 dB with ASE enabled");
  if (!(reference_frequency > 0.0))
    throw std::invalid_argument("Amplifier: reference frequency must be > 0");
}

double Link::total_length() const {
  double l = 0.0;
  for (const auto& [span, amp] : spans) l += span.length;
  return l;
}

const FiberSpan& Link::uniform_span() const {
  if (spans.empty()) throw std::invalid_argument("Link: no spans");
  const FiberSpan& first = spans.front().first;
  for (const auto& [span, amp] : spans)
    if (span.alpha != first.alpha || span.beta2 != first.beta2 || span.gamma != first.gamma ||
        span.length != first.length)
      throw std::invalid_argument("Link: spans are not uniform");
  return first;
}

KernelParams Link::kernel_params() const {
  const FiberSpan& span = uniform_span();
  return {span.alpha, span.beta2, span.length, static_cast<int>(spans.size())};
}

void Link::validate() const {
  for (const auto& [span, amp] : spans) {
    span.validate();
    amp.validate();
  }
  if (steps_per_span < 1) throw std::invalid_argument("Link: steps_per_span must be >= 1");
  if (opc_after_span) {
    if (spans.size() % 2 != 0 || *opc_after_span != spans.size() / 2)
      throw std::invalid_argument("Link: mid-link OPC needs an even span count with the "
                                  "conjugator after N_s/2 spans");
  }
}

Link make_edfa_link(int num_spans, const FiberSpan& span, double noise_figure_db,
                    bool ase_enabled, bool mid_link_opc, int steps_per_span) {
  span.validate();
  Link link;
  link.steps_per_span = steps_per_span;
  Amplifier amp;
  amp.gain_db = linear_to_db(std::exp(span.alpha * span.length));
  amp.noise_figure_db = noise_figure_db;
  amp.ase_enabled = ase_enabled;
  link.spans.assign(num_spans, {span, amp});
  if (mid_link_opc) link.opc_after_span = static_cast<std::size_t>(num_spans) / 2;
  link.validate();
  return link;
}

DualPolSignal ssfm_propagate(const DualPolSignal& signal, const FiberSpan& span, int steps) {
  signal.validate();
  span.validate();
  if (steps < 1) throw std::invalid_argument("ssfm_propagate: steps must be >= 1");

  const std::size_t n = signal.size();
  const double dw = 2.0 * kPi * signal.sample_rate / static_cast<double>(n);
  const double h = span.length / steps;
  const double gamma_eff = (8.0 / 9.0) * span.gamma;

  auto linear_filter = [&](double dz) {
    std::vector<cplx> filt(n);
    const double decay = std::exp(-span.alpha / 2.0 * dz);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = centered_bin(static_cast<int>(j), static_cast<int>(n)) * dw;
      filt[j] = decay * phasor(span.beta2 / 2.0 * w * w * dz);
    }
    return filt;
  };
  const auto half = linear_filter(h / 2.0);
  const auto full = linear_filter(h);

  std::vector<cplx> fx(signal.x), fy(signal.y);
  fft::forward(fx);
  fft::forward(fy);
  for (std::size_t j = 0; j < n; ++j) {
    fx[j] *= half[j];
    fy[j] *= half[j];
  }
  for (int s = 0; s < steps; ++s) {
    fft::inverse(fx);
    fft::inverse(fy);
    for (std::size_t j = 0; j < n; ++j) {
      const double phi = gamma_eff * h * (std::norm(fx[j]) + std::norm(fy[j]));
      const cplx rot = phasor(phi);
      fx[j] *= rot;
      fy[j] *= rot;
    }
    fft::forward(fx);
    fft::forward(fy);
    const auto& filt = (s == steps - 1) ? half : full;
    for (std::size_t j = 0; j < n; ++j) {
      fx[j] *= filt[j];
      fy[j] *= filt[j];
    }
  }
  fft::inverse(fx);
  fft::inverse(fy);

  DualPolSignal out;
  out.sample_rate = signal.sample_rate;
  out.center_offset = signal.center_offset;
  out.x = std::move(fx);
  out.y = std::move(fy);
  return out;
}

DualPolSignal amplify(const DualPolSignal& signal, const Amplifier& amp, std::mt19937_64& rng) {
  amp.validate();
  DualPolSignal out(signal);
  const double g_field = std::pow(10.0, amp.gain_db / 20.0);
  for (auto& v : out.x) v *= g_field;
  for (auto& v : out.y) v *= g_field;
  if (amp.ase_enabled) {
    const double gain = db_to_linear(amp.gain_db);
    const double n_sp = db_to_linear(amp.noise_figure_db) / 2.0;
    const double psd = (gain - 1.0) * n_sp * kPlanck * amp.reference_frequency;  // W/Hz per pol
    const double sigma = std::sqrt(psd * signal.sample_rate);
    for (auto& v : out.x) v += sigma * complex_gaussian(rng);
    for (auto& v : out.y) v += sigma * complex_gaussian(rng);
  }
  return out;
}

DualPolSignal opc_conjugate(const DualPolSignal& signal) {
  DualPolSignal out(signal);
  for (auto& v : out.x) v = std::conj(v);
  for (auto& v : out.y) v = std::conj(v);
  out.center_offset = -signal.center_offset;
  return out;
}

DualPolSignal propagate_link(const DualPolSignal& signal, const Link& link,
                             std::mt19937_64& rng) {
  link.validate();
  DualPolSignal s(signal);
  for (std::size_t i = 0; i < link.spans.size(); ++i) {
    s = ssfm_propagate(s, link.spans[i].first, link.steps_per_span);
    s = amplify(s, link.spans[i].second, rng);
    if (link.opc_after_span && *link.opc_after_span == i + 1) s = opc_conjugate(s);
  }
  return s;
}

}  // namespace vao
