#include "vao/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace vao::fft {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

// FFTW_UNALIGNED lets the cached plan execute on whatever buffer the caller
// owns; std::complex<double> is layout-compatible with fftw_complex.
PlanPair& plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(n);
  auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.inv = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.inv) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(std::vector<cplx>& data) {
  if (data.empty()) throw std::invalid_argument("fft: empty input");
  auto& p = plans_for(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p.fwd, buf, buf);
}

void inverse(std::vector<cplx>& data) {
  if (data.empty()) throw std::invalid_argument("ifft: empty input");
  auto& p = plans_for(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p.inv, buf, buf);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<cplx> forward_copy(const std::vector<cplx>& data) {
  std::vector<cplx> out(data);
  forward(out);
  return out;
}

std::vector<cplx> inverse_copy(const std::vector<cplx>& data) {
  std::vector<cplx> out(data);
  inverse(out);
  return out;
}

}  // namespace vao::fft
